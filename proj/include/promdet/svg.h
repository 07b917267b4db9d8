// promdet/include/promdet/svg.h

// Copyright 2026  The promdet Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Minimal static SVG plotting: a fixed 640x480 canvas with a data rectangle,
// axis ticks, circles and polylines.

#ifndef PROMDET_SVG_H_
#define PROMDET_SVG_H_

#include <string>
#include <utility>
#include <vector>

namespace promdet {

class SvgPlot {
 public:
  static constexpr int kWidth = 640;
  static constexpr int kHeight = 480;

  SvgPlot(double x_min, double x_max, double y_min, double y_max, std::string title,
          std::string x_label, std::string y_label);

  void circle(double x, double y, const std::string &color, double radius = 2.5);
  void polyline(const std::vector<std::pair<double, double>> &points,
                const std::string &color, bool dashed = false);
  void legend(const std::string &label, const std::string &color);

  std::string str() const;
  void write(const std::string &path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  double x_min_, x_max_, y_min_, y_max_;
  std::string title_, x_label_, y_label_;
  std::vector<std::string> marks_;
  std::vector<std::pair<std::string, std::string>> legend_;
};

std::string xml_escape(const std::string &s);

}  // namespace promdet

#endif  // PROMDET_SVG_H_
