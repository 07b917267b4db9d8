// promdet/src/svg.cc

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

#include "promdet/svg.h"

#include <fstream>
#include <sstream>

#include "promdet/common.h"

namespace promdet {

namespace {

constexpr double kLeft = 64, kRight = 24, kTop = 40, kBottom = 52;

std::string num(double v) { return format_fixed(v, 2); }

}  // namespace

std::string xml_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max, std::string title,
                 std::string x_label, std::string y_label)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), title_(std::move(title)),
      x_label_(std::move(x_label)), y_label_(std::move(y_label)) {
  if (!(x_max_ > x_min_)) {
    x_min_ -= 1.0;
    x_max_ += 1.0;
  }
  if (!(y_max_ > y_min_)) {
    y_min_ -= 1.0;
    y_max_ += 1.0;
  }
}

double SvgPlot::px(double x) const {
  return kLeft + (x - x_min_) / (x_max_ - x_min_) * (kWidth - kLeft - kRight);
}

double SvgPlot::py(double y) const {
  return kHeight - kBottom - (y - y_min_) / (y_max_ - y_min_) * (kHeight - kTop - kBottom);
}

void SvgPlot::circle(double x, double y, const std::string &color, double radius) {
  marks_.push_back("<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" +
                   num(radius) + "\" fill=\"" + color + "\" fill-opacity=\"0.7\"/>");
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>> &points,
                       const std::string &color, bool dashed) {
  std::string pts;
  for (const auto &[x, y] : points) {
    if (!pts.empty()) pts += ' ';
    pts += num(px(x)) + "," + num(py(y));
  }
  marks_.push_back("<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"2\"" +
                   (dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>");
}

void SvgPlot::legend(const std::string &label, const std::string &color) {
  legend_.emplace_back(label, color);
}

std::string SvgPlot::str() const {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << (kWidth - kLeft - kRight)
     << "\" height=\"" << (kHeight - kTop - kBottom)
     << "\" fill=\"none\" stroke=\"#444444\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << xml_escape(title_) << "</text>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(x_label_) << "</text>\n"
     << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\""
     << " transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << xml_escape(y_label_)
     << "</text>\n";
  auto tick = [&](double x, double y, const char *anchor, double v) {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
       << "\" font-size=\"10\">" << format_fixed(v, 2) << "</text>\n";
  };
  tick(kLeft, kHeight - kBottom + 14, "start", x_min_);
  tick(kWidth - kRight, kHeight - kBottom + 14, "end", x_max_);
  tick(kLeft - 4, kHeight - kBottom, "end", y_min_);
  tick(kLeft - 4, kTop + 8, "end", y_max_);
  for (const auto &m : marks_) os << m << '\n';
  double ly = kTop + 14;
  for (const auto &[label, color] : legend_) {
    os << "<rect x=\"" << kWidth - kRight - 150 << "\" y=\"" << num(ly - 9)
       << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
       << "<text x=\"" << kWidth - kRight - 135 << "\" y=\"" << num(ly)
       << "\" font-size=\"11\">" << xml_escape(label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

void SvgPlot::write(const std::string &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << str();
}

}  // namespace promdet
