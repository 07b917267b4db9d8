// promdet/src/aggregate.cc

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

#include "promdet/aggregate.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace promdet {

FeatureMatrix FeatureMatrix::select(const std::vector<std::size_t> &indices) const {
  FeatureMatrix out;
  out.set = set;
  out.rows.resize(static_cast<Eigen::Index>(indices.size()), rows.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.rows.row(static_cast<Eigen::Index>(i)) = rows.row(static_cast<Eigen::Index>(indices[i]));
    out.labels.push_back(labels[indices[i]]);
    out.meta.push_back(meta[indices[i]]);
  }
  return out;
}

FeatureMatrix FeatureMatrix::labeled_only() const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < meta.size(); ++i)
    if (meta[i].labeled) keep.push_back(i);
  return select(keep);
}

void FeatureMatrix::append(const FeatureMatrix &other) {
  if (other.size() == 0) return;
  if (size() == 0) {
    const FeatureSet keep = set;
    *this = other;
    set = keep;
    return;
  }
  if (other.rows.cols() != rows.cols())
    throw Error(ErrorKind::kDimensionMismatch,
                "cannot append width " + std::to_string(other.rows.cols()) +
                    " rows to width " + std::to_string(rows.cols()));
  Matrix merged(rows.rows() + other.rows.rows(), rows.cols());
  merged << rows, other.rows;
  rows = std::move(merged);
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
  meta.insert(meta.end(), other.meta.begin(), other.meta.end());
}

FeatureMatrix unit_embeddings(const UtteranceRecord &record, Level level, Stream stream) {
  std::vector<std::pair<PhoneSpan, std::optional<int>>> units;
  if (level == Level::kWord) {
    for (const auto &w : record.words) units.push_back({{w.phone_start, w.phone_end}, w.prominent});
  } else {
    if (!record.syllables)
      throw Error(ErrorKind::kInvalidArgument,
                  "record '" + record.utt_id + "' has no syllable spans");
    for (const auto &s : *record.syllables)
      units.push_back({{s.phone_start, s.phone_end}, s.stressed});
  }

  const Matrix &src = record.embeddings.stream(stream);
  FeatureMatrix fm;
  fm.set = feature_set_for(stream);
  fm.rows.resize(static_cast<Eigen::Index>(units.size()), src.cols());
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto &[span, label] = units[u];
    if (span.start >= span.end || span.end > static_cast<std::size_t>(src.rows()))
      throw Error(ErrorKind::kInvalidArgument,
                  "record '" + record.utt_id + "' unit " + std::to_string(u) +
                      " has an empty or out-of-range span");
    fm.rows.row(static_cast<Eigen::Index>(u)) =
        src.middleRows(static_cast<Eigen::Index>(span.start),
                       static_cast<Eigen::Index>(span.size()))
            .colwise()
            .mean();
    fm.labels.push_back(label.value_or(0));
    fm.meta.push_back({record.utt_id, u, level, label.has_value(), record.mode, record.l1,
                       record.epoch});
  }
  return fm;
}

FeatureMatrix concat_feature_sets(const FeatureMatrix &e, const FeatureMatrix &d,
                                  const FeatureMatrix &p) {
  if (e.size() != d.size() || e.size() != p.size())
    throw Error(ErrorKind::kDimensionMismatch, "feature sets have different unit counts");
  if (e.labels != d.labels || e.labels != p.labels)
    throw Error(ErrorKind::kInvalidArgument, "feature sets disagree on labels");
  if (e.meta != d.meta || e.meta != p.meta)
    throw Error(ErrorKind::kInvalidArgument, "feature sets disagree on unit metadata");
  FeatureMatrix out;
  out.set = FeatureSet::kEDP;
  out.labels = e.labels;
  out.meta = e.meta;
  out.rows.resize(e.rows.rows(), e.rows.cols() + d.rows.cols() + p.rows.cols());
  out.rows << e.rows, d.rows, p.rows;
  return out;
}

FeatureMatrix build_features(const std::vector<UtteranceRecord> &records, Level level,
                             FeatureSet set) {
  auto gather = [&](Stream s) {
    FeatureMatrix fm;
    fm.set = feature_set_for(s);
    for (const auto &r : records) fm.append(unit_embeddings(r, level, s));
    return fm;
  };
  switch (set) {
    case FeatureSet::kE: return gather(Stream::kEnergy);
    case FeatureSet::kD: return gather(Stream::kDuration);
    case FeatureSet::kP: return gather(Stream::kPitch);
    case FeatureSet::kEDP:
      return concat_feature_sets(gather(Stream::kEnergy), gather(Stream::kDuration),
                                 gather(Stream::kPitch));
    default:
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(to_string(set)) + " features are imported, not aggregated");
  }
}

namespace {

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_number(const std::string &cell, const std::string &where) {
  double v = 0.0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw Error(ErrorKind::kParse, where + ": non-numeric cell '" + cell + "'");
  return v;
}

}  // namespace

FeatureMatrix import_external_features(const std::string &path, FeatureSet tag, Level level) {
  if (tag != FeatureSet::kHB && tag != FeatureSet::kW2V)
    throw Error(ErrorKind::kInvalidArgument, "external features must be tagged HB or W2V");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kParse, path + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  const char *const fixed[] = {"utt_id", "unit_index", "level", "label"};
  for (std::size_t i = 0; i < 4; ++i)
    if (header.size() <= i || header[i] != fixed[i])
      throw Error(ErrorKind::kParse,
                  path + ": header must start with utt_id,unit_index,level,label (missing '" +
                      fixed[i] + "' column)");
  const std::size_t d = header.size() - 4;
  for (std::size_t c = 0; c < d; ++c)
    if (header[4 + c] != "f" + std::to_string(c))
      throw Error(ErrorKind::kParse, path + ": expected column 'f" + std::to_string(c) +
                                         "', found '" + header[4 + c] + "'");

  std::vector<std::vector<double>> values;
  FeatureMatrix fm;
  fm.set = tag;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw Error(ErrorKind::kParse, where + ": expected " + std::to_string(header.size()) +
                                         " cells, found " + std::to_string(cells.size()));
    if (parse_level(cells[2]) != level) continue;
    UnitMeta m;
    m.utt_id = cells[0];
    const double idx = parse_number(cells[1], where);
    if (idx < 0 || idx != static_cast<double>(static_cast<std::size_t>(idx)))
      throw Error(ErrorKind::kParse, where + ": unit_index must be a non-negative integer");
    m.unit_index = static_cast<std::size_t>(idx);
    m.level = level;
    int label = 0;
    if (!cells[3].empty()) {
      if (cells[3] != "0" && cells[3] != "1")
        throw Error(ErrorKind::kParse, where + ": label must be 0 or 1, found '" + cells[3] + "'");
      label = cells[3] == "1";
      m.labeled = true;
    }
    std::vector<double> row(d);
    for (std::size_t c = 0; c < d; ++c) row[c] = parse_number(cells[4 + c], where);
    values.push_back(std::move(row));
    fm.labels.push_back(label);
    fm.meta.push_back(std::move(m));
  }
  if (values.empty()) warn(path + ": no " + std::string(to_string(level)) + "-level rows");
  fm.rows.resize(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t c = 0; c < d; ++c)
      fm.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = values[i][c];
  return fm;
}

void export_external_features(const FeatureMatrix &fm, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << "utt_id,unit_index,level,label";
  for (std::size_t c = 0; c < fm.dim(); ++c) out << ",f" << c;
  out << '\n';
  for (std::size_t i = 0; i < fm.size(); ++i) {
    const auto &m = fm.meta[i];
    out << m.utt_id << ',' << m.unit_index << ',' << to_string(m.level) << ',';
    if (m.labeled) out << fm.labels[i];
    for (std::size_t c = 0; c < fm.dim(); ++c)
      out << ',' << format_double(fm.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)));
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace promdet
