// promdet/src/eval.cc

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

#include "promdet/eval.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "promdet/cluster.h"
#include "promdet/neuralnet.h"
#include "promdet/svg.h"

namespace promdet {

namespace {

constexpr FeatureSet kRowOrder[] = {FeatureSet::kE,  FeatureSet::kD,  FeatureSet::kP,
                                    FeatureSet::kEDP, FeatureSet::kHB, FeatureSet::kW2V};
constexpr L1Filter kBlockOrder[] = {L1Filter::kNative, L1Filter::kNonNative, L1Filter::kGer,
                                    L1Filter::kIta, L1Filter::kAll};

struct Column {
  Level level;
  Mode mode;
  Classifier classifier;
  const char *csv_name;
  const char *title;
};

constexpr Column kColumns[] = {
    {Level::kWord, Mode::kSpeechText, Classifier::kKMeans, "word_speech_text_kmeans",
     "Word Speech+text K-M"},
    {Level::kWord, Mode::kSpeechText, Classifier::kDnn, "word_speech_text_dnn",
     "Word Speech+text DNN"},
    {Level::kWord, Mode::kTextOnly, Classifier::kKMeans, "word_text_only_kmeans",
     "Word Only text K-M"},
    {Level::kWord, Mode::kTextOnly, Classifier::kDnn, "word_text_only_dnn",
     "Word Only text DNN"},
    {Level::kSyllable, Mode::kSpeechText, Classifier::kKMeans, "syllable_speech_text_kmeans",
     "Syllable Speech+text K-M"},
    {Level::kSyllable, Mode::kSpeechText, Classifier::kDnn, "syllable_speech_text_dnn",
     "Syllable Speech+text DNN"},
    {Level::kSyllable, Mode::kTextOnly, Classifier::kKMeans, "syllable_text_only_kmeans",
     "Syllable Only text K-M"},
    {Level::kSyllable, Mode::kTextOnly, Classifier::kDnn, "syllable_text_only_dnn",
     "Syllable Only text DNN"},
};

constexpr std::size_t kKMeansRestarts = 10;

bool is_external(FeatureSet s) { return s == FeatureSet::kHB || s == FeatureSet::kW2V; }

std::vector<std::string> split_line(const std::string &line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',')
      out.emplace_back();
    else if (c != '\r')
      out.back() += c;
  }
  return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
}

nlohmann::ordered_json spec_json(const RunSpec &s) {
  nlohmann::ordered_json j;
  j["level"] = to_string(s.level);
  j["set"] = to_string(s.set);
  j["mode"] = to_string(s.mode);
  j["l1"] = to_string(s.l1);
  j["classifier"] = to_string(s.classifier);
  j["epoch"] = s.epoch ? nlohmann::ordered_json(*s.epoch) : nlohmann::ordered_json(nullptr);
  j["seed"] = s.seed;
  j["preset"] = s.preset;
  j["epochs"] = s.epochs ? nlohmann::ordered_json(*s.epochs) : nlohmann::ordered_json(nullptr);
  j["test_fraction"] = s.test_fraction;
  j["class_weight"] = s.class_weight;
  return j;
}

RunSpec spec_from_json(const nlohmann::json &j) {
  RunSpec s;
  s.level = parse_level(j.at("level").get<std::string>());
  s.set = parse_feature_set(j.at("set").get<std::string>());
  s.mode = parse_mode(j.at("mode").get<std::string>());
  s.l1 = parse_l1_filter(j.at("l1").get<std::string>());
  s.classifier = parse_classifier(j.at("classifier").get<std::string>());
  if (j.contains("epoch") && !j.at("epoch").is_null()) s.epoch = j.at("epoch").get<int>();
  s.seed = j.value("seed", s.seed);
  s.preset = j.value("preset", std::string());
  if (j.contains("epochs") && !j.at("epochs").is_null())
    s.epochs = j.at("epochs").get<std::size_t>();
  s.test_fraction = j.value("test_fraction", s.test_fraction);
  s.class_weight = j.value("class_weight", false);
  return s;
}

}  // namespace

std::string_view to_string(Classifier c) {
  return c == Classifier::kKMeans ? "kmeans" : "dnn";
}

std::string_view to_string(L1Filter f) {
  switch (f) {
    case L1Filter::kNative: return "native";
    case L1Filter::kNonNative: return "nonnative";
    case L1Filter::kGer: return "GER";
    case L1Filter::kIta: return "ITA";
    case L1Filter::kAll: return "all";
  }
  return "all";
}

std::string_view block_title(L1Filter f) {
  switch (f) {
    case L1Filter::kNative: return "Native";
    case L1Filter::kNonNative: return "Non-Native";
    case L1Filter::kGer: return "GER";
    case L1Filter::kIta: return "ITA";
    case L1Filter::kAll: return "All";
  }
  return "All";
}

Classifier parse_classifier(std::string_view s) {
  if (s == "kmeans" || s == "K-M") return Classifier::kKMeans;
  if (s == "dnn" || s == "DNN") return Classifier::kDnn;
  throw Error(ErrorKind::kInvalidArgument, "unknown classifier '" + std::string(s) + "'");
}

L1Filter parse_l1_filter(std::string_view s) {
  for (L1Filter f : kBlockOrder)
    if (s == to_string(f)) return f;
  throw Error(ErrorKind::kInvalidArgument, "unknown L1 filter '" + std::string(s) + "'");
}

bool l1_matches(L1Filter f, L1 l1) {
  switch (f) {
    case L1Filter::kNative: return l1 == L1::kNative;
    case L1Filter::kNonNative: return l1 == L1::kGer || l1 == L1::kIta;
    case L1Filter::kGer: return l1 == L1::kGer;
    case L1Filter::kIta: return l1 == L1::kIta;
    case L1Filter::kAll: return true;
  }
  return false;
}

void validate_spec(const RunSpec &spec) {
  if (is_external(spec.set) && spec.mode == Mode::kTextOnly)
    throw Error(ErrorKind::kInvalidArgument,
                std::string(to_string(spec.set)) + " features have no text_only condition");
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
    throw Error(ErrorKind::kInvalidArgument, "test fraction must lie in (0, 1)");
  if (!spec.preset.empty() && spec.preset != "word" && spec.preset != "syllable")
    throw Error(ErrorKind::kInvalidArgument, "unknown DNN preset '" + spec.preset + "'");
  if (spec.epochs && *spec.epochs == 0)
    throw Error(ErrorKind::kInvalidArgument, "epoch count must be positive");
}

std::string run_name(const RunSpec &s) {
  std::string name = std::string(to_string(s.l1)) + "_" + std::string(to_string(s.level)) + "_" +
                     std::string(to_string(s.set)) + "_" + std::string(to_string(s.mode)) + "_" +
                     std::string(to_string(s.classifier));
  if (s.epoch) name += "_e" + std::to_string(*s.epoch);
  return name;
}

void EvalData::attach_external(FeatureSet tag, Level level, FeatureMatrix fm) {
  std::map<std::string, L1> l1_of;
  for (const auto &r : records) l1_of.emplace(r.utt_id, r.l1);
  for (auto &m : fm.meta) {
    auto it = l1_of.find(m.utt_id);
    if (it != l1_of.end()) m.l1 = it->second;
    m.epoch.reset();
  }
  fm.set = tag;
  external[{tag, level}] = std::move(fm);
}

FeatureMatrix select_features(const RunSpec &spec, const EvalData &data) {
  validate_spec(spec);
  FeatureMatrix fm;
  if (is_external(spec.set)) {
    auto it = data.external.find({spec.set, spec.level});
    if (it == data.external.end())
      throw Error(ErrorKind::kEmptySelection, "no " + std::string(to_string(spec.set)) + " " +
                                                  std::string(to_string(spec.level)) +
                                                  " features were supplied");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < it->second.size(); ++i)
      if (it->second.meta[i].labeled && l1_matches(spec.l1, it->second.meta[i].l1))
        keep.push_back(i);
    fm = it->second.select(keep);
  } else {
    auto gather = [&](Stream s) {
      FeatureMatrix part;
      part.set = feature_set_for(s);
      for (const auto &r : data.records)
        if (r.mode == spec.mode && l1_matches(spec.l1, r.l1) && r.epoch == spec.epoch)
          part.append(unit_embeddings(r, spec.level, s));
      return part;
    };
    switch (spec.set) {
      case FeatureSet::kE: fm = gather(Stream::kEnergy); break;
      case FeatureSet::kD: fm = gather(Stream::kDuration); break;
      case FeatureSet::kP: fm = gather(Stream::kPitch); break;
      default: {
        FeatureMatrix e = gather(Stream::kEnergy);
        if (e.size() > 0)
          fm = concat_feature_sets(e, gather(Stream::kDuration), gather(Stream::kPitch));
      }
    }
    fm = fm.labeled_only();
  }
  if (fm.size() == 0)
    throw Error(ErrorKind::kEmptySelection, "no labeled units match " + run_name(spec));
  return fm;
}

Split stratified_split(const std::vector<int> &labels, double test_fraction,
                       std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(ErrorKind::kInvalidArgument, "test fraction must lie in (0, 1)");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      throw Error(ErrorKind::kInvalidArgument, "labels must be binary");
    by_class[labels[i]].push_back(i);
  }
  Rng rng(seed);
  Split split;
  for (int c = 0; c < 2; ++c) {
    auto &idx = by_class[c];
    if (idx.size() < 2)
      throw Error(ErrorKind::kDegenerateInput,
                  "class " + std::to_string(c) + " has " + std::to_string(idx.size()) +
                      " samples; a split needs at least 2");
    for (std::size_t i = idx.size() - 1; i > 0; --i)
      std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * idx.size()));
    n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
    split.test.insert(split.test.end(), idx.begin(), idx.begin() + n_test);
    split.train.insert(split.train.end(), idx.begin() + n_test, idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

RunResult run(const RunSpec &spec, const EvalData &data, const std::string &artifact_dir) {
  const FeatureMatrix fm = select_features(spec, data);
  RunResult res;
  res.spec = spec;
  res.n_units = fm.size();
  std::string model_json, curve_csv;

  if (spec.classifier == Classifier::kKMeans) {
    KMeansOptions opts;
    opts.k = 2;
    opts.seed = spec.seed;
    opts.n_init = kKMeansRestarts;
    const KMeansModel model = kmeans_fit(fm.rows, opts);
    res.accuracy = 100.0 * clustering_accuracy(kmeans_assign(model, fm.rows), fm.labels);
    res.n_train = fm.size();
    if (!artifact_dir.empty()) model_json = kmeans_model_to_json(model);
  } else {
    const Split split = stratified_split(fm.labels, spec.test_fraction, spec.seed);
    FeatureMatrix tr = fm.select(split.train), te = fm.select(split.test);
    const Eigen::RowVectorXd mean = tr.rows.colwise().mean();
    Eigen::RowVectorXd sd =
        ((tr.rows.rowwise() - mean).colwise().squaredNorm() / static_cast<double>(tr.size()))
            .cwiseSqrt();
    for (Eigen::Index j = 0; j < sd.size(); ++j)
      if (sd(j) <= 0.0) sd(j) = 1.0;
    tr.rows = (tr.rows.rowwise() - mean).array().rowwise() / sd.array();
    te.rows = (te.rows.rowwise() - mean).array().rowwise() / sd.array();

    const std::string preset =
        spec.preset.empty() ? std::string(to_string(spec.level)) : spec.preset;
    NetConfig config = preset == "word" ? word_preset() : syllable_preset();
    config.seed = spec.seed;
    if (spec.epochs) config.epochs = *spec.epochs;
    config.class_weight = spec.class_weight;
    Network net = build(config, fm.dim());
    TrainReport report = train(net, tr.rows, tr.labels, config);
    res.accuracy = 100.0 * predict(net, te.rows, te.labels).accuracy;
    report.final_accuracy = res.accuracy;
    res.n_train = tr.size();
    res.n_test = te.size();
    if (!artifact_dir.empty()) {
      model_json = net.to_json();
      curve_csv = train_report_csv(report);
    }
  }

  if (!artifact_dir.empty()) {
    const std::filesystem::path dir(artifact_dir);
    std::filesystem::create_directories(dir);
    const std::string name = run_name(spec);
    write_text(dir / (name + ".json"), run_manifest_json(res));
    write_text(dir / (name + ".model.json"), model_json);
    if (!curve_csv.empty()) write_text(dir / (name + ".train.csv"), curve_csv);
  }
  return res;
}

double relative_improvement(double new_pct, double base_pct) {
  if (!(base_pct > 0.0))
    throw Error(ErrorKind::kInvalidArgument, "baseline accuracy must be positive");
  return 100.0 * (new_pct - base_pct) / base_pct;
}

std::string run_manifest_json(const RunResult &r) {
  nlohmann::ordered_json j;
  j["name"] = run_name(r.spec);
  j["spec"] = spec_json(r.spec);
  j["accuracy"] = r.accuracy;
  j["n_units"] = r.n_units;
  j["n_train"] = r.n_train;
  j["n_test"] = r.n_test;
  return j.dump(2) + "\n";
}

std::vector<L1Filter> ResultsTable::blocks() const {
  std::set<L1Filter> present;
  for (const auto &[key, value] : cells) present.insert(key.block);
  std::vector<L1Filter> out;
  for (L1Filter f : kBlockOrder)
    if (present.count(f)) out.push_back(f);
  return out;
}

std::optional<double> ResultsTable::at(const CellKey &key) const {
  auto it = cells.find(key);
  if (it == cells.end()) return std::nullopt;
  return it->second;
}

ResultsTable build_table(const std::vector<RunResult> &runs) {
  ResultsTable t;
  for (const auto &r : runs) {
    if (r.spec.epoch) continue;
    if (!(r.accuracy >= 0.0 && r.accuracy <= 100.0))
      throw Error(ErrorKind::kInvalidArgument, run_name(r.spec) + ": accuracy out of range");
    const CellKey key{r.spec.l1, r.spec.set, r.spec.level, r.spec.mode, r.spec.classifier};
    auto [it, inserted] = t.cells.emplace(key, r.accuracy);
    if (!inserted && it->second != r.accuracy)
      throw Error(ErrorKind::kInvalidArgument,
                  "conflicting values for cell " + run_name(r.spec) + ": " +
                      format_double(it->second) + " vs " + format_double(r.accuracy));
  }
  if (t.cells.empty()) throw Error(ErrorKind::kEmptySelection, "no untagged runs to tabulate");
  return t;
}

std::string table_markdown(const ResultsTable &t) {
  std::ostringstream out;
  out << "| L1 | Features |";
  for (const auto &c : kColumns) out << ' ' << c.title << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out << "---:|";
  out << '\n';
  for (L1Filter block : t.blocks()) {
    bool first = true;
    for (FeatureSet set : kRowOrder) {
      out << "| " << (first ? block_title(block) : "") << " | " << to_string(set) << " |";
      first = false;
      for (const auto &c : kColumns) {
        auto v = t.at({block, set, c.level, c.mode, c.classifier});
        out << ' ' << (v ? format_fixed(*v, 1) : std::string("--")) << " |";
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string table_csv(const ResultsTable &t) {
  std::ostringstream out;
  out << "block,set";
  for (const auto &c : kColumns) out << ',' << c.csv_name;
  out << '\n';
  for (L1Filter block : t.blocks())
    for (FeatureSet set : kRowOrder) {
      out << to_string(block) << ',' << to_string(set);
      for (const auto &c : kColumns) {
        out << ',';
        if (auto v = t.at({block, set, c.level, c.mode, c.classifier})) out << format_double(*v);
      }
      out << '\n';
    }
  return out.str();
}

ResultsTable parse_table_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kParse, "empty table CSV");
  const auto header = split_line(line);
  if (header.size() != 2 + std::size(kColumns) || header[0] != "block" || header[1] != "set")
    throw Error(ErrorKind::kParse, "unexpected table CSV header");
  for (std::size_t i = 0; i < std::size(kColumns); ++i)
    if (header[i + 2] != kColumns[i].csv_name)
      throw Error(ErrorKind::kParse, "unexpected table CSV column '" + header[i + 2] + "'");
  ResultsTable t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw Error(ErrorKind::kParse, "table CSV line " + std::to_string(line_no) +
                                         ": expected " + std::to_string(header.size()) +
                                         " cells");
    L1Filter block;
    FeatureSet set;
    try {
      block = parse_l1_filter(cells[0]);
      set = parse_feature_set(cells[1]);
    } catch (const Error &e) {
      throw Error(ErrorKind::kParse, "table CSV line " + std::to_string(line_no) + ": " + e.what());
    }
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
      const std::string &cell = cells[i + 2];
      if (cell.empty()) continue;
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw Error(ErrorKind::kParse, "table CSV line " + std::to_string(line_no) +
                                           ": bad number '" + cell + "'");
      const auto &c = kColumns[i];
      t.cells[{block, set, c.level, c.mode, c.classifier}] = v;
    }
  }
  return t;
}

std::string table_json(const ResultsTable &t) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (L1Filter block : t.blocks())
    for (FeatureSet set : kRowOrder)
      for (const auto &c : kColumns)
        if (auto v = t.at({block, set, c.level, c.mode, c.classifier})) {
          nlohmann::ordered_json j;
          j["block"] = to_string(block);
          j["set"] = to_string(set);
          j["level"] = to_string(c.level);
          j["mode"] = to_string(c.mode);
          j["classifier"] = to_string(c.classifier);
          j["accuracy"] = *v;
          cells.push_back(std::move(j));
        }
  nlohmann::ordered_json j;
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

EpochCurves epoch_curves(const std::vector<RunResult> &runs) {
  using GroupKey = std::tuple<L1Filter, Classifier, Level>;
  auto group_name = [](const GroupKey &g) {
    return std::string(to_string(std::get<0>(g))) + "/" +
           std::string(to_string(std::get<1>(g))) + "/" + std::string(to_string(std::get<2>(g)));
  };

  std::map<std::pair<GroupKey, FeatureSet>, std::map<int, double>> series;
  std::map<std::pair<GroupKey, FeatureSet>, double> baselines;
  std::set<int> epochs;
  for (const auto &r : runs) {
    const GroupKey g{r.spec.l1, r.spec.classifier, r.spec.level};
    if (r.spec.epoch) {
      epochs.insert(*r.spec.epoch);
      series[{g, r.spec.set}][*r.spec.epoch] = r.accuracy;
    } else if (is_external(r.spec.set)) {
      baselines[{g, r.spec.set}] = r.accuracy;
    }
  }
  if (epochs.size() < 2)
    throw Error(ErrorKind::kInvalidArgument,
                "epoch curves need at least two distinct epoch tags, got " +
                    std::to_string(epochs.size()));

  std::ostringstream csv;
  csv << "epoch,series,accuracy\n";
  const double x_lo = *epochs.begin(), x_hi = *epochs.rbegin();
  SvgPlot plot(x_lo, x_hi, 0.0, 100.0, "Accuracy by fine-tuning epoch", "epoch", "accuracy (%)");
  static const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::size_t color = 0;
  std::set<GroupKey> groups_done;
  for (const auto &[key, points] : series) {
    const std::string name = group_name(key.first) + "/" + std::string(to_string(key.second));
    const std::string col = kPalette[color++ % std::size(kPalette)];
    std::vector<std::pair<double, double>> line;
    for (const auto &[e, acc] : points) {
      csv << e << ',' << name << ',' << format_double(acc) << '\n';
      line.emplace_back(e, acc);
      plot.circle(e, acc, col);
    }
    plot.polyline(line, col);
    plot.legend(name, col);

    if (!groups_done.insert(key.first).second) continue;
    bool any = false;
    for (FeatureSet b : {FeatureSet::kHB, FeatureSet::kW2V}) {
      auto it = baselines.find({key.first, b});
      if (it == baselines.end()) continue;
      any = true;
      const std::string bname = group_name(key.first) + "/" + std::string(to_string(b));
      for (int e : epochs) csv << e << ',' << bname << ',' << format_double(it->second) << '\n';
      plot.polyline({{x_lo, it->second}, {x_hi, it->second}}, col, true);
      plot.legend(bname + " (baseline)", col);
    }
    if (!any) warn("no HB/W2V baseline for " + group_name(key.first));
  }
  return {csv.str(), plot.str()};
}

namespace {

std::vector<L1Filter> present_blocks(const EvalData &data) {
  bool native = false, ger = false, ita = false;
  for (const auto &r : data.records) {
    native |= r.l1 == L1::kNative;
    ger |= r.l1 == L1::kGer;
    ita |= r.l1 == L1::kIta;
  }
  std::vector<L1Filter> out;
  if (native) out.push_back(L1Filter::kNative);
  if (ger || ita) out.push_back(L1Filter::kNonNative);
  if (ger) out.push_back(L1Filter::kGer);
  if (ita) out.push_back(L1Filter::kIta);
  if (out.empty()) out.push_back(L1Filter::kAll);
  return out;
}

std::vector<Level> present_levels(const EvalData &data) {
  bool syllables = !data.records.empty();
  for (const auto &r : data.records) syllables &= r.syllables.has_value();
  if (syllables) return {Level::kWord, Level::kSyllable};
  return {Level::kWord};
}

}  // namespace

std::vector<RunSpec> full_grid(const EvalData &data, std::uint64_t seed,
                               std::optional<std::size_t> epochs) {
  std::set<Mode> modes;
  for (const auto &r : data.records)
    if (!r.epoch) modes.insert(r.mode);
  std::vector<RunSpec> specs;
  for (L1Filter block : present_blocks(data))
    for (FeatureSet set : kRowOrder)
      for (Level level : present_levels(data))
        for (Mode mode : {Mode::kSpeechText, Mode::kTextOnly})
          for (Classifier clf : {Classifier::kKMeans, Classifier::kDnn}) {
            if (is_external(set)) {
              if (mode == Mode::kTextOnly || !data.external.count({set, level})) continue;
            } else if (!modes.count(mode)) {
              continue;
            }
            RunSpec s;
            s.l1 = block;
            s.set = set;
            s.level = level;
            s.mode = mode;
            s.classifier = clf;
            s.seed = seed;
            s.epochs = epochs;
            specs.push_back(s);
          }
  return specs;
}

std::vector<RunSpec> epoch_grid(const EvalData &data, FeatureSet set, std::uint64_t seed,
                                std::optional<std::size_t> epochs) {
  std::set<int> tags;
  for (const auto &r : data.records)
    if (r.epoch && r.mode == Mode::kSpeechText) tags.insert(*r.epoch);
  std::vector<RunSpec> specs;
  for (L1Filter block : present_blocks(data))
    for (Level level : present_levels(data))
      for (Classifier clf : {Classifier::kKMeans, Classifier::kDnn}) {
        RunSpec s;
        s.l1 = block;
        s.level = level;
        s.classifier = clf;
        s.seed = seed;
        s.epochs = epochs;
        s.mode = Mode::kSpeechText;
        for (int e : tags) {
          s.set = set;
          s.epoch = e;
          specs.push_back(s);
        }
        s.epoch.reset();
        for (FeatureSet b : {FeatureSet::kHB, FeatureSet::kW2V})
          if (data.external.count({b, level})) {
            s.set = b;
            specs.push_back(s);
          }
      }
  return specs;
}

std::vector<RunResult> run_all(const std::vector<RunSpec> &specs, const EvalData &data,
                               std::size_t jobs, const std::string &artifact_dir) {
  std::vector<std::optional<RunResult>> slots(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        slots[i] = run(specs[i], data, artifact_dir);
      } catch (const Error &e) {
        if (e.kind() == ErrorKind::kEmptySelection)
          warn("skipping " + run_name(specs[i]) + ": " + e.what());
        else
          errors[i] = std::current_exception();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(specs.size(), 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<RunResult> out;
  for (auto &s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

std::string results_to_jsonl(const std::vector<RunResult> &runs) {
  std::string out;
  for (const auto &r : runs) {
    nlohmann::ordered_json j;
    j["spec"] = spec_json(r.spec);
    j["accuracy"] = r.accuracy;
    j["n_units"] = r.n_units;
    j["n_train"] = r.n_train;
    j["n_test"] = r.n_test;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<RunResult> results_from_jsonl(const std::string &text) {
  std::vector<RunResult> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      RunResult r;
      r.spec = spec_from_json(j.at("spec"));
      r.accuracy = j.at("accuracy").get<double>();
      r.n_units = j.value("n_units", std::size_t{0});
      r.n_train = j.value("n_train", std::size_t{0});
      r.n_test = j.value("n_test", std::size_t{0});
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::kParse, "results line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error &e) {
      throw Error(ErrorKind::kParse, "results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace promdet
