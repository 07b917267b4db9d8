// promdet/src/cli.cc

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

#include "promdet/cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "promdet/aggregate.h"
#include "promdet/cluster.h"
#include "promdet/distances.h"
#include "promdet/eval.h"
#include "promdet/interchange.h"
#include "promdet/pca.h"
#include "promdet/syllabifier.h"
#include "promdet/synth.h"

namespace promdet {

namespace {

namespace fs = std::filesystem;

struct Selection {
  std::string level = "word";
  std::string set = "EDP";
  std::string mode = "speech_text";
  std::string l1 = "all";
  std::optional<int> epoch;
  std::string hb, w2v;
};

void add_selection(CLI::App *sub, Selection &sel) {
  sub->add_option("--level", sel.level, "Unit level")
      ->check(CLI::IsMember({"word", "syllable"}))
      ->capture_default_str();
  sub->add_option("--set", sel.set, "Feature set")
      ->check(CLI::IsMember({"E", "D", "P", "EDP", "HB", "W2V"}))
      ->capture_default_str();
  sub->add_option("--mode", sel.mode, "Embedding condition")
      ->check(CLI::IsMember({"speech_text", "text_only"}))
      ->capture_default_str();
  sub->add_option("--l1", sel.l1, "Speaker L1 filter")
      ->check(CLI::IsMember({"native", "GER", "ITA", "nonnative", "all"}))
      ->capture_default_str();
  sub->add_option("--epoch", sel.epoch, "Only records with this epoch tag");
  sub->add_option("--hb", sel.hb, "Heuristic feature CSV (HB set)");
  sub->add_option("--w2v", sel.w2v, "Wav2Vec-2.0 feature CSV (W2V set)");
}

RunSpec spec_of(const Selection &sel) {
  RunSpec s;
  s.level = parse_level(sel.level);
  s.set = parse_feature_set(sel.set);
  s.mode = parse_mode(sel.mode);
  s.l1 = parse_l1_filter(sel.l1);
  s.epoch = sel.epoch;
  return s;
}

EvalData load_data(const std::string &in, const Selection &sel) {
  EvalData data;
  data.records = load(in);
  auto attach = [&](const std::string &path, FeatureSet tag) {
    if (path.empty()) return;
    for (Level level : {Level::kWord, Level::kSyllable}) {
      FeatureMatrix fm = import_external_features(path, tag, level);
      if (fm.size() > 0) data.attach_external(tag, level, std::move(fm));
    }
  };
  attach(sel.hb, FeatureSet::kHB);
  attach(sel.w2v, FeatureSet::kW2V);
  return data;
}

void write_file(const std::string &path, const std::string &text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << text;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

std::string render_table(const ResultsTable &t, const std::string &format) {
  if (format == "csv") return table_csv(t);
  if (format == "json") return table_json(t);
  return table_markdown(t);
}

int cmd_validate(const std::string &in, std::ostream &out, std::ostream &err) {
  std::ifstream file(in);
  if (!file) throw Error(ErrorKind::kIo, "cannot read " + in);
  std::string line;
  std::size_t line_no = 0, records = 0, problems = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++records;
    try {
      for (const auto &v : validate(parse_record_line(line))) {
        err << in << ':' << line_no << ": " << v.code << ": " << v.message << '\n';
        ++problems;
      }
    } catch (const Error &e) {
      err << in << ':' << line_no << ": parse error: " << e.what() << '\n';
      ++problems;
    }
  }
  if (problems > 0) {
    err << in << ": " << problems << " violation(s) in " << records << " record(s)\n";
    return 1;
  }
  out << in << ": " << records << " record(s) valid\n";
  return 0;
}

}  // namespace

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Prominence detection from prosody embeddings", "promdet"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string in, out_path, format = "md", preset, classifier = "kmeans", grid = "single";
  std::string inventory_path, curves, config_path;
  std::uint64_t seed = 17;
  std::size_t k = 2, n_init = 1, components = 2, jobs = 1, epochs = 0;
  double ridge = 1e-6;
  bool standardize = false, pairwise = false, force = false, class_weight = false;
  Selection sel;

  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"md", "csv", "json"}))
        ->capture_default_str();
  };

  auto *validate_cmd = app.add_subcommand("validate", "Check an interchange JSONL file");
  validate_cmd->add_option("--in,in", in, "Interchange JSONL file")->required();

  auto *syllabify_cmd = app.add_subcommand("syllabify", "Add maximal-onset syllable spans");
  syllabify_cmd->add_option("--in", in, "Input JSONL")->required();
  syllabify_cmd->add_option("--out", out_path, "Output JSONL")->required();
  syllabify_cmd->add_option("--inventory", inventory_path, "Phone inventory JSON");
  syllabify_cmd->add_flag("--force", force, "Replace existing syllable spans");

  auto *aggregate_cmd = app.add_subcommand("aggregate", "Export unit-level feature CSV");
  aggregate_cmd->add_option("--in", in, "Input JSONL")->required();
  aggregate_cmd->add_option("--out", out_path, "Output CSV")->required();
  add_selection(aggregate_cmd, sel);

  auto *distances_cmd = app.add_subcommand("distances", "Stressed vs unstressed separation");
  distances_cmd->add_option("--in", in, "Input JSONL")->required();
  distances_cmd->add_option("--out", out_path, "Report file (default stdout)");
  distances_cmd->add_option("--ridge", ridge, "Covariance ridge factor")->capture_default_str();
  distances_cmd->add_flag("--pairwise", pairwise, "Mean of pairwise distances");
  add_selection(distances_cmd, sel);
  add_format(distances_cmd);

  auto *pca_cmd = app.add_subcommand("pca", "Project units onto principal components");
  pca_cmd->add_option("--in", in, "Input JSONL")->required();
  pca_cmd->add_option("--out", out_path, "Scatter CSV (SVG written alongside)")->required();
  pca_cmd->add_option("--components", components, "Number of components")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
      ->capture_default_str();
  pca_cmd->add_flag("--standardize", standardize, "Scale features to unit variance");
  add_selection(pca_cmd, sel);

  auto *cluster_cmd = app.add_subcommand("cluster", "K-Means clustering");
  cluster_cmd->add_option("--in", in, "Input JSONL")->required();
  cluster_cmd->add_option("--out", out_path, "Model JSON");
  cluster_cmd->add_option("--k", k, "Number of clusters")->capture_default_str();
  cluster_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  cluster_cmd->add_option("--restarts", n_init, "k-means++ restarts")->capture_default_str();
  add_selection(cluster_cmd, sel);

  auto *train_cmd = app.add_subcommand("train", "Train and score one DNN");
  train_cmd->add_option("--in", in, "Input JSONL")->required();
  train_cmd->add_option("--out", out_path, "Artifact directory");
  train_cmd->add_option("--preset", preset, "Network preset")
      ->check(CLI::IsMember({"word", "syllable"}));
  train_cmd->add_option("--epochs", epochs, "Override the preset's epoch count");
  train_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  train_cmd->add_flag("--class-weight", class_weight, "Weight the loss by inverse class frequency");
  add_selection(train_cmd, sel);

  auto *evaluate_cmd = app.add_subcommand("evaluate", "Run one cell or a grid of cells");
  evaluate_cmd->add_option("--in", in, "Input JSONL")->required();
  evaluate_cmd->add_option("--out", out_path, "Output directory");
  evaluate_cmd->add_option("--grid", grid, "single, full or epochs")
      ->check(CLI::IsMember({"single", "full", "epochs"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--classifier", classifier, "Classifier for single runs")
      ->check(CLI::IsMember({"kmeans", "dnn"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--epochs", epochs, "Override DNN epoch counts");
  evaluate_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  evaluate_cmd->add_option("--jobs", jobs, "Parallel grid cells")->capture_default_str();
  evaluate_cmd->add_flag("--class-weight", class_weight, "Weight DNN loss by inverse class frequency");
  add_selection(evaluate_cmd, sel);
  add_format(evaluate_cmd);

  auto *report_cmd = app.add_subcommand("report", "Render results as a table");
  report_cmd->add_option("--in", in, "results.jsonl or table CSV")->required();
  report_cmd->add_option("--out", out_path, "Output file (default stdout)");
  report_cmd->add_option("--curves", curves, "Write epoch curves to PREFIX.csv/.svg");
  add_format(report_cmd);

  auto *synth_cmd = app.add_subcommand("synth", "Generate synthetic interchange data");
  synth_cmd->add_option("--out", out_path, "Output JSONL")->required();
  synth_cmd->add_option("--preset", preset, "Generator preset")
      ->check(CLI::IsMember({"default", "paperlike", "null", "epochs"}));
  synth_cmd->add_option("--config", config_path, "Generator config JSON");
  auto *synth_seed = synth_cmd->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    err << app.help();
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(in, out, err);

    if (syllabify_cmd->parsed()) {
      const PhoneInventory inv = inventory_path.empty()
                                     ? PhoneInventory::default_english()
                                     : PhoneInventory::from_json_file(inventory_path);
      auto records = load(in);
      for (auto &r : records)
        if (force || !r.syllables) r.syllables = syllabify_record(r, inv);
      save(records, out_path);
      return 0;
    }

    if (aggregate_cmd->parsed()) {
      const RunSpec spec = spec_of(sel);
      std::vector<UtteranceRecord> chosen;
      for (auto &r : load(in))
        if (r.mode == spec.mode && l1_matches(spec.l1, r.l1) && r.epoch == spec.epoch)
          chosen.push_back(std::move(r));
      export_external_features(build_features(chosen, spec.level, spec.set), out_path);
      return 0;
    }

    if (distances_cmd->parsed()) {
      const RunSpec spec = spec_of(sel);
      const FeatureMatrix fm = select_features(spec, load_data(in, sel));
      SeparationOptions opts;
      opts.ridge = ridge;
      opts.mean_of_pairwise = pairwise;
      GroupSeparationReport report = separation_report(fm, opts);
      report.level = spec.level;
      report.mode = spec.mode;
      const std::string text = format == "csv"    ? report_to_csv(report)
                               : format == "json" ? report_to_json(report)
                                                  : report_to_markdown(report);
      emit(out_path, text, out);
      return 0;
    }

    if (pca_cmd->parsed()) {
      const FeatureMatrix fm = select_features(spec_of(sel), load_data(in, sel));
      PcaOptions opts;
      opts.standardize = standardize;
      const PcaModel model = pca_fit(fm.rows, components, opts);
      const fs::path csv(out_path);
      if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
      fs::path svg = csv, json = csv;
      svg.replace_extension(".svg");
      json.replace_extension(".model.json");
      export_scatter(pca_project(model, fm.rows).leftCols(2), fm.labels, csv.string(), svg.string(),
                     run_name(spec_of(sel)));
      write_file(json.string(), pca_model_to_json(model));
      return 0;
    }

    if (cluster_cmd->parsed()) {
      const FeatureMatrix fm = select_features(spec_of(sel), load_data(in, sel));
      KMeansOptions opts;
      opts.k = k;
      opts.seed = seed;
      opts.n_init = n_init;
      const KMeansModel model = kmeans_fit(fm.rows, opts);
      out << "inertia " << format_double(model.inertia) << '\n';
      if (k == 2)
        out << "accuracy "
            << format_fixed(100.0 * clustering_accuracy(kmeans_assign(model, fm.rows), fm.labels), 1)
            << '\n';
      if (!out_path.empty()) write_file(out_path, kmeans_model_to_json(model));
      return 0;
    }

    if (train_cmd->parsed()) {
      RunSpec spec = spec_of(sel);
      spec.classifier = Classifier::kDnn;
      spec.seed = seed;
      spec.preset = preset;
      spec.class_weight = class_weight;
      if (epochs > 0) spec.epochs = epochs;
      const RunResult r = run(spec, load_data(in, sel), out_path);
      out << "accuracy " << format_fixed(r.accuracy, 1) << '\n';
      return 0;
    }

    if (evaluate_cmd->parsed()) {
      const EvalData data = load_data(in, sel);
      const std::optional<std::size_t> epoch_override =
          epochs > 0 ? std::optional<std::size_t>(epochs) : std::nullopt;
      const std::string runs_dir = out_path.empty() ? "" : (fs::path(out_path) / "runs").string();
      if (grid == "single") {
        RunSpec spec = spec_of(sel);
        spec.classifier = parse_classifier(classifier);
        spec.seed = seed;
        spec.epochs = epoch_override;
        spec.class_weight = class_weight;
        const RunResult r = run(spec, data, runs_dir);
        out << "accuracy " << format_fixed(r.accuracy, 1) << '\n';
        return 0;
      }
      auto specs = grid == "full"
                             ? full_grid(data, seed, epoch_override)
                             : epoch_grid(data, parse_feature_set(sel.set), seed, epoch_override);
      for (auto &spec : specs) spec.class_weight = class_weight;
      const auto results = run_all(specs, data, jobs, runs_dir);
      if (!out_path.empty()) write_file((fs::path(out_path) / "results.jsonl").string(),
                                        results_to_jsonl(results));
      if (grid == "full") {
        const ResultsTable t = build_table(results);
        if (!out_path.empty()) {
          write_file((fs::path(out_path) / "table.md").string(), table_markdown(t));
          write_file((fs::path(out_path) / "table.csv").string(), table_csv(t));
          write_file((fs::path(out_path) / "table.json").string(), table_json(t));
        }
        out << render_table(t, format);
      } else {
        const EpochCurves c = epoch_curves(results);
        if (!out_path.empty()) {
          write_file((fs::path(out_path) / "curves.csv").string(), c.csv);
          write_file((fs::path(out_path) / "curves.svg").string(), c.svg);
        }
        out << c.csv;
      }
      return 0;
    }

    if (report_cmd->parsed()) {
      const std::string text = read_file(in);
      if (fs::path(in).extension() == ".csv") {
        emit(out_path, render_table(parse_table_csv(text), format), out);
        return 0;
      }
      const auto results = results_from_jsonl(text);
      bool untagged = false;
      for (const auto &r : results) untagged |= !r.spec.epoch.has_value();
      if (untagged) emit(out_path, render_table(build_table(results), format), out);
      if (!curves.empty()) {
        const EpochCurves c = epoch_curves(results);
        write_file(curves + ".csv", c.csv);
        write_file(curves + ".svg", c.svg);
      }
      return 0;
    }

    if (synth_cmd->parsed()) {
      SynthConfig config = !config_path.empty()  ? synth_config_from_json(read_file(config_path))
                           : preset.empty()      ? synth_preset("paperlike")
                                                 : synth_preset(preset);
      if (synth_seed->count() > 0) config.seed = seed;
      const fs::path p(out_path);
      if (p.has_parent_path()) fs::create_directories(p.parent_path());
      save(generate(config), out_path);
      return 0;
    }
  } catch (const Error &e) {
    err << "promdet: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "promdet: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv;
  argv.push_back("promdet");
  for (const auto &a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace promdet
