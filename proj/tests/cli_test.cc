// promdet/tests/cli_test.cc

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

#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "promdet/cli.h"
#include "promdet/common.h"
#include "promdet/synth.h"
#include "test_util.h"

using namespace promdet;
using promdet::testing::slurp;
using promdet::testing::spit;
using promdet::testing::tmp_path;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Small paperlike corpus: three L1 blocks, both modes, syllables present.
std::string small_corpus(const std::string &name) {
  auto c = synth_preset("paperlike");
  c.num_utterances = 18;
  c.dim = 8;
  const auto cfg = tmp_path(name + ".config.json");
  spit(cfg, synth_config_to_json(c));
  const auto path = tmp_path(name + ".jsonl");
  REQUIRE(call({"synth", "--out", path, "--config", cfg}).code == 0);
  return path;
}

}  // namespace

TEST_CASE("help exits zero") {
  const auto r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("evaluate") != std::string::npos);
  CHECK(call({"evaluate", "--help"}).code == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(call({}).code == 2);
  const auto r = call({"cluster", "--in", "x.jsonl", "--bogus"});
  CHECK(r.code == 2);
  CHECK(r.err.find("bogus") != std::string::npos);
  CHECK(call({"pca", "--in", "x", "--out", "y", "--components", "1"}).code == 2);
  CHECK(call({"aggregate", "--in", "x", "--out", "y", "--set", "Q"}).code == 2);
}

TEST_CASE("runtime errors exit 1") {
  const auto r = call({"cluster", "--in", tmp_path("does_not_exist.jsonl")});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("promdet: ", 0) == 0);
}

TEST_CASE("validate reports bad lines") {
  const auto good = tmp_path("cli_good.jsonl");
  save({promdet::testing::tiny_record()}, good);
  CHECK(call({"validate", good}).code == 0);

  auto bad = promdet::testing::tiny_record("u1");
  bad.words[1].phone_end = 9;
  const auto path = tmp_path("cli_bad.jsonl");
  spit(path, serialize_record(promdet::testing::tiny_record()) + "\n" +
                 serialize_record(bad) + "\n{\"utt_id\": 3}\n");
  const auto r = call({"validate", "--in", path});
  CHECK(r.code != 0);
  CHECK(r.err.find(path + ":2:") != std::string::npos);
  CHECK(r.err.find(path + ":3:") != std::string::npos);
}

TEST_CASE("syllabify, aggregate, distances, pca, cluster") {
  auto rec = promdet::testing::tiny_record();
  rec.syllables.reset();
  const auto in = tmp_path("cli_nosyl.jsonl");
  save({rec}, in);
  const auto syl = tmp_path("cli_syl.jsonl");
  REQUIRE(call({"syllabify", "--in", in, "--out", syl}).code == 0);
  const auto loaded = load(syl);
  REQUIRE(loaded[0].syllables.has_value());
  CHECK(loaded[0].syllables->size() == 2);

  const auto corpus = small_corpus("cli_tools");
  const auto csv = tmp_path("cli_agg.csv");
  REQUIRE(call({"aggregate", "--in", corpus, "--out", csv, "--level", "syllable", "--set",
                "E"}).code == 0);
  CHECK(slurp(csv).rfind("utt_id,unit_index,level,label,f0,", 0) == 0);

  const auto d = call({"distances", "--in", corpus, "--set", "D"});
  CHECK(d.code == 0);
  CHECK(d.out.find("mahalanobis") != std::string::npos);

  const auto scatter = tmp_path("cli_pca.csv");
  REQUIRE(call({"pca", "--in", corpus, "--out", scatter}).code == 0);
  CHECK(std::filesystem::exists(tmp_path("cli_pca.svg")));

  const auto c = call({"cluster", "--in", corpus, "--set", "E", "--seed", "3"});
  CHECK(c.code == 0);
  CHECK(c.out.find("accuracy") != std::string::npos);
}

TEST_CASE("synth then full grid produces the table") {
  const auto corpus = small_corpus("cli_grid");
  const auto dir = tmp_path("cli_grid_out");
  std::filesystem::remove_all(dir);
  const auto r = call({"evaluate", "--in", corpus, "--grid", "full", "--epochs", "3", "--out", dir});
  REQUIRE(r.code == 0);
  const auto md = slurp(dir + "/table.md");
  CHECK(md.find("| Native | E |") != std::string::npos);
  CHECK(md.find("| Non-Native | E |") != std::string::npos);
  CHECK(md.find("| ITA | E |") != std::string::npos);
  CHECK_FALSE(slurp(dir + "/table.csv").empty());
  CHECK_FALSE(slurp(dir + "/results.jsonl").empty());

  const auto rep = call({"report", "--in", dir + "/results.jsonl"});
  CHECK(rep.code == 0);
  CHECK(rep.out == md);
  const auto from_csv = call({"report", "--in", dir + "/table.csv"});
  CHECK(from_csv.out == md);
}

TEST_CASE("repeated runs are byte-identical") {
  const auto a = small_corpus("cli_rep_a");
  const auto b = small_corpus("cli_rep_b");
  CHECK(slurp(a) == slurp(b));
  const auto one = tmp_path("cli_rep_1");
  const auto two = tmp_path("cli_rep_2");
  for (const auto &dir : {one, two}) {
    std::filesystem::remove_all(dir);
    REQUIRE(call({"evaluate", "--in", a, "--grid", "full", "--epochs", "2", "--jobs", "2",
                  "--out", dir}).code == 0);
  }
  CHECK(slurp(one + "/table.csv") == slurp(two + "/table.csv"));
  CHECK(slurp(one + "/results.jsonl") == slurp(two + "/results.jsonl"));
}

TEST_CASE("epoch grid writes curves") {
  auto c = synth_preset("epochs");
  c.num_utterances = 12;
  c.dim = 8;
  c.epoch_tags = {1, 2, 3};
  const auto cfg = tmp_path("cli_epochs.config.json");
  spit(cfg, synth_config_to_json(c));
  const auto corpus = tmp_path("cli_epochs.jsonl");
  REQUIRE(call({"synth", "--out", corpus, "--config", cfg}).code == 0);
  const auto dir = tmp_path("cli_epochs_out");
  std::filesystem::remove_all(dir);
  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
  const auto r = call({"evaluate", "--in", corpus, "--grid", "epochs", "--epochs", "2",
                       "--set", "E", "--out", dir});
  set_warning_sink(nullptr);
  REQUIRE(r.code == 0);
  CHECK_FALSE(warnings.empty());
  CHECK(slurp(dir + "/curves.csv").rfind("epoch,series,accuracy", 0) == 0);
  CHECK(slurp(dir + "/curves.svg").find("<svg") != std::string::npos);
}

TEST_CASE("train writes artifacts") {
  const auto corpus = small_corpus("cli_train");
  const auto dir = tmp_path("cli_train_out");
  std::filesystem::remove_all(dir);
  const auto r = call({"train", "--in", corpus, "--set", "E", "--epochs", "5", "--out", dir});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("accuracy") != std::string::npos);
  CHECK_FALSE(std::filesystem::is_empty(dir));
}
