// Copyright 2026 The elcand Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include <doctest.h>

#include "elcand/pipeline.hpp"
#include "elcand/retrieval.hpp"
#include "error_code.hpp"
#include "fixtures.hpp"

using namespace elcand;
using elcand::testing::error_code;
namespace fs = std::filesystem;

namespace {

// Fresh directory holding a small generated corpus and its config.
class Workspace {
 public:
  explicit Workspace(const std::string& name, const nlohmann::json& extra = nlohmann::json::object())
      : dir_(fs::temp_directory_path() / ("elcand-pipeline-" + name)) {
    fs::remove_all(dir_);
    fixtures::write_corpus(fixtures::general_corpus({60, 30, 21}), dir_, extra);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  fs::path config() const { return dir_ / "config.json"; }
  fs::path out(const std::string& name = "") const { return dir_ / "out" / name; }
  const fs::path& dir() const { return dir_; }

  RunResult run(const std::string& command, const std::vector<std::string>& overrides = {}) const {
    return run_pipeline(config(), command, overrides);
  }

 private:
  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool mentions(const RunResult& r, const std::string& text) {
  return r.message.find(text) != std::string::npos;
}

}  // namespace

TEST_CASE("config defaults and overrides") {
  const PipelineConfig defaults = config_from_json(nlohmann::json::object());
  CHECK(defaults.retrieval.k == 16);
  CHECK(defaults.description_mode == DescriptionMode::kLong);
  CHECK(defaults.bm25.k1 == 0.9);
  CHECK(defaults.bm25.b == 0.4);
  CHECK(defaults.embedder.dim == 256);
  CHECK_FALSE(defaults.retrieval.hybrid_include_bm25);

  nlohmann::json j = nlohmann::json::object();
  apply_override(j, "retrieval.k=32");
  apply_override(j, "paths.dataset=data/x.jsonl");
  apply_override(j, "retrieval.methods=[\"dense\"]");
  apply_override(j, "description_mode=short");
  const PipelineConfig cfg = config_from_json(j, "/base");
  CHECK(cfg.retrieval.k == 32);
  CHECK(cfg.paths.dataset == "data/x.jsonl");
  CHECK(cfg.retrieval.methods == std::vector<Method>{Method::kDense});
  CHECK(cfg.description_mode == DescriptionMode::kShort);
  CHECK(cfg.resolve("data/x.jsonl") == fs::path("/base/data/x.jsonl"));
  CHECK(cfg.resolve("/abs/y") == fs::path("/abs/y"));
  CHECK(config_from_json(cfg.to_json(), "/base").to_json() == cfg.to_json());
  CHECK(error_code([&] { apply_override(j, "no-equals-sign"); }) == ErrorCode::kValidation);
}

TEST_CASE("config validation names the offending field") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {R"({"retrieval":{"kk":3}})", "retrieval.kk"},
      {R"({"retrieval":{"k":0}})", "retrieval.k"},
      {R"({"retrieval":{"methods":["sparse"]}})", "retrieval.methods"},
      {R"({"description_mode":"medium"})", "description_mode"},
      {R"({"bm25":{"b":1.5}})", "bm25.b"},
      {R"({"embedder":{"dim":"big"}})", "embedder.dim"},
      {R"({"dense":{"mode":"hnsw"}})", "dense.mode"},
      {R"({"disambiguation":{"holdout_fraction":1.0}})", "disambiguation.holdout_fraction"},
      {R"({"retrieval":{"curve_ks":[4,2]}})", "retrieval.curve_ks"},
  };
  for (const auto& [text, field] : cases) {
    try {
      config_from_json(nlohmann::json::parse(text));
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kValidation);
      CHECK_MESSAGE(std::string(e.what()).find(field) != std::string::npos, e.what());
    }
  }
}

TEST_CASE("validation failures exit with status 1") {
  const Workspace ws("validation");
  CHECK(ws.run("evaluate", {"paths.entities=missing.jsonl"}).exit_code == kExitValidation);
  CHECK(mentions(ws.run("evaluate", {"paths.entities=missing.jsonl"}), "paths.entities"));
  CHECK(ws.run("launch").exit_code == kExitValidation);
  CHECK(ws.run("evaluate", {"retrieval.k=-1"}).exit_code == kExitValidation);
  CHECK(ws.run("disambig-eval").exit_code == kExitValidation);
  CHECK(run_pipeline(ws.dir() / "nope.json", "evaluate").exit_code == kExitValidation);
  CHECK(ws.run("evaluate", {"embedder.kind=precomputed"}).exit_code == kExitValidation);
  CHECK_FALSE(fs::exists(ws.out("report.json")));
}

TEST_CASE("runtime failures exit with status 2 and remove partial outputs") {
  const Workspace ws("runtime");
  fs::create_directories(ws.out("report.txt"));  // blocks the second output
  const RunResult r = ws.run("evaluate");
  CHECK(r.exit_code == kExitRuntime);
  CHECK_FALSE(fs::exists(ws.out("report.json")));
  for (const auto& entry : fs::directory_iterator(ws.out())) {
    CHECK(entry.path().filename() == "report.txt");
  }
  const RunResult none = ws.run("evaluate", {"retrieval.eval_splits=[\"academic\"]",
                                             "paths.dataset=entities.jsonl"});
  CHECK(none.exit_code != kExitOk);
}

TEST_CASE("commands produce their artifacts") {
  const Workspace ws("commands");
  for (const char* c : {"ingest", "build-index", "retrieve", "evaluate", "overlap-report",
                        "disambig-train", "disambig-eval"}) {
    const RunResult r = ws.run(c);
    CHECK_MESSAGE(r.exit_code == kExitOk, c << ": " << r.message);
  }
  for (const char* f : {"entities.filtered.jsonl", "ingest_summary.json", "dense.index", "alias_table.tsv",
                        "index_summary.json", "candidates.jsonl", "report.json", "report.txt",
                        "overlap.json", "overlap.txt", "model.txt", "train_summary.json",
                        "disambiguation.json", "disambiguation.txt"}) {
    CHECK_MESSAGE(fs::exists(ws.out(f)), f);
  }
  const auto report = nlohmann::json::parse(slurp(ws.out("report.json")));
  CHECK(report.at("config").at("retrieval").at("k") == 16);
  const auto& recall = report.at("recall_at_k");
  for (const char* split : {"academic", "ood", "overall"}) {
    CHECK(recall.at("hybrid").at(split).get<double>() >=
          std::max(recall.at("dense").at(split).get<double>(), recall.at("lookup").at(split).get<double>()));
  }
  CHECK(report.at("overlap").at("rows").size() == 8);

  std::ifstream in(ws.out("candidates.jsonl"));
  const auto sets = read_candidates_jsonl(in);
  CHECK_FALSE(sets.empty());
  for (const auto& s : sets) {
    std::size_t dense = 0;
    for (const auto& c : s.candidates) dense += c.scores.count(Method::kDense);
    CHECK(dense <= 16);
  }
}

TEST_CASE("identical runs write byte-identical reports") {
  const Workspace ws("determinism");
  const std::vector<std::string> files = {"report.json", "report.txt", "model.txt",
                                          "train_summary.json", "ablation.json", "ablation.txt"};
  std::vector<std::string> first;
  for (int run = 0; run < 2; ++run) {
    REQUIRE(ws.run("evaluate").exit_code == kExitOk);
    REQUIRE(ws.run("disambig-train").exit_code == kExitOk);
    REQUIRE(ws.run("ablate").exit_code == kExitOk);
    for (std::size_t i = 0; i < files.size(); ++i) {
      const std::string bytes = slurp(ws.out(files[i]));
      if (run == 0) {
        first.push_back(bytes);
      } else {
        CHECK_MESSAGE(bytes == first[i], files[i]);
      }
    }
    fs::remove_all(ws.out());
  }
}

TEST_CASE("approximate index mode runs through the pipeline") {
  const Workspace ws("approximate");
  const RunResult r = ws.run("build-index", {"dense.mode=approximate", "dense.recall_floor=0.5"});
  CHECK_MESSAGE(r.exit_code == kExitOk, r.message);
  const auto summary = nlohmann::json::parse(slurp(ws.out("index_summary.json")));
  CHECK(summary.at("dense").at("mode") == "approximate");
  CHECK(summary.at("dense").at("cells").get<int>() > 0);
}
