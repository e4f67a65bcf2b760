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

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "elcand/evaluation.hpp"

namespace elcand {

/// Candidate-generation results for one configuration. System names are
/// "lookup", "dense", "bm25" and "hybrid".
struct CandidateReport {
  std::size_t k = 0;
  EvalMode eval_mode = EvalMode::kSpanAligned;
  SpanSource span_source = SpanSource::kGold;
  std::map<std::string, std::size_t> denominators;
  std::map<std::string, SplitRecall> recall;
  std::map<std::string, std::vector<CurvePoint>> curves;
  std::vector<std::string> overlap_methods;
  std::vector<OverlapRow> overlap;
  // group (split or "overall") -> method -> count
  std::map<std::string, std::map<std::string, std::size_t>> unique_exclusive;
  std::map<std::string, std::map<std::string, std::size_t>> unique_total;
};

struct DisambigReport {
  std::string candidate_method;
  std::map<std::string, Prf> by_split;  // plus "overall"
};

struct AblationReport {
  std::map<std::string, CandidateReport> candidates;  // description mode -> report
  // candidate method -> description mode -> report
  std::map<std::string, std::map<std::string, DisambigReport>> disambiguation;
};

nlohmann::json report_json(const CandidateReport& report, const nlohmann::json& config);
std::string report_text(const CandidateReport& report);

nlohmann::json overlap_json(const CandidateReport& report, const nlohmann::json& config);
std::string overlap_text(const CandidateReport& report);

nlohmann::json disambig_json(const DisambigReport& report, const nlohmann::json& config);
std::string disambig_text(const DisambigReport& report);

nlohmann::json ablation_json(const AblationReport& report, const nlohmann::json& config);
std::string ablation_text(const AblationReport& report);

}  // namespace elcand
