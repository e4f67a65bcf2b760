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

#include "elcand/report.hpp"

#include <fmt/format.h>

namespace elcand {

using nlohmann::json;

namespace {

const char* kNotes[] = {
    "NIL gold spans are excluded from recall denominators.",
    "A span with several gold ids counts as a hit when any of them is retrieved.",
    "Lookup returns every alias-table match; its recall does not depend on K.",
    "Hybrid is the union of lookup and dense candidates; a gold id counts at K when any "
    "contributing method has it within its own cutoff.",
    "overall pools the academic and ood splits.",
};

json overlap_rows(const CandidateReport& r) {
  json rows = json::array();
  for (const auto& row : r.overlap) {
    json present = json::object();
    for (std::size_t i = 0; i < r.overlap_methods.size(); ++i) {
      present[r.overlap_methods[i]] = static_cast<bool>(row.pattern[i]);
    }
    rows.push_back({{"present", present}, {"count", row.count}, {"proportion", row.proportion}});
  }
  return rows;
}

json candidate_body(const CandidateReport& r) {
  json curves = json::object();
  for (const auto& [name, points] : r.curves) {
    json arr = json::array();
    for (const auto& p : points) arr.push_back({{"k", p.k}, {"recall", p.recall}});
    curves[name] = arr;
  }
  return {{"k", r.k},
          {"eval_mode", to_string(r.eval_mode)},
          {"span_source", to_string(r.span_source)},
          {"denominators", r.denominators},
          {"recall_at_k", r.recall},
          {"recall_curves", curves},
          {"unique_correct", {{"exclusive", r.unique_exclusive}, {"total", r.unique_total}}},
          {"overlap", {{"methods", r.overlap_methods}, {"rows", overlap_rows(r)}}}};
}

std::string overlap_block(const CandidateReport& r) {
  std::string out;
  for (const auto& m : r.overlap_methods) out += fmt::format("{:<8}", m);
  out += fmt::format("{:>8} {:>11}\n", "count", "proportion");
  for (const auto& row : r.overlap) {
    for (bool b : row.pattern) out += fmt::format("{:<8}", b ? "Y" : "N");
    out += fmt::format("{:>8} {:>11.4f}\n", row.count, row.proportion);
  }
  return out;
}

std::string recall_block(const CandidateReport& r) {
  std::vector<std::string> groups;
  for (const auto& [g, n] : r.denominators) {
    if (g != "overall") groups.push_back(g);
  }
  groups.push_back("overall");
  std::string out = fmt::format("{:<8}", "method");
  for (const auto& g : groups) out += fmt::format("{:>10}", g);
  out += '\n';
  for (const auto& [name, rec] : r.recall) {
    out += fmt::format("{:<8}", name);
    for (const auto& g : groups) {
      auto it = rec.find(g);
      out += it == rec.end() ? fmt::format("{:>10}", "-") : fmt::format("{:>10.4f}", it->second);
    }
    out += '\n';
  }
  return out;
}

json prf_json(const Prf& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
          {"tp", p.tp},               {"fp", p.fp},         {"fn", p.fn}};
}

json disambig_body(const DisambigReport& r) {
  json splits = json::object();
  for (const auto& [g, p] : r.by_split) splits[g] = prf_json(p);
  return {{"candidate_method", r.candidate_method}, {"splits", splits}};
}

std::string disambig_block(const DisambigReport& r) {
  std::string out = fmt::format("{:<10}{:>10}{:>10}{:>10}{:>6}{:>6}{:>6}\n", "split", "precision",
                                "recall", "f1", "tp", "fp", "fn");
  for (const auto& [g, p] : r.by_split) {
    out += fmt::format("{:<10}{:>10.4f}{:>10.4f}{:>10.4f}{:>6}{:>6}{:>6}\n", g, p.precision,
                       p.recall, p.f1, p.tp, p.fp, p.fn);
  }
  return out;
}

}  // namespace

json report_json(const CandidateReport& report, const json& config) {
  json j = candidate_body(report);
  j["config"] = config;
  j["notes"] = kNotes;
  return j;
}

std::string report_text(const CandidateReport& r) {
  std::string out = fmt::format("Candidate recall at K={} ({}, {} spans)\n\n", r.k,
                                to_string(r.eval_mode), to_string(r.span_source));
  out += "Denominators (non-NIL gold instances):\n";
  for (const auto& [g, n] : r.denominators) out += fmt::format("  {:<10}{}\n", g, n);
  out += '\n' + recall_block(r);
  out += "\nRecall curves (overall):\n";
  for (const auto& [name, points] : r.curves) {
    out += fmt::format("  {:<8}", name);
    for (const auto& p : points) out += fmt::format(" @{}={:.4f}", p.k, p.recall);
    out += '\n';
  }
  out += "\nUnique correct (exclusive / total):\n";
  for (const auto& [g, counts] : r.unique_exclusive) {
    out += fmt::format("  {}:", g);
    for (const auto& [m, n] : counts) out += fmt::format(" {}={}/{}", m, n, r.unique_total.at(g).at(m));
    out += '\n';
  }
  out += "\nOverlap of correct candidates:\n" + overlap_block(r);
  out += "\nNotes:\n";
  for (const char* note : kNotes) out += fmt::format("  - {}\n", note);
  return out;
}

json overlap_json(const CandidateReport& report, const json& config) {
  return {{"config", config},
          {"denominators", report.denominators},
          {"methods", report.overlap_methods},
          {"rows", overlap_rows(report)}};
}

std::string overlap_text(const CandidateReport& report) {
  return fmt::format("Overlap of correct candidates at K={} over {} gold instances\n\n", report.k,
                     report.denominators.count("overall") ? report.denominators.at("overall") : 0) +
         overlap_block(report);
}

json disambig_json(const DisambigReport& report, const json& config) {
  json j = disambig_body(report);
  j["config"] = config;
  return j;
}

std::string disambig_text(const DisambigReport& report) {
  return fmt::format("Disambiguation over {} candidates\n\n", report.candidate_method) +
         disambig_block(report);
}

json ablation_json(const AblationReport& report, const json& config) {
  json cand = json::object();
  for (const auto& [mode, r] : report.candidates) cand[mode] = candidate_body(r);
  json dis = json::object();
  for (const auto& [method, modes] : report.disambiguation) {
    for (const auto& [mode, r] : modes) dis[method][mode] = disambig_body(r);
  }
  return {{"config", config}, {"candidate_generation", cand}, {"disambiguation", dis}};
}

std::string ablation_text(const AblationReport& report) {
  std::string out = "Entity description ablation\n\nCandidate recall:\n";
  for (const auto& [mode, r] : report.candidates) {
    out += fmt::format("[{} descriptions]\n", mode) + recall_block(r) + '\n';
  }
  out += fmt::format("Disambiguation (overall):\n{:<12}{:>10}{:>10}{:>10}\n", "Description",
                     "Recall", "Precision", "F1");
  for (const char* method : {"lookup", "dense"}) {
    auto m = report.disambiguation.find(method);
    if (m == report.disambiguation.end()) continue;
    out += fmt::format("{}\n", method[0] == 'l' ? "Lookup" : "Dense");
    for (const char* mode : {"short", "long"}) {
      auto r = m->second.find(mode);
      if (r == m->second.end()) continue;
      auto it = r->second.by_split.find("overall");
      if (it == r->second.by_split.end()) continue;
      out += fmt::format("  {:<10}{:>10.3f}{:>10.3f}{:>10.3f}\n", mode[0] == 's' ? "Short" : "Long",
                         it->second.recall, it->second.precision, it->second.f1);
    }
  }
  return out;
}

}  // namespace elcand
