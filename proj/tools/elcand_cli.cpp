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

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elcand/elcand.h"

int main(int argc, char** argv) {
  CLI::App app{"Hybrid entity-linking candidate generation"};
  std::string config;
  std::string command;
  std::vector<std::string> overrides;
  app.add_option("--config", config, "Pipeline config file (JSON)")->required();
  app.add_option("--command", command,
                 "ingest, build-index, retrieve, evaluate, overlap-report, ablate, "
                 "disambig-train or disambig-eval")
      ->required();
  app.add_option("--override", overrides, "Dot-path override, e.g. retrieval.k=32")
      ->take_all()
      ->allow_extra_args(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::vector<const char*> raw;
  raw.reserve(overrides.size());
  for (const auto& o : overrides) raw.push_back(o.c_str());
  const int rc = elc_run_pipeline(config.c_str(), command.c_str(), raw.data(), raw.size());
  if (rc == 0) {
    std::printf("%s\n", elc_last_run_message());
  } else {
    std::fprintf(stderr, "error: %s\n", elc_last_run_message());
  }
  return rc;
}
