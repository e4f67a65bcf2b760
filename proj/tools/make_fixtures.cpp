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
#include <string>

#include <CLI11.hpp>

#include "elcand/error.hpp"
#include "fixtures.hpp"

// Regenerates the bundled synthetic datasets under data/.
int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic fixture corpora"};
  std::string out = "data";
  app.add_option("--out", out, "Destination directory");
  CLI11_PARSE(app, argc, argv);

  namespace fx = elcand::fixtures;
  try {
    const std::filesystem::path root(out);
    fx::write_corpus(fx::general_corpus({}), root / "synthetic");
    fx::write_corpus(fx::disjoint_strengths_corpus(), root / "disjoint",
                     {{"retrieval", {{"eval_splits", {"academic", "ood"}}}}});
    fx::write_corpus(fx::shared_short_corpus(), root / "shared_short",
                     {{"retrieval", {{"methods", {"lookup", "dense"}}}}});
  } catch (const elcand::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
