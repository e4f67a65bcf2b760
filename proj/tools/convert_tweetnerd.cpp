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

#include "elcand/elcand.h"

int main(int argc, char** argv) {
  CLI::App app{"Convert TweetNERD annotations into an elcand dataset"};
  std::string annotations;
  std::string texts;
  std::string split;
  std::string out;
  app.add_option("--annotations", annotations, "TweetNERD annotation TSV")->required();
  app.add_option("--texts", texts, "tweet_id<TAB>text file")->required();
  app.add_option("--split", split, "academic, ood or train")->required();
  app.add_option("--out", out, "Output dataset JSONL")->required();
  CLI11_PARSE(app, argc, argv);

  const elc_status st =
      elc_convert_tweetnerd(annotations.c_str(), texts.c_str(), split.c_str(), out.c_str());
  if (st != ELC_OK) {
    std::fprintf(stderr, "error: %s\n", elc_last_error());
    return st == ELC_ERR_INVALID_ARGUMENT || st == ELC_ERR_VALIDATION ? 1 : 2;
  }
  return 0;
}
