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

#include "elcand/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "elcand/disambiguation.hpp"
#include "elcand/error.hpp"
#include "elcand/file_util.hpp"
#include "elcand/log.hpp"
#include "elcand/report.hpp"
#include "elcand/retrieval.hpp"

namespace elcand {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 8> kCommands = {{
    {Command::kIngest, "ingest"},
    {Command::kBuildIndex, "build-index"},
    {Command::kRetrieve, "retrieve"},
    {Command::kEvaluate, "evaluate"},
    {Command::kOverlapReport, "overlap-report"},
    {Command::kAblate, "ablate"},
    {Command::kDisambigTrain, "disambig-train"},
    {Command::kDisambigEval, "disambig-eval"},
}};

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "unknown";
}

Command parse_command(std::string_view s) {
  for (const auto& [c, name] : kCommands) {
    if (name == s) return c;
  }
  fail(ErrorCode::kValidation, "unknown command '" + std::string(s) +
                                   "' (expected ingest, build-index, retrieve, evaluate, "
                                   "overlap-report, ablate, disambig-train or disambig-eval)");
}

namespace {

bool needs_dataset(Command c) {
  return c != Command::kIngest && c != Command::kBuildIndex;
}

bool uses(const PipelineConfig& cfg, Method m) {
  return std::find(cfg.retrieval.methods.begin(), cfg.retrieval.methods.end(), m) !=
         cfg.retrieval.methods.end();
}

void require_path(const PipelineConfig& cfg, const std::string& value, const std::string& field,
                  bool required) {
  if (value.empty()) {
    if (required) fail(ErrorCode::kValidation, "config field '" + field + "': required by this command");
    return;
  }
  if (!std::filesystem::exists(cfg.resolve(value))) {
    fail(ErrorCode::kValidation, "config field '" + field + "': path " +
                                     cfg.resolve(value).string() + " does not exist");
  }
}

}  // namespace

void validate_config(const PipelineConfig& cfg, Command command) {
  require_path(cfg, cfg.paths.entities, "paths.entities", true);
  require_path(cfg, cfg.paths.denylist, "paths.denylist", false);
  require_path(cfg, cfg.paths.alias_counts, "paths.alias_counts", false);
  require_path(cfg, cfg.paths.dataset, "paths.dataset", needs_dataset(command));
  require_path(cfg, cfg.paths.vectors, "paths.vectors",
               cfg.embedder.kind == ProviderKind::kPrecomputed && command != Command::kIngest);
  if (command == Command::kDisambigEval) {
    const auto model = cfg.paths.model.empty()
                           ? cfg.resolve(cfg.paths.output_dir) / "model.txt"
                           : cfg.resolve(cfg.paths.model);
    if (!std::filesystem::exists(model)) {
      fail(ErrorCode::kValidation, "config field 'paths.model': model file " + model.string() +
                                       " does not exist (run disambig-train first)");
    }
  }
  if (command == Command::kAblate && !uses(cfg, Method::kDense)) {
    fail(ErrorCode::kValidation, "config field 'retrieval.methods': ablate needs the dense method");
  }

  const auto out = cfg.resolve(cfg.paths.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec || !std::filesystem::is_directory(out)) {
    fail(ErrorCode::kValidation, "config field 'paths.output_dir': cannot create " + out.string());
  }
  const auto probe = out / ".elcand-write-probe";
  {
    std::ofstream p(probe);
    if (!p) {
      fail(ErrorCode::kValidation, "config field 'paths.output_dir': " + out.string() + " is not writable");
    }
  }
  std::filesystem::remove(probe, ec);
}

namespace {

// Files written by the current run, removed again if the run fails.
class Outputs {
 public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path write(const std::string& name,
                              const std::function<void(std::ostream&)>& writer,
                              bool binary = false) {
    const auto path = dir_ / name;
    write_file_atomic(path, writer, binary);
    written_.push_back(path);
    return path;
  }

  std::filesystem::path write_text(const std::string& name, const std::string& body) {
    return write(name, [&](std::ostream& out) { out << body; });
  }

  std::filesystem::path write_json(const std::string& name, const json& body) {
    return write_text(name, body.dump(2) + "\n");
  }

  void remove_all() {
    std::error_code ec;
    for (const auto& p : written_) std::filesystem::remove(p, ec);
    written_.clear();
  }

  const std::vector<std::filesystem::path>& written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

struct SpanRef {
  const Tweet* tweet;
  const SpanAnnotation* span;
};

// Everything a command needs, built from the declared inputs only.
class Context {
 public:
  Context(const PipelineConfig& cfg, DescriptionMode mode) : cfg_(cfg), mode_(mode) {}

  const EntityStore& store() {
    if (!store_) {
      EntityStore loaded = load_entities_file(cfg_.resolve(cfg_.paths.entities));
      raw_count_ = loaded.size();
      if (!cfg_.paths.denylist.empty()) {
        loaded = apply_type_filter(loaded, load_denylist_file(cfg_.resolve(cfg_.paths.denylist)));
      }
      std::vector<Entity> entities(loaded.entities().begin(), loaded.entities().end());
      store_.emplace(std::move(entities), mode_);
      log().info("loaded {} entities ({} after type filter)", raw_count_, store_->size());
    }
    return *store_;
  }

  std::size_t raw_entity_count() {
    store();
    return raw_count_;
  }

  const AliasTable& alias_table() {
    if (!alias_) {
      std::vector<AliasCount> counts;
      if (!cfg_.paths.alias_counts.empty()) {
        counts = load_alias_counts(cfg_.resolve(cfg_.paths.alias_counts));
      }
      alias_.emplace(build_alias_table(store(), counts, cfg_.normalization));
      if (alias_->skipped_unknown() > 0) {
        log().warn("skipped {} alias count records for entities not in the store",
                   alias_->skipped_unknown());
      }
    }
    return *alias_;
  }

  const Bm25Index& bm25() {
    if (!bm25_) {
      bm25_.emplace(build_bm25_index(store(), cfg_.bm25.max_sentences, {cfg_.bm25.k1, cfg_.bm25.b}));
    }
    return *bm25_;
  }

  const EmbeddingProvider& provider() {
    if (!provider_) {
      if (cfg_.embedder.kind == ProviderKind::kReferenceHash) {
        provider_ = std::make_unique<ReferenceHashEmbedder>(cfg_.embedder.dim);
      } else {
        provider_ = std::make_unique<PrecomputedEmbedder>(load_vectors(cfg_.resolve(cfg_.paths.vectors)));
      }
    }
    return *provider_;
  }

  const DenseIndex& dense() {
    if (!dense_) {
      const EmbeddingProvider& p = provider();
      VectorTable table(p.dim());
      for (const Entity& e : store().entities()) {
        table.add(e.id, embed_entity(p, e, mode_, cfg_.embedder.max_sentences).values);
      }
      ApproximateOptions opts;
      opts.nlist = cfg_.dense.nlist;
      opts.nprobe = cfg_.dense.nprobe;
      opts.recall_floor = cfg_.dense.recall_floor;
      opts.seed = cfg_.seed;
      dense_.emplace(DenseIndex::build(table, cfg_.dense.mode, opts));
    }
    return *dense_;
  }

  const Dataset& dataset() {
    if (!dataset_) dataset_.emplace(load_dataset(cfg_.resolve(cfg_.paths.dataset)));
    return *dataset_;
  }

  Backends backends() {
    Backends b;
    b.store = &store();
    if (uses(cfg_, Method::kLookup)) b.alias_table = &alias_table();
    if (uses(cfg_, Method::kBm25)) b.bm25_index = &bm25();
    if (uses(cfg_, Method::kDense)) {
      b.dense_index = &dense();
      b.mention_provider = &provider();
    }
    return b;
  }

  FeatureBackends feature_backends() {
    FeatureBackends f;
    f.store = &store();
    f.alias_table = &alias_table();
    f.provider = &provider();
    f.description_mode = mode_;
    f.max_sentences = cfg_.embedder.max_sentences;
    return f;
  }

  /// Spans of the configured source in the given splits, in dataset order.
  std::vector<SpanRef> spans(std::span<const Split> splits) {
    std::vector<SpanRef> out;
    for (const auto& t : dataset().tweets) {
      if (std::find(splits.begin(), splits.end(), t.split) == splits.end()) continue;
      for (const auto& s : t.spans) {
        if (s.source == cfg_.retrieval.span_source) out.push_back({&t, &s});
      }
    }
    return out;
  }

  DescriptionMode mode() const { return mode_; }

 private:
  const PipelineConfig& cfg_;
  DescriptionMode mode_;
  std::optional<EntityStore> store_;
  std::size_t raw_count_ = 0;
  std::optional<AliasTable> alias_;
  std::optional<Bm25Index> bm25_;
  std::unique_ptr<EmbeddingProvider> provider_;
  std::optional<DenseIndex> dense_;
  std::optional<Dataset> dataset_;
};

// Candidate sets per enabled method, aligned with the span list.
struct MethodSets {
  std::vector<Method> methods;
  std::map<Method, std::vector<CandidateSet>> sets;
};

MethodSets retrieve_all(Context& ctx, const PipelineConfig& cfg, const std::vector<SpanRef>& spans,
                        std::size_t k) {
  MethodSets out;
  const Backends backends = ctx.backends();
  for (Method m : {Method::kLookup, Method::kDense, Method::kBm25}) {
    if (!uses(cfg, m)) continue;
    out.methods.push_back(m);
    auto& list = out.sets[m];
    list.reserve(spans.size());
    for (const auto& ref : spans) list.push_back(retrieve(m, ref.tweet->text, *ref.span, backends, k));
  }
  return out;
}

std::vector<Method> hybrid_members(const PipelineConfig& cfg) {
  std::vector<Method> members;
  for (Method m : {Method::kLookup, Method::kDense}) {
    if (uses(cfg, m)) members.push_back(m);
  }
  if (cfg.retrieval.hybrid_include_bm25 && uses(cfg, Method::kBm25)) members.push_back(Method::kBm25);
  return members;
}

bool hybrid_available(const PipelineConfig& cfg) {
  return uses(cfg, Method::kLookup) && uses(cfg, Method::kDense);
}

std::vector<CandidateSet> union_of(const MethodSets& ms, const std::vector<Method>& members,
                                   std::size_t n) {
  std::vector<CandidateSet> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CandidateSet acc = ms.sets.at(members.front())[i];
    for (std::size_t j = 1; j < members.size(); ++j) acc = hybrid_union(acc, ms.sets.at(members[j])[i]);
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<CandidateSet> sets_for(const MethodSets& ms, const PipelineConfig& cfg,
                                   const std::string& which, std::size_t n) {
  if (which == "hybrid") {
    auto members = hybrid_members(cfg);
    if (members.empty()) members = ms.methods;
    return union_of(ms, members, n);
  }
  const Method m = parse_method(which);
  if (!ms.sets.count(m)) {
    fail(ErrorCode::kValidation, "config field 'disambiguation.candidate_method': method " + which +
                                     " is not enabled in retrieval.methods");
  }
  return ms.sets.at(m);
}

// Span-level rows of an evaluation: one named system per column.
struct Systems {
  std::vector<std::string> names;
  std::vector<std::vector<CandidateSet>> sets;
};

Systems systems_for_eval(const MethodSets& ms, const PipelineConfig& cfg, std::size_t n) {
  Systems s;
  for (Method m : {Method::kDense, Method::kLookup, Method::kBm25}) {
    if (!ms.sets.count(m)) continue;
    s.names.emplace_back(to_string(m));
    s.sets.push_back(ms.sets.at(m));
  }
  if (hybrid_available(cfg)) {
    s.names.emplace_back("hybrid");
    s.sets.push_back(union_of(ms, hybrid_members(cfg), n));
  }
  return s;
}

std::size_t eval_depth(const PipelineConfig& cfg) {
  std::size_t k = cfg.retrieval.k;
  if (!cfg.retrieval.curve_ks.empty()) k = std::max(k, cfg.retrieval.curve_ks.back());
  return k;
}

void candidate_eval(Context& ctx, const PipelineConfig& cfg, CandidateReport& report) {
  const auto spans = ctx.spans(cfg.retrieval.eval_splits);
  const auto ms = retrieve_all(ctx, cfg, spans, eval_depth(cfg));
  const Systems systems = systems_for_eval(ms, cfg, spans.size());
  const auto instances = gold_instances(ctx.dataset(), cfg.retrieval.eval_mode, cfg.retrieval.eval_splits);
  if (instances.empty()) {
    fail(ErrorCode::kRuntime, "no non-NIL gold instances in the evaluation splits");
  }
  report.k = cfg.retrieval.k;
  report.eval_mode = cfg.retrieval.eval_mode;
  report.span_source = cfg.retrieval.span_source;
  report.denominators = {};
  for (const auto& inst : instances) ++report.denominators[std::string(to_string(inst.split))];
  std::size_t pooled = 0;
  for (const auto& inst : instances) pooled += inst.split != Split::kTrain;
  report.denominators["overall"] = pooled > 0 ? pooled : instances.size();

  MethodHits component_hits;
  for (std::size_t s = 0; s < systems.names.size(); ++s) {
    const auto hits = hit_flags(systems.sets[s], instances, cfg.retrieval.k, cfg.retrieval.eval_mode);
    report.recall[systems.names[s]] = recall_from_hits(instances, hits);
    report.curves[systems.names[s]] =
        recall_curve(systems.sets[s], instances, cfg.retrieval.curve_ks, cfg.retrieval.eval_mode);
    if (systems.names[s] != "hybrid") component_hits.emplace_back(systems.names[s], hits);
  }
  // Overlap columns follow the lookup, dense, bm25 order.
  MethodHits ordered;
  for (const char* name : {"lookup", "dense", "bm25"}) {
    for (const auto& h : component_hits) {
      if (h.first == name) ordered.push_back(h);
    }
  }
  report.overlap_methods.clear();
  for (const auto& h : ordered) report.overlap_methods.push_back(h.first);
  report.overlap = overlap_table(ordered);

  // Unique-correct counts per split plus overall.
  std::vector<std::string> groups;
  for (Split sp : cfg.retrieval.eval_splits) groups.emplace_back(to_string(sp));
  groups.emplace_back("overall");
  for (const auto& group : groups) {
    const bool pooled_group = group == "overall" && pooled > 0;
    MethodHits sub;
    for (const auto& [name, flags] : component_hits) {
      std::vector<bool> f;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        const bool in_group = group == "overall"
                                  ? (!pooled_group || instances[i].split != Split::kTrain)
                                  : to_string(instances[i].split) == group;
        if (in_group) f.push_back(flags[i]);
      }
      sub.emplace_back(name, std::move(f));
    }
    report.unique_exclusive[group] = unique_correct(sub, UniqueDefinition::kExclusive);
    report.unique_total[group] = unique_correct(sub, UniqueDefinition::kTotal);
  }
}

std::optional<std::string> pick_gold(const SpanAnnotation& span, const CandidateSet& set) {
  if (span.gold_ids.empty()) return std::nullopt;
  for (const auto& g : span.gold_ids) {
    if (set.find(g) != nullptr) return g;
  }
  return span.gold_ids.front();
}

LabeledSpan label(Context& ctx, const SpanRef& ref, const CandidateSet& set) {
  const FeatureBackends fb = ctx.feature_backends();
  const Vector mention = embed_mention(*fb.provider, ref.tweet->text, *ref.span);
  LabeledSpan ls;
  ls.gold = pick_gold(*ref.span, set);
  for (const auto& c : set.candidates) {
    std::optional<std::size_t> rank;
    if (auto it = c.ranks.find(Method::kDense); it != c.ranks.end()) rank = it->second;
    ls.candidate_ids.push_back(c.entity_id);
    ls.features.push_back(extract_features(&mention, *ref.span, c.entity_id, rank, fb));
  }
  return ls;
}

TrainResult train_on(Context& ctx, const PipelineConfig& cfg, const std::string& method) {
  const std::array<Split, 1> train_split = {Split::kTrain};
  const auto spans = ctx.spans(train_split);
  const auto ms = retrieve_all(ctx, cfg, spans, cfg.retrieval.k);
  const auto sets = sets_for(ms, cfg, method, spans.size());
  std::vector<LabeledSpan> labeled;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (sets[i].candidates.empty()) continue;
    labeled.push_back(label(ctx, spans[i], sets[i]));
  }
  if (labeled.empty()) {
    fail(ErrorCode::kRuntime, "no training spans with candidates in the train split");
  }
  TrainOptions opts;
  opts.learning_rate = cfg.disambiguation.learning_rate;
  opts.epochs = cfg.disambiguation.epochs;
  opts.holdout_fraction = cfg.disambiguation.holdout_fraction;
  opts.seed = cfg.seed;
  TrainResult result = train_ranker(labeled, opts);
  if (result.degenerate) log().warn("disambiguation training: {}", result.diagnostic);
  return result;
}

DisambigReport evaluate_model(Context& ctx, const PipelineConfig& cfg, const RankerModel& model,
                              const std::string& method) {
  const auto spans = ctx.spans(cfg.retrieval.eval_splits);
  const auto ms = retrieve_all(ctx, cfg, spans, cfg.retrieval.k);
  const auto sets = sets_for(ms, cfg, method, spans.size());
  const FeatureBackends fb = ctx.feature_backends();
  std::map<std::string, std::map<SpanKey, std::optional<std::string>>> predicted;
  std::map<std::string, std::map<SpanKey, std::vector<std::string>>> gold;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string split(to_string(spans[i].tweet->split));
    const SpanKey key = key_of(*spans[i].span);
    const auto pred = disambiguate(model, spans[i].tweet->text, sets[i], fb);
    for (const std::string& group : {split, std::string("overall")}) {
      predicted[group][key] = pred;
      gold[group][key] = spans[i].span->gold_ids;
    }
  }
  DisambigReport report;
  report.candidate_method = method;
  for (const auto& [group, g] : gold) report.by_split[group] = f1_score(predicted[group], g);
  return report;
}

std::filesystem::path model_path(const PipelineConfig& cfg) {
  return cfg.paths.model.empty() ? cfg.resolve(cfg.paths.output_dir) / "model.txt"
                                 : cfg.resolve(cfg.paths.model);
}

void run_command(const PipelineConfig& cfg, Command command, Outputs& out) {
  Context ctx(cfg, cfg.description_mode);
  const json echo = cfg.to_json();
  switch (command) {
    case Command::kIngest: {
      const EntityStore& store = ctx.store();
      out.write("entities.filtered.jsonl", [&](std::ostream& os) { write_entities(os, store); });
      out.write_json("ingest_summary.json", {{"config", echo},
                                             {"input_entities", ctx.raw_entity_count()},
                                             {"kept_entities", store.size()},
                                             {"dropped_entities", ctx.raw_entity_count() - store.size()}});
      break;
    }
    case Command::kBuildIndex: {
      json summary = {{"config", echo}, {"entities", ctx.store().size()}};
      if (uses(cfg, Method::kDense)) {
        const DenseIndex& index = ctx.dense();
        out.write("dense.index", [&](std::ostream& os) { index.write(os); }, true);
        summary["dense"] = {{"mode", to_string(index.mode())},
                            {"dim", index.dim()},
                            {"vectors", index.size()},
                            {"cells", index.mode() == IndexMode::kExact ? 0 : index.cell_count()},
                            {"measured_recall_at_16", index.measured_recall()}};
      }
      if (uses(cfg, Method::kLookup)) {
        const AliasTable& table = ctx.alias_table();
        out.write("alias_table.tsv", [&](std::ostream& os) { table.write_tsv(os); });
        summary["lookup"] = {{"surfaces", table.surface_count()},
                             {"skipped_unknown_records", table.skipped_unknown()}};
      }
      if (uses(cfg, Method::kBm25)) {
        const Bm25Index& bm25 = ctx.bm25();
        summary["bm25"] = {{"documents", bm25.doc_count()},
                           {"terms", bm25.term_count()},
                           {"avg_doc_length", bm25.avg_doc_length()}};
      }
      out.write_json("index_summary.json", summary);
      break;
    }
    case Command::kRetrieve: {
      std::vector<Split> all = {Split::kTrain, Split::kAcademic, Split::kOod};
      const auto spans = ctx.spans(all);
      const auto ms = retrieve_all(ctx, cfg, spans, cfg.retrieval.k);
      const auto merged = union_of(ms, ms.methods, spans.size());
      out.write("candidates.jsonl", [&](std::ostream& os) { write_candidates_jsonl(os, merged); });
      break;
    }
    case Command::kEvaluate:
    case Command::kOverlapReport: {
      CandidateReport report;
      candidate_eval(ctx, cfg, report);
      if (command == Command::kEvaluate) {
        out.write_json("report.json", report_json(report, echo));
        out.write_text("report.txt", report_text(report));
      } else {
        out.write_json("overlap.json", overlap_json(report, echo));
        out.write_text("overlap.txt", overlap_text(report));
      }
      break;
    }
    case Command::kAblate: {
      AblationReport ablation;
      for (DescriptionMode mode : {DescriptionMode::kShort, DescriptionMode::kLong}) {
        Context mctx(cfg, mode);
        CandidateReport cand;
        candidate_eval(mctx, cfg, cand);
        ablation.candidates[std::string(to_string(mode))] = cand;
        for (const char* method : {"lookup", "dense"}) {
          if (!uses(cfg, parse_method(method))) continue;
          const TrainResult trained = train_on(mctx, cfg, method);
          ablation.disambiguation[method][std::string(to_string(mode))] =
              evaluate_model(mctx, cfg, trained.model, method);
        }
      }
      out.write_json("ablation.json", ablation_json(ablation, echo));
      out.write_text("ablation.txt", ablation_text(ablation));
      break;
    }
    case Command::kDisambigTrain: {
      const TrainResult result = train_on(ctx, cfg, cfg.disambiguation.candidate_method);
      out.write("model.txt", [&](std::ostream& os) { result.model.write(os); });
      out.write_json("train_summary.json",
                     {{"config", echo},
                      {"train_spans", result.train_spans},
                      {"holdout_spans", result.holdout_spans},
                      {"holdout_f1", result.holdout_f1},
                      {"initial_loss", result.loss_history.front()},
                      {"final_loss", result.loss_history.back()},
                      {"degenerate", result.degenerate},
                      {"diagnostic", result.diagnostic}});
      break;
    }
    case Command::kDisambigEval: {
      const RankerModel model = RankerModel::load(model_path(cfg));
      const DisambigReport report =
          evaluate_model(ctx, cfg, model, cfg.disambiguation.candidate_method);
      out.write_json("disambiguation.json", disambig_json(report, echo));
      out.write_text("disambiguation.txt", disambig_text(report));
      break;
    }
  }
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& config, Command command) {
  RunResult result;
  Outputs out(config.resolve(config.paths.output_dir));
  try {
    validate_config(config, command);
    run_command(config, command, out);
    result.outputs = out.written();
    result.message = std::string(to_string(command)) + ": wrote " +
                     std::to_string(result.outputs.size()) + " file(s)";
    log().info("{}", result.message);
  } catch (const Error& e) {
    out.remove_all();
    result.exit_code = e.code() == ErrorCode::kValidation ? kExitValidation : kExitRuntime;
    result.message = e.what();
  } catch (const std::exception& e) {
    out.remove_all();
    result.exit_code = kExitRuntime;
    result.message = e.what();
  }
  if (result.exit_code != kExitOk) log().error("{}", result.message);
  return result;
}

RunResult run_pipeline(const std::filesystem::path& config_path, std::string_view command,
                       const std::vector<std::string>& overrides) {
  try {
    const Command c = parse_command(command);
    const PipelineConfig cfg = load_config(config_path, overrides);
    return run_pipeline(cfg, c);
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = e.code() == ErrorCode::kValidation ? kExitValidation : kExitRuntime;
    r.message = e.what();
    log().error("{}", r.message);
    return r;
  }
}

}  // namespace elcand
