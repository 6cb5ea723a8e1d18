// Copyright 2026 The Argsup Authors.
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

#include "argsup/harness.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string_view>
#include <thread>

#include <spdlog/spdlog.h>

#include "argsup/error.h"

namespace argsup {
namespace {

using nlohmann::json;

constexpr std::string_view kPipelineFormat = "argsup-pipeline/1";

void CheckKeys(const json& j, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  if (!j.is_object()) throw InvalidArgument(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void ReadKey(const json& j, const char* key, T& out, std::string_view where) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string(where) + "." + key + ": wrong value type");
  }
}

std::string Percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * value);
  return buf;
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

// Fisher-Yates with plain modulo draws: unlike std::shuffle the permutation
// is fixed by the seed on every standard library.
template <typename T>
void SeededShuffle(std::vector<T>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

std::vector<std::vector<ScoredCandidate>> RankAll(const std::vector<RankGroup>& groups,
                                                  const Ensemble& model) {
  std::vector<std::vector<ScoredCandidate>> out;
  out.reserve(groups.size());
  for (const RankGroup& g : groups) out.push_back(ScoreGroup(model, g));
  return out;
}

std::vector<std::vector<ScoredCandidate>> RankAllBySimilarity(const Corpus& corpus,
                                                              SimilarityMetric metric,
                                                              const IdfTable& idf,
                                                              const EmbeddingTable* embeddings) {
  std::vector<std::vector<ScoredCandidate>> out;
  out.reserve(corpus.groups.size());
  for (const QueryGroup& g : corpus.groups) out.push_back(RankBySimilarity(g, metric, idf, embeddings));
  return out;
}

// Sub-corpus holding only the listed (group, sentence) positions.
Corpus SelectSentences(const Corpus& corpus,
                       const std::vector<std::pair<std::size_t, std::size_t>>& picks) {
  std::map<std::size_t, std::vector<std::size_t>> by_group;
  for (const auto& [g, s] : picks) by_group[g].push_back(s);
  Corpus out;
  for (auto& [g, positions] : by_group) {
    std::sort(positions.begin(), positions.end());
    QueryGroup group;
    group.claim = corpus.groups[g].claim;
    group.article_id = corpus.groups[g].article_id;
    for (std::size_t s : positions) {
      AnnotatedSentence sentence = corpus.groups[g].sentences[s];
      sentence.index = group.sentences.size();
      group.sentences.push_back(std::move(sentence));
    }
    out.groups.push_back(std::move(group));
  }
  return out;
}

FeatureVector KeepPrefix(const FeatureVector& x, std::string_view prefix) {
  FeatureVector out;
  for (const auto& [name, value] : x) {
    if (name.compare(0, prefix.size(), prefix) == 0) out.Set(name, value);
  }
  return out;
}

struct FoldOutcome {
  std::vector<RankingResult> results;  // one per system
};

}  // namespace

json ToJson(const FeatureConfig& c) {
  const FeatureFamilies& f = c.families;
  return {{"families",
           {{"basic", f.basic},
            {"sentiment", f.sentiment},
            {"discourse", f.discourse},
            {"style", f.style},
            {"position", f.position},
            {"ngrams", f.ngrams},
            {"similarity", f.similarity}}},
          {"ngram_vocab_size", c.ngram_vocab_size},
          {"ngram_min_df", c.ngram_min_df},
          {"bleu_max_order", c.bleu_max_order},
          {"bleu_smoothing", c.bleu_smoothing},
          {"rouge_f_measure", c.rouge_f_measure},
          {"length_normalize", c.length_normalize}};
}

FeatureConfig FeatureConfigFromJson(const json& j, FeatureConfig c) {
  constexpr std::string_view kWhere = "features";
  CheckKeys(j,
            {"families", "ngram_vocab_size", "ngram_min_df", "bleu_max_order", "bleu_smoothing",
             "rouge_f_measure", "length_normalize"},
            kWhere);
  if (const auto it = j.find("families"); it != j.end()) {
    constexpr std::string_view kFamilies = "features.families";
    CheckKeys(*it, {"basic", "sentiment", "discourse", "style", "position", "ngrams", "similarity"},
              kFamilies);
    ReadKey(*it, "basic", c.families.basic, kFamilies);
    ReadKey(*it, "sentiment", c.families.sentiment, kFamilies);
    ReadKey(*it, "discourse", c.families.discourse, kFamilies);
    ReadKey(*it, "style", c.families.style, kFamilies);
    ReadKey(*it, "position", c.families.position, kFamilies);
    ReadKey(*it, "ngrams", c.families.ngrams, kFamilies);
    ReadKey(*it, "similarity", c.families.similarity, kFamilies);
  }
  ReadKey(j, "ngram_vocab_size", c.ngram_vocab_size, kWhere);
  ReadKey(j, "ngram_min_df", c.ngram_min_df, kWhere);
  ReadKey(j, "bleu_max_order", c.bleu_max_order, kWhere);
  ReadKey(j, "bleu_smoothing", c.bleu_smoothing, kWhere);
  ReadKey(j, "rouge_f_measure", c.rouge_f_measure, kWhere);
  ReadKey(j, "length_normalize", c.length_normalize, kWhere);
  c.Validate();
  return c;
}

json ToJson(const TrainConfig& c) {
  return {{"l2", c.l2},
          {"learning_rate", c.learning_rate},
          {"max_epochs", c.max_epochs},
          {"tolerance", c.tolerance},
          {"standardize", c.standardize},
          {"seed", c.seed}};
}

TrainConfig TrainConfigFromJson(const json& j, TrainConfig c) {
  constexpr std::string_view kWhere = "typeclf";
  CheckKeys(j, {"l2", "learning_rate", "max_epochs", "tolerance", "standardize", "seed"}, kWhere);
  ReadKey(j, "l2", c.l2, kWhere);
  ReadKey(j, "learning_rate", c.learning_rate, kWhere);
  ReadKey(j, "max_epochs", c.max_epochs, kWhere);
  ReadKey(j, "tolerance", c.tolerance, kWhere);
  ReadKey(j, "standardize", c.standardize, kWhere);
  ReadKey(j, "seed", c.seed, kWhere);
  c.Validate();
  return c;
}

json ToJson(const RankerConfig& c) {
  return {{"num_trees", c.num_trees},
          {"shrinkage", c.shrinkage},
          {"max_leaves", c.max_leaves},
          {"min_leaf_instances", c.min_leaf_instances ? json(*c.min_leaf_instances) : json("auto")},
          {"sigma", c.sigma},
          {"seed", c.seed},
          {"row_subsample", c.row_subsample},
          {"feature_subsample", c.feature_subsample}};
}

RankerConfig RankerConfigFromJson(const json& j, RankerConfig c) {
  constexpr std::string_view kWhere = "ranker";
  CheckKeys(j,
            {"num_trees", "shrinkage", "max_leaves", "min_leaf_instances", "sigma", "seed",
             "row_subsample", "feature_subsample"},
            kWhere);
  ReadKey(j, "num_trees", c.num_trees, kWhere);
  ReadKey(j, "shrinkage", c.shrinkage, kWhere);
  ReadKey(j, "max_leaves", c.max_leaves, kWhere);
  if (const auto it = j.find("min_leaf_instances"); it != j.end()) {
    if (it->is_string() && it->get<std::string>() == "auto") {
      c.min_leaf_instances.reset();
    } else if (it->is_number_integer()) {
      c.min_leaf_instances = it->get<int>();
    } else {
      throw InvalidArgument("ranker.min_leaf_instances: expected an integer or \"auto\"");
    }
  }
  ReadKey(j, "sigma", c.sigma, kWhere);
  ReadKey(j, "seed", c.seed, kWhere);
  ReadKey(j, "row_subsample", c.row_subsample, kWhere);
  ReadKey(j, "feature_subsample", c.feature_subsample, kWhere);
  c.Validate();
  return c;
}

json ToJson(const ExperimentConfig& c) {
  return {{"features", ToJson(c.features)},
          {"typeclf", ToJson(c.typeclf)},
          {"ranker", ToJson(c.ranker)},
          {"policy", std::string(ToString(c.policy))},
          {"folds", c.folds},
          {"seed", c.seed},
          {"ndcg_at", c.ndcg_at ? json(*c.ndcg_at) : json(nullptr)},
          {"jobs", c.jobs}};
}

ExperimentConfig ExperimentConfigFromJson(const json& j, ExperimentConfig c) {
  constexpr std::string_view kWhere = "experiment";
  CheckKeys(j, {"features", "typeclf", "ranker", "policy", "folds", "seed", "ndcg_at", "jobs"},
            kWhere);
  if (const auto it = j.find("features"); it != j.end()) {
    c.features = FeatureConfigFromJson(*it, c.features);
  }
  if (const auto it = j.find("typeclf"); it != j.end()) {
    c.typeclf = TrainConfigFromJson(*it, c.typeclf);
  }
  if (const auto it = j.find("ranker"); it != j.end()) {
    c.ranker = RankerConfigFromJson(*it, c.ranker);
  }
  if (const auto it = j.find("policy"); it != j.end()) {
    if (!it->is_string()) throw InvalidArgument("experiment.policy: expected a string");
    c.policy = ParseTypePolicy(it->get<std::string>());
  }
  ReadKey(j, "folds", c.folds, kWhere);
  ReadKey(j, "seed", c.seed, kWhere);
  if (const auto it = j.find("ndcg_at"); it != j.end()) {
    if (it->is_null()) {
      c.ndcg_at.reset();
    } else if (it->is_number_unsigned() && it->get<std::size_t>() > 0) {
      c.ndcg_at = it->get<std::size_t>();
    } else {
      throw InvalidArgument("experiment.ndcg_at: expected a positive integer or null");
    }
  }
  ReadKey(j, "jobs", c.jobs, kWhere);
  if (c.folds < 2) throw InvalidArgument("folds must be >= 2");
  if (c.jobs < 1) throw InvalidArgument("jobs must be >= 1");
  return c;
}

std::vector<TypeInstance> CollectTypedInstances(const Corpus& corpus,
                                                const FeatureContext& context) {
  std::vector<TypeInstance> out;
  for (const QueryGroup& group : corpus.groups) {
    for (std::size_t i = 0; i < group.sentences.size(); ++i) {
      const AnnotatedSentence& s = group.sentences[i];
      if (s.relevance != 1 || !s.gold_type) continue;
      out.push_back({ExtractTypeFeatures(group, i, context), *s.gold_type});
    }
  }
  return out;
}

TrainedContext TrainContext(const Corpus& train, const ResourceBundle& bundle,
                            const ExperimentConfig& config) {
  TrainedContext context;
  context.vocab = BuildNgramVocabulary(train, config.features.ngram_vocab_size,
                                       config.features.ngram_min_df);
  context.idf = BuildIdfTable(train);
  const std::vector<TypeInstance> typed =
      CollectTypedInstances(train, context.View(bundle, config.features));
  std::set<ArgumentType> distinct;
  for (const TypeInstance& t : typed) distinct.insert(t.type);
  if (distinct.size() >= 2) {
    context.type_model = TrainTypeClassifier(typed, config.typeclf);
  } else {
    spdlog::warn("training part holds {} gold type(s); no type classifier trained",
                 distinct.size());
  }
  return context;
}

Corpus AnnotateTypes(const Corpus& corpus, const TrainedContext& context,
                     const ResourceBundle& bundle, const ExperimentConfig& config) {
  if (!context.type_model) {
    throw InvalidArgument("type annotation needs a type classifier (at least two gold types)");
  }
  const FeatureContext view = context.View(bundle, config.features);
  return AnnotateCorpusTypes(
      corpus, *context.type_model,
      [&view](const QueryGroup& g, std::size_t i) { return ExtractTypeFeatures(g, i, view); },
      config.policy);
}

std::vector<std::vector<InstanceParts>> ExtractCorpusParts(const Corpus& corpus,
                                                           const FeatureContext& context) {
  std::vector<std::vector<InstanceParts>> out(corpus.groups.size());
  for (std::size_t g = 0; g < corpus.groups.size(); ++g) {
    const QueryGroup& group = corpus.groups[g];
    out[g].reserve(group.sentences.size());
    for (std::size_t i = 0; i < group.sentences.size(); ++i) {
      out[g].push_back(ExtractInstanceParts(group, i, context));
    }
  }
  return out;
}

std::vector<RankGroup> BuildRankGroups(const Corpus& corpus,
                                       const std::vector<std::vector<InstanceParts>>& parts,
                                       FeatureSet set) {
  std::vector<RankGroup> out;
  out.reserve(corpus.groups.size());
  for (std::size_t g = 0; g < corpus.groups.size(); ++g) {
    const QueryGroup& group = corpus.groups[g];
    RankGroup rg;
    rg.qid = group.claim.claim_id + "/" + group.article_id;
    for (std::size_t i = 0; i < group.sentences.size(); ++i) {
      const AnnotatedSentence& s = group.sentences[i];
      rg.indices.push_back(i);
      rg.features.push_back(AssembleFromParts(parts[g][i], s.predicted_type, set));
      rg.labels.push_back(s.relevance);
    }
    out.push_back(std::move(rg));
  }
  return out;
}

void RankingResult::Finalize() {
  mrr = 0.0;
  ndcg = 0.0;
  if (queries.empty()) return;
  for (const QueryOutcome& q : queries) {
    mrr += q.reciprocal_rank;
    ndcg += q.ndcg;
  }
  mrr /= static_cast<double>(queries.size());
  ndcg /= static_cast<double>(queries.size());
}

void AccumulateQueries(const Corpus& corpus, const std::vector<std::vector<ScoredCandidate>>& ranked,
                       int fold, std::optional<std::size_t> ndcg_at, RankingResult& result) {
  if (ranked.size() != corpus.groups.size()) {
    throw InvalidArgument("ranked list count does not match the group count");
  }
  for (std::size_t g = 0; g < corpus.groups.size(); ++g) {
    const QueryGroup& group = corpus.groups[g];
    if (group.NumRelevant() == 0) {
      ++result.excluded;
      continue;
    }
    QueryOutcome q;
    q.claim_id = group.claim.claim_id;
    q.article_id = group.article_id;
    q.fold = fold;
    for (const ScoredCandidate& c : ranked[g]) q.ranked.push_back(group.sentences[c.index].relevance);
    q.reciprocal_rank = ReciprocalRank(q.ranked);
    q.ndcg = Ndcg(q.ranked, ndcg_at);
    result.queries.push_back(std::move(q));
  }
  result.Finalize();
}

const RankingResult& CrossValidationReport::Aggregate(const std::string& system) const {
  for (const RankingResult& r : aggregate) {
    if (r.system == system) return r;
  }
  throw InvalidArgument("no cross-validation result for '" + system + "'");
}

std::string CrossValidationReport::FormatTable() const {
  std::size_t width = std::string("system").size();
  for (const std::string& s : systems) width = std::max(width, s.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "system" << std::right << std::setw(8)
      << "MRR" << std::setw(8) << "NDCG" << std::setw(9) << "claims" << std::setw(10) << "excluded"
      << '\n';
  for (const RankingResult& r : aggregate) {
    out << std::left << std::setw(static_cast<int>(width)) << r.system << std::right
        << std::setw(8) << Percent(r.mrr) << std::setw(8) << Percent(r.ndcg) << std::setw(9)
        << r.queries.size() << std::setw(10) << r.excluded << '\n';
  }
  return out.str();
}

std::string CrossValidationReport::FormatRecords() const {
  std::ostringstream out;
  out << "system\tfold\tclaims\texcluded\tmrr\tndcg\n";
  const auto row = [&out](const RankingResult& r, const std::string& fold) {
    out << r.system << '\t' << fold << '\t' << r.queries.size() << '\t' << r.excluded << '\t'
        << Fixed(r.mrr, 6) << '\t' << Fixed(r.ndcg, 6) << '\n';
  };
  for (std::size_t s = 0; s < aggregate.size(); ++s) {
    for (std::size_t f = 0; f < per_fold.size(); ++f) row(per_fold[f][s], std::to_string(f));
    row(aggregate[s], "all");
  }
  return out.str();
}

CrossValidationReport CrossValidate(const Corpus& corpus, const ResourceBundle& bundle,
                                    const std::vector<FeatureSet>& feature_sets,
                                    const ExperimentConfig& config) {
  config.features.Validate();
  config.typeclf.Validate();
  config.ranker.Validate();
  if (config.jobs < 1) throw InvalidArgument("jobs must be >= 1");
  const bool needs_types =
      std::any_of(feature_sets.begin(), feature_sets.end(), [](FeatureSet s) { return UsesComposites(s); });
  const bool with_w2v = bundle.embeddings.has_value();
  if (!with_w2v) spdlog::warn("no embeddings loaded; the w2v baseline is skipped");

  CrossValidationReport report;
  for (FeatureSet s : feature_sets) report.systems.emplace_back(ToString(s));
  report.systems.emplace_back("baseline:tfidf");
  if (with_w2v) report.systems.emplace_back("baseline:w2v");

  const std::vector<Fold> folds = SplitFolds(corpus, config.folds, config.seed);
  std::vector<FoldOutcome> outcomes(folds.size());
  std::vector<std::exception_ptr> errors(folds.size());

  const auto run_fold = [&](std::size_t f) {
    const Fold& fold = folds[f];
    const int fold_id = static_cast<int>(f);
    const TrainedContext context = TrainContext(fold.train, bundle, config);
    if (needs_types && !context.type_model) {
      throw InvalidArgument("fold " + std::to_string(f) +
                            ": composite feature sets need a type classifier");
    }
    const Corpus train =
        context.type_model ? AnnotateTypes(fold.train, context, bundle, config) : fold.train;
    const Corpus test =
        context.type_model ? AnnotateTypes(fold.test, context, bundle, config) : fold.test;
    const FeatureContext view = context.View(bundle, config.features);
    const auto train_parts = ExtractCorpusParts(train, view);
    const auto test_parts = ExtractCorpusParts(test, view);

    FoldOutcome& outcome = outcomes[f];
    for (FeatureSet set : feature_sets) {
      RankingResult result;
      result.system = std::string(ToString(set));
      const std::vector<RankGroup> train_groups = BuildRankGroups(train, train_parts, set);
      const Ensemble model = TrainLambdaMart(train_groups, config.ranker);
      const std::vector<RankGroup> test_groups = BuildRankGroups(test, test_parts, set);
      AccumulateQueries(test, RankAll(test_groups, model), fold_id, config.ndcg_at, result);
      spdlog::info("fold {} {}: MRR {} NDCG {}", f, result.system, Percent(result.mrr),
                   Percent(result.ndcg));
      outcome.results.push_back(std::move(result));
    }
    RankingResult tfidf;
    tfidf.system = "baseline:tfidf";
    AccumulateQueries(test, RankAllBySimilarity(test, SimilarityMetric::kTfidf, context.idf, nullptr),
                      fold_id, config.ndcg_at, tfidf);
    outcome.results.push_back(std::move(tfidf));
    if (with_w2v) {
      RankingResult w2v;
      w2v.system = "baseline:w2v";
      AccumulateQueries(test,
                        RankAllBySimilarity(test, SimilarityMetric::kW2v, context.idf,
                                            &*bundle.embeddings),
                        fold_id, config.ndcg_at, w2v);
      outcome.results.push_back(std::move(w2v));
    }
  };

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t f = next++; f < folds.size(); f = next++) {
      try {
        run_fold(f);
      } catch (...) {
        errors[f] = std::current_exception();
      }
    }
  };
  const std::size_t num_threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.jobs), folds.size());
  if (num_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < num_threads; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  report.aggregate.resize(report.systems.size());
  for (std::size_t s = 0; s < report.systems.size(); ++s) report.aggregate[s].system = report.systems[s];
  for (std::size_t f = 0; f < folds.size(); ++f) {
    report.fold_debates.push_back(folds[f].test_debates);
    for (std::size_t s = 0; s < report.systems.size(); ++s) {
      const RankingResult& r = outcomes[f].results[s];
      RankingResult& agg = report.aggregate[s];
      agg.queries.insert(agg.queries.end(), r.queries.begin(), r.queries.end());
      agg.excluded += r.excluded;
    }
    report.per_fold.push_back(std::move(outcomes[f].results));
  }
  for (RankingResult& r : report.aggregate) r.Finalize();
  return report;
}

const TypeProtocolRow& TypeProtocolResult::Row(const std::string& system) const {
  for (const TypeProtocolRow& r : rows) {
    if (r.system == system) return r;
  }
  throw InvalidArgument("no type protocol row '" + system + "'");
}

std::string TypeProtocolResult::FormatTable() const {
  std::size_t width = std::string("system").size();
  for (const TypeProtocolRow& r : rows) width = std::max(width, r.system.size());
  std::ostringstream out;
  out << "split\ttrain " << n_train << "\tvalidation " << n_validation << "\ttest " << n_test
      << '\n';
  out << "l2\tngrams " << selected_l2_ngrams << "\tall " << selected_l2_all << '\n';
  out << std::left << std::setw(static_cast<int>(width)) << "system" << std::right << std::setw(10)
      << "accuracy" << std::setw(10) << "macro_f1" << '\n';
  for (const TypeProtocolRow& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.system << std::right
        << std::setw(10) << Fixed(r.accuracy, 3) << std::setw(10) << Fixed(r.macro_f1, 3) << '\n';
  }
  return out.str();
}

TypeProtocolResult RunTypeProtocol(const Corpus& corpus, const ResourceBundle& bundle,
                                   const ExperimentConfig& config) {
  std::vector<std::pair<std::size_t, std::size_t>> typed;
  for (std::size_t g = 0; g < corpus.groups.size(); ++g) {
    for (std::size_t i = 0; i < corpus.groups[g].sentences.size(); ++i) {
      const AnnotatedSentence& s = corpus.groups[g].sentences[i];
      if (s.relevance == 1 && s.gold_type) typed.emplace_back(g, i);
    }
  }
  if (typed.size() < 8) {
    throw InvalidArgument("type protocol needs at least 8 gold-typed supporting sentences, found " +
                          std::to_string(typed.size()));
  }
  SeededShuffle(typed, config.seed);
  TypeProtocolResult result;
  result.n_train = typed.size() / 2;
  result.n_validation = typed.size() / 4;
  result.n_test = typed.size() - result.n_train - result.n_validation;
  const auto first = typed.begin();
  const std::vector<std::pair<std::size_t, std::size_t>> train_picks(first, first + result.n_train);
  const std::vector<std::pair<std::size_t, std::size_t>> val_picks(
      first + result.n_train, first + result.n_train + result.n_validation);
  const std::vector<std::pair<std::size_t, std::size_t>> test_picks(
      first + result.n_train + result.n_validation, typed.end());

  // Vocabulary and IDF see the training sentences only.
  const Corpus train_corpus = SelectSentences(corpus, train_picks);
  const NgramVocabulary vocab = BuildNgramVocabulary(train_corpus, config.features.ngram_vocab_size,
                                                     config.features.ngram_min_df);
  const IdfTable idf = BuildIdfTable(train_corpus);
  const FeatureContext view{&bundle, &vocab, &idf, &config.features};

  const auto featurize = [&](const std::vector<std::pair<std::size_t, std::size_t>>& picks,
                             bool ngrams_only) {
    std::vector<TypeInstance> out;
    for (const auto& [g, i] : picks) {
      FeatureVector x = ExtractTypeFeatures(corpus.groups[g], i, view);
      if (ngrams_only) x = KeepPrefix(x, "ngr:");
      out.push_back({std::move(x), *corpus.groups[g].sentences[i].gold_type});
    }
    return out;
  };
  const auto gold_of = [](const std::vector<TypeInstance>& v) {
    std::vector<ArgumentType> out;
    for (const TypeInstance& t : v) out.push_back(t.type);
    return out;
  };

  const std::vector<TypeInstance> train_all = featurize(train_picks, false);
  const std::vector<ArgumentType> test_gold = gold_of(featurize(test_picks, true));

  std::array<std::size_t, kNumArgumentTypes> counts{};
  for (const TypeInstance& t : train_all) ++counts[Index(t.type)];
  const ArgumentType majority =
      kAllArgumentTypes[static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) -
                                                 counts.begin())];
  {
    const std::vector<ArgumentType> predicted(test_gold.size(), majority);
    const ClassificationMetrics m = ComputeClassificationMetrics(test_gold, predicted);
    result.rows.push_back({"majority", m.accuracy, m.macro_f1});
  }
  {
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<ArgumentType> predicted;
    for (std::size_t i = 0; i < test_gold.size(); ++i) {
      predicted.push_back(kAllArgumentTypes[static_cast<std::size_t>(rng() % kNumArgumentTypes)]);
    }
    const ClassificationMetrics m = ComputeClassificationMetrics(test_gold, predicted);
    result.rows.push_back({"random", m.accuracy, m.macro_f1});
  }

  constexpr std::array<double, 5> kL2Grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  for (const bool ngrams_only : {true, false}) {
    const std::vector<TypeInstance> train = featurize(train_picks, ngrams_only);
    const std::vector<TypeInstance> val = featurize(val_picks, ngrams_only);
    const std::vector<TypeInstance> test = featurize(test_picks, ngrams_only);
    const std::vector<ArgumentType> val_gold = gold_of(val);
    double best_f1 = -1.0;
    double best_l2 = config.typeclf.l2;
    LogLinearModel best;
    for (double l2 : kL2Grid) {
      TrainConfig tc = config.typeclf;
      tc.l2 = l2;
      LogLinearModel model = TrainTypeClassifier(train, tc);
      std::vector<ArgumentType> predicted;
      for (const TypeInstance& t : val) predicted.push_back(model.PredictType(t.features));
      const double f1 = ComputeClassificationMetrics(val_gold, predicted).macro_f1;
      if (f1 > best_f1) {
        best_f1 = f1;
        best_l2 = l2;
        best = std::move(model);
      }
    }
    std::vector<ArgumentType> predicted;
    for (const TypeInstance& t : test) predicted.push_back(best.PredictType(t.features));
    const ClassificationMetrics m = ComputeClassificationMetrics(test_gold, predicted);
    if (ngrams_only) {
      result.selected_l2_ngrams = best_l2;
      result.rows.push_back({"loglinear:ngrams", m.accuracy, m.macro_f1});
    } else {
      result.selected_l2_all = best_l2;
      result.rows.push_back({"loglinear:all", m.accuracy, m.macro_f1});
    }
  }
  return result;
}

SignificanceReport AnalyzeFeatureSignificance(const Corpus& corpus, const ResourceBundle& bundle,
                                              const ExperimentConfig& config) {
  const TrainedContext context = TrainContext(corpus, bundle, config);
  Corpus typed;
  if (context.type_model) {
    typed = AnnotateTypes(corpus, context, bundle, config);
  } else {
    spdlog::warn("no type classifier; analysing gold-typed sentences only");
    typed = corpus;
    for (QueryGroup& g : typed.groups) {
      for (AnnotatedSentence& s : g.sentences) s.predicted_type = s.gold_type;
    }
  }
  const FeatureContext view = context.View(bundle, config.features);
  std::vector<FeatureVector> vectors;
  std::vector<std::pair<int, ArgumentType>> labels;
  std::set<std::string> names;
  for (const QueryGroup& group : typed.groups) {
    for (std::size_t i = 0; i < group.sentences.size(); ++i) {
      const AnnotatedSentence& s = group.sentences[i];
      if (!s.predicted_type) continue;
      const InstanceParts parts = ExtractInstanceParts(group, i, view);
      FeatureVector x = parts.sentence;
      x.Merge(parts.similarity);
      for (const auto& [name, value] : x) names.insert(name);
      vectors.push_back(std::move(x));
      labels.emplace_back(s.relevance, *s.predicted_type);
    }
  }
  std::vector<TypedObservation> observations;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    observations.push_back({&vectors[k], labels[k].first, labels[k].second});
  }
  const std::vector<std::string> feature_names(names.begin(), names.end());
  return FeatureSignificanceReport(observations, feature_names);
}

json ToJson(const TrainedContext& context) {
  const std::map<std::string, double> idf_sorted(context.idf.values().begin(),
                                                 context.idf.values().end());
  return {{"vocabulary", context.vocab.keys()},
          {"idf", {{"num_documents", context.idf.num_documents()}, {"values", idf_sorted}}},
          {"type_model", context.type_model ? json::parse(context.type_model->ToJson())
                                            : json(nullptr)}};
}

TrainedContext TrainedContextFromJson(const json& j) {
  try {
    TrainedContext context;
    context.vocab = NgramVocabulary(j.at("vocabulary").get<std::vector<std::string>>());
    const json& idf = j.at("idf");
    context.idf = IdfTable(idf.at("values").get<std::unordered_map<std::string, double>>(),
                           idf.at("num_documents").get<std::size_t>());
    if (!j.at("type_model").is_null()) {
      context.type_model = LogLinearModel::FromJson(j.at("type_model").dump());
    }
    return context;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed trained context: ") + e.what());
  }
}

std::string RankingPipeline::ToJson() const {
  json out = {{"format", kPipelineFormat},
              {"features", argsup::ToJson(features)},
              {"feature_set", std::string(ToString(feature_set))},
              {"policy", std::string(ToString(policy))},
              {"context", argsup::ToJson(context)},
              {"ranker", json::parse(ranker.ToJson())}};
  return out.dump();
}

RankingPipeline RankingPipeline::FromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kPipelineFormat) {
      throw ValidationError("unsupported pipeline format '" + j.at("format").get<std::string>() +
                            "'");
    }
    RankingPipeline p;
    p.features = FeatureConfigFromJson(j.at("features"));
    p.feature_set = ParseFeatureSet(j.at("feature_set").get<std::string>());
    p.policy = ParseTypePolicy(j.at("policy").get<std::string>());
    p.context = TrainedContextFromJson(j.at("context"));
    p.ranker = Ensemble::FromJson(j.at("ranker").dump());
    return p;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed pipeline: ") + e.what());
  }
}

void RankingPipeline::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << ToJson() << '\n';
}

RankingPipeline RankingPipeline::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

RankingPipeline TrainRankingPipeline(const Corpus& corpus, const ResourceBundle& bundle,
                                     FeatureSet set, const ExperimentConfig& config) {
  RankingPipeline p;
  p.features = config.features;
  p.feature_set = set;
  p.policy = config.policy;
  p.context = TrainContext(corpus, bundle, config);
  Corpus typed = corpus;
  if (p.context.type_model) {
    typed = AnnotateTypes(corpus, p.context, bundle, config);
  } else if (UsesComposites(set)) {
    throw InvalidArgument("feature set '" + std::string(ToString(set)) +
                          "' needs a type classifier (at least two gold types)");
  }
  const auto parts = ExtractCorpusParts(typed, p.context.View(bundle, config.features));
  p.ranker = TrainLambdaMart(BuildRankGroups(typed, parts, set), config.ranker);
  return p;
}

std::vector<RankedSentence> RankWithPipeline(const RankingPipeline& pipeline,
                                             const QueryGroup& group,
                                             const ResourceBundle& bundle) {
  Corpus single;
  single.groups.push_back(group);
  ExperimentConfig config;
  config.features = pipeline.features;
  config.policy = pipeline.policy;
  if (pipeline.context.type_model) {
    single = AnnotateTypes(single, pipeline.context, bundle, config);
  } else if (UsesComposites(pipeline.feature_set)) {
    throw InvalidArgument("pipeline has no type classifier for a composite feature set");
  }
  const auto parts = ExtractCorpusParts(single, pipeline.context.View(bundle, pipeline.features));
  const std::vector<RankGroup> groups = BuildRankGroups(single, parts, pipeline.feature_set);
  std::vector<RankedSentence> out;
  for (const ScoredCandidate& c : ScoreGroup(pipeline.ranker, groups.front())) {
    const AnnotatedSentence& s = single.groups.front().sentences[c.index];
    out.push_back({c.index, c.score, s.predicted_type, s.text});
  }
  return out;
}

}  // namespace argsup
