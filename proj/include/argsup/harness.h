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

#ifndef ARGSUP_HARNESS_H_
#define ARGSUP_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "argsup/corpus.h"
#include "argsup/features.h"
#include "argsup/lexicons.h"
#include "argsup/metrics.h"
#include "argsup/ranker.h"
#include "argsup/stats.h"
#include "argsup/typeclf.h"

namespace argsup {

struct ExperimentConfig {
  FeatureConfig features;
  TrainConfig typeclf;
  RankerConfig ranker;
  TypePolicy policy = TypePolicy::kPredictedEverywhere;
  int folds = 5;
  std::uint64_t seed = 0;
  std::optional<std::size_t> ndcg_at;
  int jobs = 1;
};

// JSON forms of the configuration. The *FromJson functions overlay the keys
// present in `j` onto `base` and throw InvalidArgument on unknown keys or
// ill-typed values.
nlohmann::json ToJson(const FeatureConfig& config);
FeatureConfig FeatureConfigFromJson(const nlohmann::json& j, FeatureConfig base = {});
nlohmann::json ToJson(const TrainConfig& config);
TrainConfig TrainConfigFromJson(const nlohmann::json& j, TrainConfig base = {});
nlohmann::json ToJson(const RankerConfig& config);
RankerConfig RankerConfigFromJson(const nlohmann::json& j, RankerConfig base = {});
nlohmann::json ToJson(const ExperimentConfig& config);
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j, ExperimentConfig base = {});

// State learned from one training corpus: the ngram vocabulary, the IDF
// table and (when the corpus has at least two gold types) the type
// classifier.
struct TrainedContext {
  NgramVocabulary vocab;
  IdfTable idf;
  std::optional<LogLinearModel> type_model;

  FeatureContext View(const ResourceBundle& bundle, const FeatureConfig& config) const {
    return {&bundle, &vocab, &idf, &config};
  }
};

nlohmann::json ToJson(const TrainedContext& context);
// Throws ValidationError on a malformed record.
TrainedContext TrainedContextFromJson(const nlohmann::json& j);

// Gold-typed supporting sentences of a corpus as classifier instances.
std::vector<TypeInstance> CollectTypedInstances(const Corpus& corpus, const FeatureContext& context);

TrainedContext TrainContext(const Corpus& train, const ResourceBundle& bundle,
                            const ExperimentConfig& config);

// predicted_type on every sentence via the context's classifier and policy.
// Throws InvalidArgument when the context has no classifier.
Corpus AnnotateTypes(const Corpus& corpus, const TrainedContext& context,
                     const ResourceBundle& bundle, const ExperimentConfig& config);

// InstanceParts of every sentence, indexed [group][sentence].
std::vector<std::vector<InstanceParts>> ExtractCorpusParts(const Corpus& corpus,
                                                           const FeatureContext& context);

// Rank groups of a typed corpus under a feature set.
std::vector<RankGroup> BuildRankGroups(const Corpus& corpus,
                                       const std::vector<std::vector<InstanceParts>>& parts,
                                       FeatureSet set);

struct QueryOutcome {
  std::string claim_id;
  std::string article_id;
  int fold = 0;
  RelevanceList ranked;
  double reciprocal_rank = 0.0;
  double ndcg = 0.0;
};

// Metrics of one system (a feature set or a baseline) over test queries.
// Means cover queries with at least one relevant sentence only.
struct RankingResult {
  std::string system;
  std::vector<QueryOutcome> queries;
  std::size_t excluded = 0;
  double mrr = 0.0;
  double ndcg = 0.0;

  // Recomputes the means from `queries`.
  void Finalize();
};

// Evaluates ranked candidate lists of `corpus` groups; groups without a
// relevant sentence are counted in `excluded`.
void AccumulateQueries(const Corpus& corpus, const std::vector<std::vector<ScoredCandidate>>& ranked,
                       int fold, std::optional<std::size_t> ndcg_at, RankingResult& result);

struct CrossValidationReport {
  std::vector<std::string> systems;  // feature sets, then baselines
  std::vector<std::vector<RankingResult>> per_fold;  // [fold][system]
  std::vector<RankingResult> aggregate;              // [system], pooled over folds
  std::vector<std::vector<std::string>> fold_debates;

  const RankingResult& Aggregate(const std::string& system) const;
  // Aligned plain-text table (metrics x100, two decimals).
  std::string FormatTable() const;
  // TSV records: one row per system x fold plus one "all" row per system.
  std::string FormatRecords() const;
};

// k-fold cross validation by debate. Per fold: vocabulary, IDF and type
// classifier on the training part, type annotation, ranker training per
// feature set, test scoring; plus the TF-IDF and embedding baselines (the
// latter only when embeddings are loaded). Folds run on `config.jobs`
// threads; results do not depend on the thread count.
CrossValidationReport CrossValidate(const Corpus& corpus, const ResourceBundle& bundle,
                                    const std::vector<FeatureSet>& feature_sets,
                                    const ExperimentConfig& config);

struct TypeProtocolRow {
  std::string system;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
};

struct TypeProtocolResult {
  std::size_t n_train = 0;
  std::size_t n_validation = 0;
  std::size_t n_test = 0;
  double selected_l2_ngrams = 0.0;
  double selected_l2_all = 0.0;
  std::vector<TypeProtocolRow> rows;  // majority, random, log-linear (ngrams), log-linear (all)

  const TypeProtocolRow& Row(const std::string& system) const;
  std::string FormatTable() const;
};

// Argument-type prediction protocol on gold-typed supporting sentences:
// seeded 50/25/25 train/validation/test split, L2 strength picked on the
// validation macro-F1, test metrics for the two log-linear feature sets and
// the majority and seeded-random baselines.
TypeProtocolResult RunTypeProtocol(const Corpus& corpus, const ResourceBundle& bundle,
                                   const ExperimentConfig& config);

// Significance analysis of the sentence and similarity features across
// types. Vocabulary, IDF and the type classifier are learned on the whole
// corpus; types follow `config.policy`.
SignificanceReport AnalyzeFeatureSignificance(const Corpus& corpus, const ResourceBundle& bundle,
                                              const ExperimentConfig& config);

// Everything needed to rank a new group: learned tables, models and the
// feature configuration.
struct RankingPipeline {
  FeatureConfig features;
  FeatureSet feature_set = FeatureSet::kFull;
  TypePolicy policy = TypePolicy::kPredictedEverywhere;
  TrainedContext context;
  Ensemble ranker;

  std::string ToJson() const;
  static RankingPipeline FromJson(const std::string& text);
  void Save(const std::filesystem::path& path) const;
  static RankingPipeline Load(const std::filesystem::path& path);
};

RankingPipeline TrainRankingPipeline(const Corpus& corpus, const ResourceBundle& bundle,
                                     FeatureSet set, const ExperimentConfig& config);

struct RankedSentence {
  std::size_t index = 0;
  double score = 0.0;
  std::optional<ArgumentType> type;
  std::string text;
};

std::vector<RankedSentence> RankWithPipeline(const RankingPipeline& pipeline,
                                             const QueryGroup& group,
                                             const ResourceBundle& bundle);

}  // namespace argsup

#endif  // ARGSUP_HARNESS_H_
