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

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "argsup/error.h"
#include "argsup/harness.h"
#include "argsup/metrics.h"
#include "argsup/synthetic.h"
#include "test_util.h"

namespace argsup {
namespace {

struct SmallWorld {
  Corpus corpus;
  ResourceBundle bundle;
  ExperimentConfig config;
};

const SmallWorld& World() {
  static const SmallWorld world = [] {
    SyntheticSpec spec;
    spec.num_debates = 10;
    spec.claims_per_debate = 2;
    spec.sentences_per_article = 10;
    spec.seed = 21;
    SyntheticData data = GenerateSynthetic(spec);
    SmallWorld w;
    w.corpus = std::move(data.corpus);
    w.bundle = LoadResourceBundle(data.resources.Write(testing::ScratchDir("harness_resources")));
    w.config.ranker.num_trees = 15;
    w.config.seed = 3;
    w.config.ranker.seed = 3;
    w.config.typeclf.max_epochs = 300;
    return w;
  }();
  return world;
}

TEST_CASE("cross validation is deterministic and independent of thread count") {
  const SmallWorld& w = World();
  const std::vector<FeatureSet> sets = {FeatureSet::kSimi, FeatureSet::kFull};
  ExperimentConfig one = w.config;
  one.jobs = 1;
  ExperimentConfig four = w.config;
  four.jobs = 4;
  const CrossValidationReport a = CrossValidate(w.corpus, w.bundle, sets, one);
  const CrossValidationReport b = CrossValidate(w.corpus, w.bundle, sets, one);
  const CrossValidationReport c = CrossValidate(w.corpus, w.bundle, sets, four);
  CHECK(a.FormatTable() == b.FormatTable());
  CHECK(a.FormatRecords() == b.FormatRecords());
  CHECK(a.FormatRecords() == c.FormatRecords());
  CHECK(a.FormatTable() == c.FormatTable());

  CHECK(a.systems ==
        std::vector<std::string>{"simi", "full", "baseline:tfidf", "baseline:w2v"});
  CHECK(a.per_fold.size() == 5);
  std::size_t claims = 0;
  for (const auto& fold : a.per_fold) claims += fold[0].queries.size();
  CHECK(claims == w.corpus.groups.size());
  CHECK(a.Aggregate("full").queries.size() == w.corpus.groups.size());
  CHECK(a.FormatRecords().rfind("system\tfold\tclaims\texcluded\tmrr\tndcg\n", 0) == 0);
  CHECK_THROWS(a.Aggregate("nope"));
}

TEST_CASE("pooled means equal the mean over all test queries") {
  const SmallWorld& w = World();
  const CrossValidationReport report =
      CrossValidate(w.corpus, w.bundle, {FeatureSet::kSimi}, w.config);
  for (const RankingResult& r : report.aggregate) {
    std::vector<RelevanceList> lists;
    for (const QueryOutcome& q : r.queries) lists.push_back(q.ranked);
    CHECK(r.mrr == doctest::Approx(MeanReciprocalRank(lists)).epsilon(1e-12));
  }
}

TEST_CASE("empty ensemble ranks every test group in document order") {
  const SmallWorld& w = World();
  ExperimentConfig config = w.config;
  config.ranker.num_trees = 0;
  const CrossValidationReport report =
      CrossValidate(w.corpus, w.bundle, {FeatureSet::kSimi}, config);
  std::vector<RelevanceList> document_order;
  for (const QueryGroup& g : w.corpus.groups) {
    RelevanceList labels;
    for (const AnnotatedSentence& s : g.sentences) labels.push_back(s.relevance);
    document_order.push_back(labels);
  }
  CHECK(report.Aggregate("simi").mrr ==
        doctest::Approx(MeanReciprocalRank(document_order)).epsilon(1e-12));
}

TEST_CASE("claims without a supporting sentence are excluded and counted") {
  const SmallWorld& w = World();
  Corpus corpus = w.corpus;
  for (AnnotatedSentence& s : corpus.groups[0].sentences) {
    s.relevance = 0;
    s.gold_type.reset();
  }
  const CrossValidationReport report =
      CrossValidate(corpus, w.bundle, {FeatureSet::kSimi}, w.config);
  const RankingResult& r = report.Aggregate("simi");
  CHECK(r.excluded == 1);
  CHECK(r.queries.size() == corpus.groups.size() - 1);
  CHECK(report.FormatTable().find("excluded") != std::string::npos);
}

TEST_CASE("type protocol split sizes and rows") {
  const SmallWorld& w = World();
  const TypeProtocolResult r = RunTypeProtocol(w.corpus, w.bundle, w.config);
  std::size_t typed = 0;
  for (const QueryGroup& g : w.corpus.groups) {
    for (const AnnotatedSentence& s : g.sentences) typed += s.gold_type.has_value();
  }
  CHECK(r.n_train + r.n_validation + r.n_test == typed);
  CHECK(r.n_train == typed / 2);
  CHECK(r.n_validation == typed / 4);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].system == "majority");
  CHECK(r.rows[1].system == "random");
  CHECK(r.rows[2].system == "loglinear:ngrams");
  CHECK(r.rows[3].system == "loglinear:all");
  for (const TypeProtocolRow& row : r.rows) {
    CHECK(row.accuracy >= 0.0);
    CHECK(row.accuracy <= 1.0);
  }
  const std::vector<double> grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  CHECK(std::count(grid.begin(), grid.end(), r.selected_l2_all) == 1);
  const TypeProtocolResult again = RunTypeProtocol(w.corpus, w.bundle, w.config);
  CHECK(again.FormatTable() == r.FormatTable());
}

TEST_CASE("annotation requires a classifier") {
  const SmallWorld& w = World();
  TrainedContext context = TrainContext(w.corpus, w.bundle, w.config);
  REQUIRE(context.type_model.has_value());
  const Corpus typed = AnnotateTypes(w.corpus, context, w.bundle, w.config);
  for (const QueryGroup& g : typed.groups) {
    for (const AnnotatedSentence& s : g.sentences) CHECK(s.predicted_type.has_value());
  }
  context.type_model.reset();
  CHECK_THROWS_AS(AnnotateTypes(w.corpus, context, w.bundle, w.config), InvalidArgument);
}

TEST_CASE("ranking pipeline round trip") {
  const SmallWorld& w = World();
  const RankingPipeline pipeline =
      TrainRankingPipeline(w.corpus, w.bundle, FeatureSet::kFull, w.config);
  const auto dir = testing::ScratchDir("harness_pipeline");
  pipeline.Save(dir / "p.json");
  const RankingPipeline loaded = RankingPipeline::Load(dir / "p.json");
  CHECK(loaded.ToJson() == pipeline.ToJson());
  const QueryGroup& group = w.corpus.groups[3];
  const auto a = RankWithPipeline(pipeline, group, w.bundle);
  const auto b = RankWithPipeline(loaded, group, w.bundle);
  REQUIRE(a.size() == group.sentences.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].score == b[i].score);
    CHECK(a[i].type.has_value());
    if (i > 0) CHECK(a[i - 1].score >= a[i].score);
  }
  CHECK_THROWS_AS(RankingPipeline::FromJson("{\"format\": \"x\"}"), ValidationError);
}

TEST_CASE("trained context JSON round trip") {
  const SmallWorld& w = World();
  const TrainedContext context = TrainContext(w.corpus, w.bundle, w.config);
  const TrainedContext loaded = TrainedContextFromJson(ToJson(context));
  CHECK(loaded.vocab.keys() == context.vocab.keys());
  CHECK(loaded.idf.num_documents() == context.idf.num_documents());
  CHECK(loaded.idf.values() == context.idf.values());
  CHECK(loaded.type_model->ToJson() == context.type_model->ToJson());
}

TEST_CASE("configuration JSON overlay") {
  const nlohmann::json patch = {{"folds", 3},
                                {"ranker", {{"num_trees", 7}}},
                                {"features", {{"families", {{"ngrams", false}}}}}};
  const ExperimentConfig config = ExperimentConfigFromJson(patch);
  CHECK(config.folds == 3);
  CHECK(config.ranker.num_trees == 7);
  CHECK(config.ranker.shrinkage == RankerConfig().shrinkage);
  CHECK_FALSE(config.features.families.ngrams);
  CHECK(config.features.families.similarity);

  const ExperimentConfig round = ExperimentConfigFromJson(ToJson(config));
  CHECK(ToJson(round) == ToJson(config));

  CHECK_THROWS_AS(ExperimentConfigFromJson({{"trees", 5}}), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfigFromJson({{"ranker", {{"depth", 5}}}}), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfigFromJson({{"folds", "five"}}), InvalidArgument);
  CHECK_THROWS_AS(ExperimentConfigFromJson({{"policy", "never"}}), InvalidArgument);
}

}  // namespace
}  // namespace argsup
