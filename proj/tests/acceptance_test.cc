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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails. Usage: acceptance_test [scratch_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "argsup/cli.h"
#include "argsup/corpus.h"
#include "argsup/features.h"
#include "argsup/harness.h"
#include "argsup/metrics.h"
#include "argsup/ranker.h"
#include "argsup/stats.h"
#include "argsup/synthetic.h"
#include "argsup/typeclf.h"

namespace argsup {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string Format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), fmt, a, b, c);
  return buffer;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 1. Ranking metrics against direct-formula oracles.
Outcome MetricOracles() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t relevant = 0; relevant <= n; ++relevant) {
      std::vector<int> list(n, 0);
      std::fill(list.begin(), list.begin() + static_cast<long>(relevant), 1);
      std::sort(list.begin(), list.end());
      double ideal = 0.0;
      for (std::size_t i = 0; i < relevant; ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2);
      do {
        double rr = 0.0;
        double dcg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (list[i] == 1 && rr == 0.0) rr = 1.0 / static_cast<double>(i + 1);
          dcg += (std::pow(2.0, list[i]) - 1) / std::log2(static_cast<double>(i) + 2);
        }
        o.Require(std::abs(ReciprocalRank(list) - rr) <= 1e-12, "reciprocal rank mismatch");
        if (relevant > 0) {
          const std::vector<RelevanceList> one = {list};
          o.Require(std::abs(MeanReciprocalRank(one) - rr) <= 1e-12, "MRR mismatch");
          o.Require(std::abs(Ndcg(list) - dcg / ideal) <= 1e-12, "NDCG mismatch");
        }
        ++checked;
      } while (std::next_permutation(list.begin(), list.end()));
    }
  }
  const double elapsed = Seconds(start);
  o.Require(elapsed < 10.0, "runtime over 10 s");
  if (o.pass) o.detail = std::to_string(checked) + " lists, " + Format("%.3f s", elapsed);
  return o;
}

// 2. Similarity metric fixtures and identities.
Outcome SimilarityFixtures() {
  Outcome o;
  using W = std::vector<std::string>;
  const auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };
  o.Require(near(RougeL(W{"the", "cat", "sat"}, W{"the", "dog", "sat"}), 2.0 / 3, 1e-4),
            "rouge_l fixture");
  o.Require(near(Bleu(W{"the", "cat", "slept"}, W{"the", "cat", "sat"}, 2), 2.0 / 3, 1e-4),
            "bleu fixture");
  const IdfTable ones({{"gun", 1.0}, {"control", 1.0}, {"ban", 1.0}}, 3);
  o.Require(near(TfidfCosine(W{"gun", "control"}, W{"gun", "ban"}, ones), 0.5, 1e-4),
            "tfidf fixture");
  EmbeddingTable table(2);
  table.Add("a", {1.0, 0.0});
  table.Add("b", {0.0, 1.0});
  o.Require(near(EmbeddingCosine(W{"a"}, W{"a", "b"}, table), 1.0 / std::sqrt(2.0), 1e-4),
            "embedding fixture");

  const W same = {"gun", "control", "saves", "lives"};
  const IdfTable idf({{"gun", 1.7}, {"control", 2.2}, {"lives", 1.1}}, 9);
  o.Require(near(RougeL(same, same), 1.0, 1e-12), "rouge_l identity");
  o.Require(near(Bleu(same, same, 1), 1.0, 1e-12), "bleu identity (n=1)");
  o.Require(near(Bleu(same, same, 2), 1.0, 1e-12), "bleu identity (n=2)");
  o.Require(near(TfidfCosine(same, W{"lives", "saves", "control", "gun"}, idf), 1.0, 1e-12),
            "tfidf identity");
  EmbeddingTable dense(3);
  dense.Add("gun", {0.3, -1.2, 0.5});
  dense.Add("lives", {2.0, 0.1, -0.7});
  o.Require(near(EmbeddingCosine(same, same, dense), 1.0, 1e-12), "embedding identity");
  if (o.pass) o.detail = "4 fixtures, 5 identities";
  return o;
}

// 3. The composite feature example.
Outcome CompositeContract() {
  Outcome o;
  FeatureVector base;
  base.Set("sim:rouge_l", 0.2);
  const FeatureVector composed = ComposeWithType(base, ArgumentType::kStudy);
  o.Require(composed.size() == 1, "expected exactly one entry");
  o.Require(composed.Get("cmp:study:sim:rouge_l") == 0.2, "cmp:study:sim:rouge_l != 0.2");
  for (ArgumentType t : {ArgumentType::kFactual, ArgumentType::kOpinion, ArgumentType::kReasoning}) {
    o.Require(composed.Get("cmp:" + std::string(ToString(t)) + ":sim:rouge_l") == 0.0,
              "non-zero entry for another type");
  }
  if (o.pass) o.detail = "{cmp:study:sim:rouge_l: 0.2}";
  return o;
}

// 4. Logistic gradient against finite differences; monotone descent.
Outcome LogisticGradient() {
  Outcome o;
  double worst = 0.0;
  std::size_t steps = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const std::size_t n = 10;
    const std::size_t d = 5;
    std::vector<double> dense(n * d);
    for (double& v : dense) v = rng() % 3 == 0 ? 0.0 : normal(rng);
    std::vector<double> labels(n);
    for (double& y : labels) y = static_cast<double>(rng() % 2);
    std::vector<double> means(d);
    std::vector<double> scales(d);
    for (std::size_t j = 0; j < d; ++j) {
      means[j] = 0.3 * normal(rng);
      scales[j] = 0.5 + std::abs(normal(rng));
    }
    const LogisticObjective objective(SparseMatrix::FromDense(dense, d), labels, 0.05 * seed,
                                      means, scales);
    std::vector<double> params(d + 1);
    for (double& p : params) p = normal(rng);
    std::vector<double> gradient(d + 1);
    objective.Gradient(params, gradient);
    for (std::size_t k = 0; k <= d; ++k) {
      const double h = 1e-5;
      std::vector<double> plus = params;
      std::vector<double> minus = params;
      plus[k] += h;
      minus[k] -= h;
      const double numeric = (objective.Value(plus) - objective.Value(minus)) / (2 * h);
      const double rel =
          std::abs(numeric - gradient[k]) / std::max(1e-8, std::abs(numeric) + std::abs(gradient[k]));
      worst = std::max(worst, rel);
    }
    std::vector<double> start(d + 1, 0.0);
    TrainConfig config;
    config.learning_rate = 2.0;
    config.max_epochs = 200;
    const DescentTrace trace = MinimizeLogistic(objective, start, config);
    for (std::size_t i = 1; i < trace.objective.size(); ++i) {
      o.Require(trace.objective[i] <= trace.objective[i - 1], "objective increased on a step");
      ++steps;
    }
  }
  o.Require(worst <= 1e-5, Format("max relative error %.3g", worst));
  if (o.pass) o.detail = Format("max relative error %.3g", worst) + ", " + std::to_string(steps) +
                         " monotone steps";
  return o;
}

// 5. Lambda fixture and zero-sum property.
Outcome LambdaFixture() {
  Outcome o;
  const LambdaResult r = LambdaGradients(std::vector<double>{0.0, 0.0}, std::vector<int>{1, 0}, 1.0);
  o.Require(std::abs(r.lambdas[0] - 0.1845) <= 1e-4, Format("lambda_0 = %.6f", r.lambdas[0]));
  o.Require(std::abs(r.lambdas[1] + 0.1845) <= 1e-4, Format("lambda_1 = %.6f", r.lambdas[1]));
  o.Require(std::abs(r.hessians[0] - 0.0923) <= 1e-4, Format("hessian_0 = %.6f", r.hessians[0]));
  o.Require(std::abs(r.hessians[1] - 0.0923) <= 1e-4, Format("hessian_1 = %.6f", r.hessians[1]));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int g = 0; g < 100; ++g) {
    const std::size_t n = 2 + rng() % 20;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = normal(rng);
      labels[i] = static_cast<int>(rng() % 4 == 0);
    }
    const LambdaResult l = LambdaGradients(scores, labels, 1.0);
    worst = std::max(worst, std::abs(std::accumulate(l.lambdas.begin(), l.lambdas.end(), 0.0)));
  }
  o.Require(worst <= 1e-10, Format("max |sum lambda| %.3g", worst));
  if (o.pass) {
    o.detail = Format("lambda (%.4f, %.4f)", r.lambdas[0], r.lambdas[1]) +
               Format(", hessian %.4f, max |sum| %.2g", r.hessians[0], worst);
  }
  return o;
}

// 6. Ranker capacity on a planted separable corpus.
Outcome RankerCapacity() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RankGroup> groups;
  for (int g = 0; g < 3; ++g) {
    RankGroup group;
    group.qid = "q" + std::to_string(g);
    const std::size_t relevant = rng() % 5;
    for (std::size_t i = 0; i < 5; ++i) {
      FeatureVector fv;
      fv.Set("signal", i == relevant ? 1.0 + u(rng) : 0.9 * u(rng));
      fv.Set("noise", u(rng));
      group.indices.push_back(i);
      group.features.push_back(fv);
      group.labels.push_back(i == relevant ? 1 : 0);
    }
    groups.push_back(std::move(group));
  }
  RankerConfig config;
  config.num_trees = 50;
  config.shrinkage = 0.1;
  config.max_leaves = 4;
  std::vector<RoundStats> history;
  const Ensemble first = TrainLambdaMart(groups, config, &history);
  const Ensemble second = TrainLambdaMart(groups, config);
  int reached = -1;
  for (const RoundStats& s : history) {
    if (s.mrr == 1.0) {
      reached = s.round;
      break;
    }
  }
  std::vector<RelevanceList> lists;
  for (const RankGroup& g : groups) {
    RelevanceList ranked;
    for (const ScoredCandidate& c : ScoreGroup(first, g)) ranked.push_back(g.labels[c.index]);
    lists.push_back(ranked);
  }
  const double mrr = MeanReciprocalRank(lists);
  const double elapsed = Seconds(start);
  o.Require(mrr == 1.0, Format("final training MRR %.4f", mrr));
  o.Require(first == second, "reruns differ");
  o.Require(elapsed < 5.0, Format("runtime %.2f s", elapsed));
  if (o.pass) {
    o.detail = "MRR 1.0 from round " + std::to_string(reached) + ", deterministic, " +
               Format("%.3f s", elapsed);
  }
  return o;
}

// 7. Relative ordering of feature sets on a type-conditional synthetic corpus.
Outcome FeatureSetOrdering(const fs::path& scratch) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  SyntheticSpec spec;
  spec.num_debates = 50;
  spec.claims_per_debate = 2;
  spec.sentences_per_article = 20;
  spec.seed = 7;
  const SyntheticData data = GenerateSynthetic(spec);
  const ResourceBundle bundle = LoadResourceBundle(data.resources.Write(scratch / "c7_resources"));
  ExperimentConfig config;
  config.seed = 7;
  config.ranker.seed = 7;
  config.typeclf.seed = 7;
  config.jobs = 1;
  const CrossValidationReport report =
      CrossValidate(data.corpus, bundle, AllFeatureSets(), config);
  const double elapsed = Seconds(start);
  const auto mrr = [&report](const std::string& name) { return 100.0 * report.Aggregate(name).mrr; };
  const double full = mrr("full");
  const double base = mrr("sen+ngr+simi");
  const double tfidf = mrr("baseline:tfidf");
  const double w2v = mrr("baseline:w2v");
  o.Require(full >= base + 1.0, Format("full %.2f < sen+ngr+simi %.2f + 1.0", full, base));
  for (const char* set : {"sen", "comp-sen-simi", "sen+ngr+simi", "full", "full+claimcomp"}) {
    o.Require(mrr(set) >= tfidf && mrr(set) >= w2v,
              std::string(set) + Format(" MRR %.2f below a baseline (%.2f / %.2f)", mrr(set), tfidf, w2v));
  }
  o.Require(elapsed < 300.0, Format("runtime %.1f s", elapsed));
  std::printf("%s", report.FormatTable().c_str());
  if (o.pass) {
    o.detail = Format("full %.2f vs sen+ngr+simi %.2f", full, base) +
               Format(", baselines %.2f / %.2f", tfidf, w2v) + Format(", %.1f s", elapsed);
  }
  return o;
}

// 8. Agreement and significance-test fixtures.
Outcome StatisticsFixtures() {
  Outcome o;
  const std::vector<std::string> a = {"A", "A", "B", "B"};
  const std::vector<std::string> b = {"A", "B", "B", "B"};
  const double kappa = CohenKappa(a, b);
  o.Require(std::abs(kappa - 0.5) <= 1e-12, Format("kappa %.6f", kappa));
  const TTestResult t = WelchTTest(std::vector<double>{1, 2, 3}, std::vector<double>{2, 3, 4});
  o.Require(std::abs(t.t + 1.2247) <= 1e-4, Format("t %.6f", t.t));
  o.Require(std::abs(t.df - 4.0) <= 1e-9, Format("df %.6f", t.df));
  o.Require(std::abs(t.p_two_sided - 0.288) <= 0.002, Format("p %.6f", t.p_two_sided));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> p(1 + rng() % 50);
    for (double& v : p) v = u(rng);
    const std::vector<double> corrected = BonferroniCorrect(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      o.Require(corrected[i] >= p[i] && corrected[i] <= 1.0, "Bonferroni monotonicity violated");
    }
  }
  if (o.pass) {
    o.detail = Format("kappa %.4f, t %.4f", kappa, t.t) +
               Format(", df %.2f, p %.4f", t.df, t.p_two_sided);
  }
  return o;
}

// 9. Type classifier protocol beats its baselines.
Outcome TypeProtocol(const fs::path& scratch) {
  Outcome o;
  SyntheticSpec spec;
  spec.seed = 9;
  const SyntheticData data = GenerateSynthetic(spec);
  const ResourceBundle bundle = LoadResourceBundle(data.resources.Write(scratch / "c9_resources"));
  ExperimentConfig config;
  config.seed = 9;
  config.typeclf.seed = 9;
  const TypeProtocolResult r = RunTypeProtocol(data.corpus, bundle, config);
  const TypeProtocolRow& model = r.Row("loglinear:all");
  for (const char* baseline : {"majority", "random"}) {
    const TypeProtocolRow& row = r.Row(baseline);
    o.Require(model.accuracy > row.accuracy,
              std::string("accuracy not above ") + baseline);
    o.Require(model.macro_f1 > row.macro_f1, std::string("macro-F1 not above ") + baseline);
  }
  std::printf("%s", r.FormatTable().c_str());
  if (o.pass) {
    o.detail = Format("acc %.3f / F1 %.3f", model.accuracy, model.macro_f1) +
               Format(" vs majority %.3f / %.3f", r.Row("majority").accuracy,
                      r.Row("majority").macro_f1) +
               Format(", random %.3f / %.3f", r.Row("random").accuracy, r.Row("random").macro_f1);
  }
  return o;
}

// 10. The cv command is independent of the worker count.
Outcome CvDeterminism(const fs::path& scratch) {
  Outcome o;
  const fs::path dir = scratch / "c10";
  fs::remove_all(dir);
  const std::string corpus = (dir / "corpus.jsonl").string();
  std::ostringstream sink;
  const int synth = RunCommand({"synth", "--corpus", corpus, "--out", (dir / "synth").string(),
                                "--seed", "10", "--debates", "10", "--sentences", "10"},
                               sink, sink);
  o.Require(synth == kExitOk, "synth failed");
  const fs::path res = dir / "synth" / "resources";
  const auto run = [&](const std::string& jobs, const std::string& out) {
    return RunCommand({"cv", "--corpus", corpus, "--out", (dir / out).string(), "--seed", "10",
                       "--jobs", jobs, "--polarity", (res / "polarity.tsv").string(),
                       "--categories", (res / "categories.tsv").string(), "--norms",
                       (res / "norms.csv").string(), "--connectives",
                       (res / "connectives.tsv").string(), "--embeddings",
                       (res / "embeddings.txt").string(), "--hedges", (res / "hedges.txt").string()},
                      sink, sink);
  };
  o.Require(run("1", "jobs1") == kExitOk, "cv --jobs 1 failed");
  o.Require(run("4", "jobs4") == kExitOk, "cv --jobs 4 failed");
  std::size_t bytes = 0;
  for (const char* name : {"cv_table.txt", "cv_records.tsv", "cv_folds.txt"}) {
    const std::string one = ReadFile(dir / "jobs1" / "reports" / name);
    const std::string four = ReadFile(dir / "jobs4" / "reports" / name);
    o.Require(!one.empty() && one == four, std::string(name) + " differs");
    bytes += one.size();
  }
  if (o.pass) o.detail = "3 reports, " + std::to_string(bytes) + " bytes identical";
  return o;
}

}  // namespace
}  // namespace argsup

int main(int argc, char** argv) {
  using argsup::Outcome;
  namespace fs = std::filesystem;
  spdlog::set_level(spdlog::level::warn);
  const fs::path scratch =
      argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "argsup_acceptance";
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"metric oracle equivalence", argsup::MetricOracles},
      {"similarity metric fixtures", argsup::SimilarityFixtures},
      {"composite feature contract", argsup::CompositeContract},
      {"logistic gradient check", argsup::LogisticGradient},
      {"lambda gradient fixture", argsup::LambdaFixture},
      {"ranker capacity", argsup::RankerCapacity},
      {"feature-set ordering under cross validation",
       [&scratch] { return argsup::FeatureSetOrdering(scratch); }},
      {"statistics fixtures", argsup::StatisticsFixtures},
      {"type classifier protocol", [&scratch] { return argsup::TypeProtocol(scratch); }},
      {"cv determinism across --jobs", [&scratch] { return argsup::CvDeterminism(scratch); }},
  };
  int failures = 0;
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    char line[512];
    std::snprintf(line, sizeof(line), "%s  [%zu] %s: %s", outcome.pass ? "PASS" : "FAIL", i + 1,
                  criteria[i].first.c_str(), outcome.detail.c_str());
    std::printf("%s\n", line);
    std::fflush(stdout);
    lines.emplace_back(line);
  }
  std::printf("\n== acceptance summary ==\n");
  for (const std::string& l : lines) std::printf("%s\n", l.c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
