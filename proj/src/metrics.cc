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

#include "argsup/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "argsup/error.h"

namespace argsup {

double ReciprocalRank(std::span<const int> ranking) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i] > 0) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double MeanReciprocalRank(std::span<const RelevanceList> rankings) {
  double sum = 0.0;
  std::size_t counted = 0;
  for (const RelevanceList& ranking : rankings) {
    if (ranking.empty()) throw InvalidArgument("MRR: empty ranking");
    if (std::none_of(ranking.begin(), ranking.end(), [](int r) { return r > 0; })) continue;
    sum += ReciprocalRank(ranking);
    ++counted;
  }
  if (counted == 0) throw InvalidArgument("MRR: no ranking contains a relevant item");
  return sum / static_cast<double>(counted);
}

double Dcg(std::span<const int> ranking, std::optional<std::size_t> k) {
  const std::size_t limit = std::min(ranking.size(), k.value_or(ranking.size()));
  double dcg = 0.0;
  for (std::size_t i = 0; i < limit; ++i) {
    const double gain = std::exp2(static_cast<double>(ranking[i])) - 1.0;
    dcg += gain / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double Ndcg(std::span<const int> ranking, std::optional<std::size_t> k) {
  if (ranking.empty()) throw InvalidArgument("NDCG: empty ranking");
  RelevanceList ideal(ranking.begin(), ranking.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = Dcg(ideal, k);
  if (idcg <= 0.0) throw InvalidArgument("NDCG: ranking has no relevant item");
  return Dcg(ranking, k) / idcg;
}

ClassificationMetrics ComputeClassificationMetrics(std::span<const ArgumentType> gold,
                                                   std::span<const ArgumentType> predicted) {
  if (gold.size() != predicted.size()) throw InvalidArgument("gold and prediction lengths differ");
  if (gold.empty()) throw InvalidArgument("classification metrics need at least one instance");
  ClassificationMetrics m;
  std::array<std::size_t, kNumArgumentTypes> true_pos{};
  std::array<std::size_t, kNumArgumentTypes> pred_count{};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++m.per_class[Index(gold[i])].support;
    ++pred_count[Index(predicted[i])];
    if (gold[i] == predicted[i]) {
      ++correct;
      ++true_pos[Index(gold[i])];
    }
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < kNumArgumentTypes; ++c) {
    ClassMetrics& cm = m.per_class[c];
    const double tp = static_cast<double>(true_pos[c]);
    cm.precision = pred_count[c] > 0 ? tp / static_cast<double>(pred_count[c]) : 0.0;
    cm.recall = cm.support > 0 ? tp / static_cast<double>(cm.support) : 0.0;
    cm.f1 = cm.precision + cm.recall > 0.0
                ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                : 0.0;
    f1_sum += cm.f1;
  }
  m.macro_f1 = f1_sum / static_cast<double>(kNumArgumentTypes);
  return m;
}

double CohenKappa(std::span<const std::string> first, std::span<const std::string> second) {
  if (first.size() != second.size()) throw InvalidArgument("kappa: annotation lengths differ");
  if (first.empty()) throw InvalidArgument("kappa: no annotations");
  const double n = static_cast<double>(first.size());
  std::map<std::string, std::pair<double, double>> marginals;
  double agree = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i] == second[i]) agree += 1.0;
    marginals[first[i]].first += 1.0;
    marginals[second[i]].second += 1.0;
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, counts] : marginals) p_e += (counts.first / n) * (counts.second / n);
  if (p_e >= 1.0) {
    if (p_o >= 1.0) return 1.0;
    throw InvalidArgument("kappa undefined: chance agreement is 1 but annotators disagree");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace argsup
