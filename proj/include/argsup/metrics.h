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

#ifndef ARGSUP_METRICS_H_
#define ARGSUP_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "argsup/corpus.h"

namespace argsup {

// A ranked list of binary relevance labels, best-ranked first.
using RelevanceList = std::vector<int>;

// 1 / (1-based rank of the first relevant item); 0 when none is relevant.
double ReciprocalRank(std::span<const int> ranking);

// Mean reciprocal rank over the lists holding at least one relevant item.
// Throws InvalidArgument when no list does, or a list is empty.
double MeanReciprocalRank(std::span<const RelevanceList> rankings);

// DCG = sum_{i=1..k} (2^rel_i - 1) / log2(i + 1); the whole list when k is
// absent.
double Dcg(std::span<const int> ranking, std::optional<std::size_t> k = std::nullopt);

// DCG over the DCG of the ideal ordering. Throws InvalidArgument when the
// list is empty or holds no relevant item.
double Ndcg(std::span<const int> ranking, std::optional<std::size_t> k = std::nullopt);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::array<ClassMetrics, kNumArgumentTypes> per_class{};
};

// Macro-F1 averages the per-class F1 of all four types; a class absent from
// both gold and prediction contributes 0.
ClassificationMetrics ComputeClassificationMetrics(std::span<const ArgumentType> gold,
                                                   std::span<const ArgumentType> predicted);

// kappa = (p_o - p_e) / (1 - p_e). Returns 1 when p_e = 1 and the annotators
// agree everywhere; throws InvalidArgument when p_e = 1 with disagreement.
double CohenKappa(std::span<const std::string> first, std::span<const std::string> second);

}  // namespace argsup

#endif  // ARGSUP_METRICS_H_
