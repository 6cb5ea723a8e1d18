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

#ifndef ARGSUP_RANKER_H_
#define ARGSUP_RANKER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "argsup/corpus.h"
#include "argsup/features.h"

namespace argsup {

struct RankerConfig {
  int num_trees = 300;
  double shrinkage = 0.1;
  int max_leaves = 10;
  // Absent: 1% of the training instances, at least 1.
  std::optional<int> min_leaf_instances;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  // Fractions of rows / features sampled per tree; 1 disables sampling.
  double row_subsample = 1.0;
  double feature_subsample = 1.0;

  void Validate() const;
  int ResolveMinLeaf(std::size_t num_instances) const;
};

struct LambdaResult {
  std::vector<double> lambdas;
  std::vector<double> hessians;
};

// LambdaRank pseudo-gradients of one query group. For every pair with
// label_i > label_j, rho = 1 / (1 + exp(sigma (s_i - s_j))) and
//   lambda_i += sigma rho |dNDCG|,  lambda_j -= sigma rho |dNDCG|,
//   h_i, h_j += sigma^2 rho (1 - rho) |dNDCG|,
// where |dNDCG| is the full-list NDCG change of swapping i and j in the
// current score order (ties by index). Positive lambdas push scores up.
LambdaResult LambdaGradients(std::span<const double> scores, std::span<const int> labels,
                             double sigma);

// Column-major view of a training matrix used by the tree learner. Feature
// columns are ordered by name and keep only nonzero entries sorted by value.
class ColumnDataset {
 public:
  struct Entry {
    double value;
    std::uint32_t row;
  };

  explicit ColumnDataset(std::span<const FeatureVector> rows);

  std::size_t num_rows() const { return row_entries_.size(); }
  std::size_t num_features() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Entry>& column(std::size_t feature) const { return columns_[feature]; }
  // Value of a feature in a row (0 when absent).
  double Value(std::size_t row, std::size_t feature) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Entry>> columns_;
  // Per row: (feature, value) sorted by feature.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> row_entries_;
};

class RegressionTree {
 public:
  struct Node {
    // Split nodes: x[feature] <= threshold goes left. Leaves: left = right = -1.
    std::string feature;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return left < 0; }
    bool operator==(const Node&) const = default;
  };

  RegressionTree() : nodes_(1) {}
  explicit RegressionTree(std::vector<Node> nodes);

  double Predict(const FeatureVector& x) const;
  std::size_t num_leaves() const;
  const std::vector<Node>& nodes() const { return nodes_; }
  bool operator==(const RegressionTree&) const = default;

 private:
  std::vector<Node> nodes_;
};

struct TreeParams {
  int max_leaves = 10;
  int min_leaf_instances = 1;
};

struct FittedTree {
  RegressionTree tree;
  // Leaf node reached by every row of the dataset.
  std::vector<int> leaf_of_row;
};

// Greedy best-first CART on squared-error reduction of `targets` with exact
// split search over the observed values (thresholds at midpoints). Leaf value
// = sum(targets) / (sum(hessians) + 1e-9). Equal gains go to the lowest
// feature name, then the lowest threshold. `rows` restricts the fitting
// sample (all rows when empty) and `features` the candidate columns (all when
// empty).
FittedTree FitRegressionTree(const ColumnDataset& data, std::span<const double> targets,
                             std::span<const double> hessians, const TreeParams& params,
                             std::span<const std::uint32_t> rows = {},
                             std::span<const std::uint32_t> features = {});

class Ensemble {
 public:
  Ensemble() = default;
  Ensemble(std::vector<RegressionTree> trees, double shrinkage, double base_score);

  // base + shrinkage * sum of tree outputs.
  double Score(const FeatureVector& x) const;
  const std::vector<RegressionTree>& trees() const { return trees_; }
  double shrinkage() const { return shrinkage_; }
  double base_score() const { return base_score_; }
  const RankerConfig& config() const { return config_; }
  void set_config(const RankerConfig& config) { config_ = config; }

  std::string ToJson() const;
  static Ensemble FromJson(const std::string& text);
  void Save(const std::filesystem::path& path) const;
  static Ensemble Load(const std::filesystem::path& path);

  bool operator==(const Ensemble& other) const {
    return trees_ == other.trees_ && shrinkage_ == other.shrinkage_ &&
           base_score_ == other.base_score_;
  }

 private:
  std::vector<RegressionTree> trees_;
  double shrinkage_ = 0.1;
  double base_score_ = 0.0;
  RankerConfig config_;
};

// One query: a claim/article pair with its candidates in document order.
struct RankGroup {
  std::string qid;
  std::vector<std::size_t> indices;  // sentence index of each candidate
  std::vector<FeatureVector> features;
  std::vector<int> labels;
};

struct RoundStats {
  int round = 0;
  double mrr = 0.0;
  double ndcg = 0.0;
};

// LambdaMART: every round computes per-group lambda gradients at the current
// scores, fits one tree to them with Newton leaf values and adds it with the
// shrinkage. Throws InvalidArgument when no group holds a relevant and a
// non-relevant candidate, or a feature value is non-finite.
Ensemble TrainLambdaMart(std::span<const RankGroup> groups, const RankerConfig& config,
                         std::vector<RoundStats>* history = nullptr);

struct ScoredCandidate {
  std::size_t index = 0;
  double score = 0.0;
};

// Sorts by descending score; ties go to the earlier sentence.
std::vector<ScoredCandidate> SortByScore(std::vector<ScoredCandidate> candidates);

std::vector<ScoredCandidate> ScoreGroup(const Ensemble& model, const RankGroup& group);

enum class SimilarityMetric { kTfidf, kW2v };

// Throws InvalidArgument on anything but "tfidf" and "w2v".
SimilarityMetric ParseSimilarityMetric(std::string_view name);
std::string_view ToString(SimilarityMetric metric);

// Unsupervised baseline: candidates ordered by similarity to the claim.
// Throws InvalidArgument for w2v without an embedding table.
std::vector<ScoredCandidate> RankBySimilarity(const QueryGroup& group, SimilarityMetric metric,
                                              const IdfTable& idf,
                                              const EmbeddingTable* embeddings);

}  // namespace argsup

#endif  // ARGSUP_RANKER_H_
