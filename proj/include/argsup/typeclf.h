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

#ifndef ARGSUP_TYPECLF_H_
#define ARGSUP_TYPECLF_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "argsup/corpus.h"
#include "argsup/features.h"

namespace argsup {

struct TrainConfig {
  double l2 = 1e-3;
  double learning_rate = 0.1;
  int max_epochs = 2000;
  double tolerance = 1e-7;
  bool standardize = true;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Compressed sparse rows.
struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<std::size_t> row_start = {0};
  std::vector<std::size_t> col;
  std::vector<double> value;

  std::size_t rows() const { return row_start.size() - 1; }
  void AppendRow(std::span<const std::pair<std::size_t, double>> entries);
  static SparseMatrix FromDense(std::span<const double> row_major, std::size_t cols);
};

// Binary-logistic training problem on optionally standardized features
// u_ij = (x_ij - mean_j) / scale_j:
//   J(w, b) = (1/n) sum_i [log(1 + exp(z_i)) - y_i z_i] + (l2 / 2) |w|^2,
//   z_i = w . u_i + b.
// The bias is not regularized. Standardization is applied implicitly so the
// sparse rows never densify.
class LogisticObjective {
 public:
  // Empty `means`/`scales` mean no standardization.
  LogisticObjective(SparseMatrix x, std::vector<double> labels, double l2,
                    std::vector<double> means = {}, std::vector<double> scales = {});

  std::size_t dim() const { return x_.cols; }
  std::size_t size() const { return labels_.size(); }

  // params = (w_0 .. w_{dim-1}, b).
  double Value(std::span<const double> params) const;
  // Writes dJ/dparams into `gradient` and returns J.
  double Gradient(std::span<const double> params, std::span<double> gradient) const;

 private:
  // z_i for every row.
  std::vector<double> Margins(std::span<const double> params) const;

  SparseMatrix x_;
  std::vector<double> labels_;
  double l2_;
  std::vector<double> means_;
  std::vector<double> scales_;
};

struct DescentTrace {
  std::vector<double> objective;  // value after every accepted step, [0] = start
  int epochs = 0;
  bool converged = false;
};

// Full-batch gradient descent. A step that would increase the objective is
// retried with half the step size; accepted steps let the step size grow back
// towards the configured learning rate.
DescentTrace MinimizeLogistic(const LogisticObjective& objective, std::span<double> params,
                              const TrainConfig& config);

struct BinaryWeights {
  std::map<std::string, double> weights;
  double bias = 0.0;
};

struct TypeInstance {
  FeatureVector features;
  ArgumentType type;
};

// One-vs-rest log-linear model over the four argument types.
class LogLinearModel {
 public:
  LogLinearModel() = default;

  // Per-type sigmoid(w . x + b) after the stored scaling. Feature names not
  // seen at training are ignored. Values need not sum to one.
  std::array<double, kNumArgumentTypes> PredictProba(const FeatureVector& x) const;
  // Argmax of PredictProba; ties go to the earlier type in canonical order.
  ArgumentType PredictType(const FeatureVector& x) const;

  const std::array<BinaryWeights, kNumArgumentTypes>& per_type() const { return per_type_; }
  std::array<BinaryWeights, kNumArgumentTypes>& mutable_per_type() { return per_type_; }
  const std::vector<std::string>& feature_names() const { return names_; }
  bool standardized() const { return standardized_; }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& scales() const { return scales_; }
  const TrainConfig& config() const { return config_; }
  const std::array<DescentTrace, kNumArgumentTypes>& traces() const { return traces_; }

  // Self-describing JSON record; weights sorted by feature name.
  std::string ToJson() const;
  static LogLinearModel FromJson(const std::string& text);
  void Save(const std::filesystem::path& path) const;
  static LogLinearModel Load(const std::filesystem::path& path);

  // Builds a model directly from weights (no scaling).
  static LogLinearModel FromWeights(std::array<BinaryWeights, kNumArgumentTypes> per_type);

 private:
  friend LogLinearModel TrainTypeClassifier(std::span<const TypeInstance>, const TrainConfig&);
  void RebuildIndex();

  std::array<BinaryWeights, kNumArgumentTypes> per_type_;
  std::vector<std::string> names_;  // sorted; defines the scaling vectors' order
  bool standardized_ = false;
  std::vector<double> means_;
  std::vector<double> scales_;
  TrainConfig config_;
  std::array<DescentTrace, kNumArgumentTypes> traces_;

  // Dense weights in names_ order with scaling folded in, per type.
  std::array<std::vector<double>, kNumArgumentTypes> folded_weights_;
  std::array<double, kNumArgumentTypes> folded_bias_{};
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Throws InvalidArgument on fewer than two distinct types or non-finite
// feature values.
LogLinearModel TrainTypeClassifier(std::span<const TypeInstance> instances,
                                   const TrainConfig& config);

enum class TypePolicy { kPredictedEverywhere, kGoldWhenAvailable };

std::string_view ToString(TypePolicy policy);
TypePolicy ParseTypePolicy(std::string_view name);

// Returns a copy of the corpus with predicted_type set on every sentence:
// the model prediction, or the gold type under kGoldWhenAvailable when the
// sentence carries one. `featurize(group, position)` produces the classifier
// input.
using TypeFeaturizer = std::function<FeatureVector(const QueryGroup&, std::size_t)>;
Corpus AnnotateCorpusTypes(const Corpus& corpus, const LogLinearModel& model,
                           const TypeFeaturizer& featurize, TypePolicy policy);

}  // namespace argsup

#endif  // ARGSUP_TYPECLF_H_
