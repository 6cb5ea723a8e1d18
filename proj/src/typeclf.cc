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

#include "argsup/typeclf.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "argsup/error.h"
#include "json.hpp"

namespace argsup {
namespace {

using nlohmann::json;

constexpr const char* kModelFormat = "argsup-loglinear/1";

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

json ConfigToJson(const TrainConfig& c) {
  return {{"l2", c.l2},
          {"learning_rate", c.learning_rate},
          {"max_epochs", c.max_epochs},
          {"tolerance", c.tolerance},
          {"standardize", c.standardize},
          {"seed", c.seed}};
}

TrainConfig ConfigFromJson(const json& j) {
  TrainConfig c;
  c.l2 = j.at("l2").get<double>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.max_epochs = j.at("max_epochs").get<int>();
  c.tolerance = j.at("tolerance").get<double>();
  c.standardize = j.at("standardize").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(l2 >= 0.0)) throw InvalidArgument("L2 strength must be >= 0");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");
  if (max_epochs < 0) throw InvalidArgument("max epochs must be >= 0");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be > 0");
}

void SparseMatrix::AppendRow(std::span<const std::pair<std::size_t, double>> entries) {
  for (const auto& [c, v] : entries) {
    if (c >= cols) throw InvalidArgument("column index out of range");
    col.push_back(c);
    value.push_back(v);
  }
  row_start.push_back(col.size());
}

SparseMatrix SparseMatrix::FromDense(std::span<const double> row_major, std::size_t cols) {
  if (cols == 0 || row_major.size() % cols != 0) {
    throw InvalidArgument("dense matrix size is not a multiple of the column count");
  }
  SparseMatrix m;
  m.cols = cols;
  std::vector<std::pair<std::size_t, double>> row;
  for (std::size_t r = 0; r < row_major.size() / cols; ++r) {
    row.clear();
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = row_major[r * cols + c];
      if (v != 0.0) row.emplace_back(c, v);
    }
    m.AppendRow(row);
  }
  return m;
}

LogisticObjective::LogisticObjective(SparseMatrix x, std::vector<double> labels, double l2,
                                     std::vector<double> means, std::vector<double> scales)
    : x_(std::move(x)),
      labels_(std::move(labels)),
      l2_(l2),
      means_(std::move(means)),
      scales_(std::move(scales)) {
  if (x_.rows() != labels_.size()) throw InvalidArgument("row and label counts differ");
  if (labels_.empty()) throw InvalidArgument("logistic objective needs at least one row");
  if (means_.empty() != scales_.empty() ||
      (!means_.empty() && (means_.size() != x_.cols || scales_.size() != x_.cols))) {
    throw InvalidArgument("scaling vectors must both be empty or match the column count");
  }
}

std::vector<double> LogisticObjective::Margins(std::span<const double> params) const {
  const std::size_t d = dim();
  if (params.size() != d + 1) throw InvalidArgument("parameter vector has the wrong length");
  double offset = params[d];
  std::vector<double> effective(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(d));
  if (!scales_.empty()) {
    for (std::size_t j = 0; j < d; ++j) {
      effective[j] /= scales_[j];
      offset -= effective[j] * means_[j];
    }
  }
  std::vector<double> z(size(), offset);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t k = x_.row_start[i]; k < x_.row_start[i + 1]; ++k) {
      z[i] += effective[x_.col[k]] * x_.value[k];
    }
  }
  return z;
}

double LogisticObjective::Value(std::span<const double> params) const {
  const std::vector<double> z = Margins(params);
  double loss = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) loss += Softplus(z[i]) - labels_[i] * z[i];
  double reg = 0.0;
  for (std::size_t j = 0; j < dim(); ++j) reg += params[j] * params[j];
  return loss / static_cast<double>(size()) + 0.5 * l2_ * reg;
}

double LogisticObjective::Gradient(std::span<const double> params,
                                   std::span<double> gradient) const {
  const std::size_t d = dim();
  if (gradient.size() != d + 1) throw InvalidArgument("gradient vector has the wrong length");
  const std::vector<double> z = Margins(params);
  const double inv_n = 1.0 / static_cast<double>(size());
  std::fill(gradient.begin(), gradient.end(), 0.0);
  double loss = 0.0;
  double mean_residual = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    loss += Softplus(z[i]) - labels_[i] * z[i];
    const double r = (Sigmoid(z[i]) - labels_[i]) * inv_n;
    mean_residual += r;
    for (std::size_t k = x_.row_start[i]; k < x_.row_start[i + 1]; ++k) {
      gradient[x_.col[k]] += r * x_.value[k];
    }
  }
  double reg = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (!scales_.empty()) gradient[j] = (gradient[j] - means_[j] * mean_residual) / scales_[j];
    gradient[j] += l2_ * params[j];
    reg += params[j] * params[j];
  }
  gradient[d] = mean_residual;
  return loss * inv_n + 0.5 * l2_ * reg;
}

DescentTrace MinimizeLogistic(const LogisticObjective& objective, std::span<double> params,
                              const TrainConfig& config) {
  config.Validate();
  constexpr int kMaxHalvings = 60;
  DescentTrace trace;
  std::vector<double> gradient(params.size());
  std::vector<double> trial(params.size());
  double value = objective.Gradient(params, gradient);
  trace.objective.push_back(value);
  double step = config.learning_rate;
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    double trial_value = 0.0;
    bool accepted = false;
    for (int halvings = 0; halvings <= kMaxHalvings; ++halvings) {
      for (std::size_t j = 0; j < params.size(); ++j) trial[j] = params[j] - step * gradient[j];
      trial_value = objective.Value(trial);
      if (trial_value <= value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    trace.epochs = epoch + 1;
    if (!accepted) {
      // No descent direction left at machine precision.
      trace.converged = true;
      break;
    }
    std::copy(trial.begin(), trial.end(), params.begin());
    const double previous = value;
    value = objective.Gradient(params, gradient);
    trace.objective.push_back(value);
    if (std::abs(previous - value) < config.tolerance) {
      trace.converged = true;
      break;
    }
    step = std::min(step * 2.0, config.learning_rate);
  }
  return trace;
}

std::array<double, kNumArgumentTypes> LogLinearModel::PredictProba(const FeatureVector& x) const {
  std::array<double, kNumArgumentTypes> z = folded_bias_;
  for (const auto& [name, value] : x) {
    auto it = index_.find(name);
    if (it == index_.end()) continue;
    for (std::size_t t = 0; t < kNumArgumentTypes; ++t) z[t] += folded_weights_[t][it->second] * value;
  }
  std::array<double, kNumArgumentTypes> p{};
  for (std::size_t t = 0; t < kNumArgumentTypes; ++t) p[t] = Sigmoid(z[t]);
  return p;
}

ArgumentType LogLinearModel::PredictType(const FeatureVector& x) const {
  const auto p = PredictProba(x);
  std::size_t best = 0;
  for (std::size_t t = 1; t < kNumArgumentTypes; ++t) {
    if (p[t] > p[best]) best = t;
  }
  return kAllArgumentTypes[best];
}

void LogLinearModel::RebuildIndex() {
  index_.clear();
  for (std::size_t j = 0; j < names_.size(); ++j) index_.emplace(names_[j], j);
  for (std::size_t t = 0; t < kNumArgumentTypes; ++t) {
    std::vector<double>& folded = folded_weights_[t];
    folded.assign(names_.size(), 0.0);
    double bias = per_type_[t].bias;
    for (const auto& [name, w] : per_type_[t].weights) {
      auto it = index_.find(name);
      if (it == index_.end()) throw ValidationError("weight for unknown feature '" + name + "'");
      const std::size_t j = it->second;
      if (standardized_) {
        folded[j] = w / scales_[j];
        bias -= folded[j] * means_[j];
      } else {
        folded[j] = w;
      }
    }
    folded_bias_[t] = bias;
  }
}

LogLinearModel LogLinearModel::FromWeights(std::array<BinaryWeights, kNumArgumentTypes> per_type) {
  LogLinearModel model;
  std::set<std::string> names;
  for (const BinaryWeights& bw : per_type) {
    for (const auto& [name, w] : bw.weights) names.insert(name);
  }
  model.per_type_ = std::move(per_type);
  model.names_.assign(names.begin(), names.end());
  model.config_.standardize = false;
  model.RebuildIndex();
  return model;
}

std::string LogLinearModel::ToJson() const {
  json types = json::object();
  for (ArgumentType type : kAllArgumentTypes) {
    const BinaryWeights& bw = per_type_[Index(type)];
    json weights = json::array();
    for (const auto& [name, w] : bw.weights) weights.push_back({name, w});
    types[std::string(ToString(type))] = {{"bias", bw.bias}, {"weights", std::move(weights)}};
  }
  json epochs = json::array();
  for (const DescentTrace& t : traces_) epochs.push_back(t.epochs);
  json out = {{"format", kModelFormat},
              {"features", names_},
              {"standardized", standardized_},
              {"types", std::move(types)},
              {"config", ConfigToJson(config_)},
              {"epochs", std::move(epochs)}};
  if (standardized_) {
    out["means"] = means_;
    out["scales"] = scales_;
  }
  return out.dump(1);
}

LogLinearModel LogLinearModel::FromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat) {
      throw ValidationError("unsupported type-classifier model format '" +
                            j.at("format").get<std::string>() + "'");
    }
    LogLinearModel model;
    model.names_ = j.at("features").get<std::vector<std::string>>();
    model.standardized_ = j.at("standardized").get<bool>();
    if (model.standardized_) {
      model.means_ = j.at("means").get<std::vector<double>>();
      model.scales_ = j.at("scales").get<std::vector<double>>();
      if (model.means_.size() != model.names_.size() ||
          model.scales_.size() != model.names_.size()) {
        throw ValidationError("scaling vectors do not match the feature list");
      }
    }
    model.config_ = ConfigFromJson(j.at("config"));
    const json& types = j.at("types");
    for (ArgumentType type : kAllArgumentTypes) {
      const json& t = types.at(std::string(ToString(type)));
      BinaryWeights& bw = model.per_type_[Index(type)];
      bw.bias = t.at("bias").get<double>();
      for (const json& entry : t.at("weights")) {
        bw.weights.emplace(entry.at(0).get<std::string>(), entry.at(1).get<double>());
      }
    }
    if (j.contains("epochs")) {
      const auto epochs = j.at("epochs").get<std::vector<int>>();
      for (std::size_t t = 0; t < std::min(epochs.size(), kNumArgumentTypes); ++t) {
        model.traces_[t].epochs = epochs[t];
      }
    }
    model.RebuildIndex();
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed type-classifier model: ") + e.what());
  }
}

void LogLinearModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file '" + path.string() + "'");
  out << ToJson() << '\n';
}

LogLinearModel LogLinearModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

LogLinearModel TrainTypeClassifier(std::span<const TypeInstance> instances,
                                   const TrainConfig& config) {
  config.Validate();
  std::set<ArgumentType> present;
  std::set<std::string> name_set;
  for (const TypeInstance& inst : instances) {
    present.insert(inst.type);
    for (const auto& [name, value] : inst.features) {
      if (!std::isfinite(value)) throw InvalidArgument("non-finite value for feature '" + name + "'");
      name_set.insert(name);
    }
  }
  if (present.size() < 2) {
    throw InvalidArgument("type classifier needs at least two distinct argument types, got " +
                          std::to_string(present.size()));
  }

  LogLinearModel model;
  model.config_ = config;
  model.names_.assign(name_set.begin(), name_set.end());
  const std::size_t d = model.names_.size();
  std::map<std::string_view, std::size_t> column;
  for (std::size_t j = 0; j < d; ++j) column.emplace(model.names_[j], j);

  SparseMatrix x;
  x.cols = d;
  std::vector<std::pair<std::size_t, double>> row;
  for (const TypeInstance& inst : instances) {
    row.clear();
    for (const auto& [name, value] : inst.features) row.emplace_back(column.at(name), value);
    x.AppendRow(row);
  }

  const double n = static_cast<double>(instances.size());
  if (config.standardize) {
    model.standardized_ = true;
    std::vector<double> sum(d, 0.0);
    std::vector<double> sum_sq(d, 0.0);
    for (std::size_t k = 0; k < x.col.size(); ++k) {
      sum[x.col[k]] += x.value[k];
      sum_sq[x.col[k]] += x.value[k] * x.value[k];
    }
    model.means_.resize(d);
    model.scales_.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double mean = sum[j] / n;
      const double var = std::max(0.0, sum_sq[j] / n - mean * mean);
      model.means_[j] = mean;
      model.scales_[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
    }
  }

  for (ArgumentType type : kAllArgumentTypes) {
    std::vector<double> labels;
    labels.reserve(instances.size());
    for (const TypeInstance& inst : instances) labels.push_back(inst.type == type ? 1.0 : 0.0);
    LogisticObjective objective(x, std::move(labels), config.l2, model.means_, model.scales_);
    std::vector<double> params(d + 1, 0.0);
    model.traces_[Index(type)] = MinimizeLogistic(objective, params, config);
    BinaryWeights& bw = model.per_type_[Index(type)];
    for (std::size_t j = 0; j < d; ++j) bw.weights.emplace(model.names_[j], params[j]);
    bw.bias = params[d];
  }
  model.RebuildIndex();
  return model;
}

std::string_view ToString(TypePolicy policy) {
  return policy == TypePolicy::kPredictedEverywhere ? "predicted" : "gold";
}

TypePolicy ParseTypePolicy(std::string_view name) {
  if (name == "predicted" || name == "predicted-everywhere") return TypePolicy::kPredictedEverywhere;
  if (name == "gold" || name == "gold-when-available") return TypePolicy::kGoldWhenAvailable;
  throw InvalidArgument("unknown type policy '" + std::string(name) + "'");
}

Corpus AnnotateCorpusTypes(const Corpus& corpus, const LogLinearModel& model,
                           const TypeFeaturizer& featurize, TypePolicy policy) {
  Corpus out = corpus;
  for (QueryGroup& group : out.groups) {
    for (std::size_t i = 0; i < group.sentences.size(); ++i) {
      AnnotatedSentence& s = group.sentences[i];
      if (policy == TypePolicy::kGoldWhenAvailable && s.gold_type) {
        s.predicted_type = s.gold_type;
      } else {
        s.predicted_type = model.PredictType(featurize(group, i));
      }
    }
  }
  return out;
}

}  // namespace argsup
