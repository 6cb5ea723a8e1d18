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

#include "argsup/ranker.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "argsup/error.h"
#include "argsup/metrics.h"
#include "json.hpp"

namespace argsup {
namespace {

using nlohmann::json;

constexpr const char* kModelFormat = "argsup-lambdamart/1";
constexpr double kLeafEpsilon = 1e-9;

// Positions (0-based) of every item in the score-sorted order.
std::vector<std::size_t> RankPositions(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::size_t> position(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) position[order[r]] = r;
  return position;
}

struct SplitStats {
  double sum = 0.0;
  double hess = 0.0;
  std::size_t count = 0;
};

struct SplitCandidate {
  double gain = -std::numeric_limits<double>::infinity();
  int feature = -1;
  double threshold = 0.0;
};

// Relative margin a candidate gain must clear to replace the incumbent, so
// mathematically tied splits keep the earlier (feature, threshold) regardless
// of summation order.
constexpr double kGainTieTolerance = 1e-10;

bool BetterGain(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return candidate > incumbent;
  return candidate > incumbent + kGainTieTolerance * std::max(1.0, std::abs(incumbent));
}

double Term(double sum, std::size_t count) {
  return count == 0 ? 0.0 : sum * sum / static_cast<double>(count);
}

// Running scan state of one node over one sorted column.
struct Scanner {
  SplitStats node;        // whole node
  SplitStats nonzero;     // entries present in the column
  double left_sum = 0.0;
  std::size_t left_count = 0;
  double prev = 0.0;
  bool has_prev = false;
  bool zero_done = false;
  SplitCandidate best;

  void Reset() {
    nonzero = {};
    left_sum = 0.0;
    left_count = 0;
    has_prev = false;
    zero_done = false;
  }

  void Push(double value, double sum, std::size_t count, int feature, std::size_t min_leaf) {
    if (has_prev && value != prev) {
      const std::size_t right_count = node.count - left_count;
      if (left_count >= min_leaf && right_count >= min_leaf) {
        const double gain = Term(left_sum, left_count) + Term(node.sum - left_sum, right_count) -
                            Term(node.sum, node.count);
        if (BetterGain(gain, best.gain)) {
          double threshold = prev + (value - prev) / 2.0;
          if (!(threshold < value)) threshold = prev;
          best = {gain, feature, threshold};
        }
      }
    }
    left_sum += sum;
    left_count += count;
    prev = value;
    has_prev = true;
  }

  void PushZeroBlock(int feature, std::size_t min_leaf) {
    zero_done = true;
    const std::size_t zeros = node.count - nonzero.count;
    if (zeros > 0) Push(0.0, node.sum - nonzero.sum, zeros, feature, min_leaf);
  }
};

class TreeBuilder {
 public:
  TreeBuilder(const ColumnDataset& data, std::span<const double> targets,
              std::span<const double> hessians, const TreeParams& params,
              std::span<const std::uint32_t> rows, std::span<const std::uint32_t> features)
      : data_(data), targets_(targets), hessians_(hessians), params_(params) {
    if (rows.empty()) {
      sample_.resize(data.num_rows());
      std::iota(sample_.begin(), sample_.end(), 0u);
    } else {
      sample_.assign(rows.begin(), rows.end());
    }
    if (features.empty()) {
      features_.resize(data.num_features());
      std::iota(features_.begin(), features_.end(), 0u);
    } else {
      features_.assign(features.begin(), features.end());
      std::sort(features_.begin(), features_.end());
    }
  }

  FittedTree Build() {
    node_of_.assign(data_.num_rows(), -1);
    go_left_.assign(data_.num_rows(), 0);
    double total_sq = 0.0;
    BuildNode root;
    for (std::uint32_t r : sample_) {
      node_of_[r] = 0;
      root.stats.sum += targets_[r];
      root.stats.hess += hessians_[r];
      ++root.stats.count;
      total_sq += targets_[r] * targets_[r];
    }
    root.rows = sample_;
    nodes_.push_back(std::move(root));
    min_gain_ = 1e-12 * std::max(1.0, total_sq);

    FindBestSplits({0});
    int leaves = 1;
    while (leaves < params_.max_leaves) {
      int chosen = -1;
      for (std::size_t id = 0; id < nodes_.size(); ++id) {
        const BuildNode& n = nodes_[id];
        if (n.split || n.best.feature < 0 || !(n.best.gain > min_gain_)) continue;
        if (chosen < 0 || BetterGain(n.best.gain, nodes_[static_cast<std::size_t>(chosen)].best.gain)) {
          chosen = static_cast<int>(id);
        }
      }
      if (chosen < 0) break;
      Split(chosen);
      ++leaves;
    }
    return Finish();
  }

 private:
  struct BuildNode {
    SplitStats stats;
    std::vector<std::uint32_t> rows;
    SplitCandidate best;
    bool split = false;
    int left = -1;
    int right = -1;
  };

  std::size_t MinLeaf() const { return static_cast<std::size_t>(std::max(1, params_.min_leaf_instances)); }

  void FindBestSplits(const std::vector<int>& ids) {
    std::vector<Scanner> scanners(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) scanners[k].node = nodes_[static_cast<std::size_t>(ids[k])].stats;
    const auto slot = [&](std::uint32_t row) -> int {
      const int node = node_of_[row];
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if (ids[k] == node) return static_cast<int>(k);
      }
      return -1;
    };
    const std::size_t min_leaf = MinLeaf();
    for (std::uint32_t f : features_) {
      const auto& column = data_.column(f);
      const int feature = static_cast<int>(f);
      for (Scanner& s : scanners) s.Reset();
      for (const auto& e : column) {
        const int k = slot(e.row);
        if (k < 0) continue;
        scanners[static_cast<std::size_t>(k)].nonzero.sum += targets_[e.row];
        ++scanners[static_cast<std::size_t>(k)].nonzero.count;
      }
      for (const auto& e : column) {
        const int k = slot(e.row);
        if (k < 0) continue;
        Scanner& s = scanners[static_cast<std::size_t>(k)];
        if (e.value > 0.0 && !s.zero_done) s.PushZeroBlock(feature, min_leaf);
        s.Push(e.value, targets_[e.row], 1, feature, min_leaf);
      }
      for (Scanner& s : scanners) {
        if (!s.zero_done) s.PushZeroBlock(feature, min_leaf);
      }
    }
    for (std::size_t k = 0; k < ids.size(); ++k) nodes_[static_cast<std::size_t>(ids[k])].best = scanners[k].best;
  }

  void Split(int id) {
    const SplitCandidate best = nodes_[static_cast<std::size_t>(id)].best;
    std::vector<std::uint32_t> rows = std::move(nodes_[static_cast<std::size_t>(id)].rows);
    const auto f = static_cast<std::size_t>(best.feature);
    const char zero_left = 0.0 <= best.threshold ? 1 : 0;
    for (std::uint32_t r : rows) go_left_[r] = zero_left;
    for (const auto& e : data_.column(f)) {
      if (node_of_[e.row] == id) go_left_[e.row] = e.value <= best.threshold ? 1 : 0;
    }
    BuildNode left;
    BuildNode right;
    for (std::uint32_t r : rows) {
      BuildNode& child = go_left_[r] ? left : right;
      child.rows.push_back(r);
      child.stats.sum += targets_[r];
      child.stats.hess += hessians_[r];
      ++child.stats.count;
    }
    const int left_id = static_cast<int>(nodes_.size());
    const int right_id = left_id + 1;
    for (std::uint32_t r : left.rows) node_of_[r] = left_id;
    for (std::uint32_t r : right.rows) node_of_[r] = right_id;
    nodes_.push_back(std::move(left));
    nodes_.push_back(std::move(right));
    BuildNode& parent = nodes_[static_cast<std::size_t>(id)];
    parent.split = true;
    parent.left = left_id;
    parent.right = right_id;
    FindBestSplits({left_id, right_id});
  }

  FittedTree Finish() {
    std::vector<RegressionTree::Node> out(nodes_.size());
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      const BuildNode& n = nodes_[id];
      RegressionTree::Node& node = out[id];
      if (n.split) {
        node.feature = data_.names()[static_cast<std::size_t>(n.best.feature)];
        node.threshold = n.best.threshold;
        node.left = n.left;
        node.right = n.right;
      } else {
        node.value = n.stats.sum / (n.stats.hess + kLeafEpsilon);
      }
    }
    FittedTree fitted{RegressionTree(std::move(out)), std::vector<int>(data_.num_rows(), -1)};
    for (std::size_t r = 0; r < data_.num_rows(); ++r) {
      if (node_of_[r] >= 0) {
        fitted.leaf_of_row[r] = node_of_[r];
        continue;
      }
      int id = 0;
      while (nodes_[static_cast<std::size_t>(id)].split) {
        const BuildNode& n = nodes_[static_cast<std::size_t>(id)];
        const double x = data_.Value(r, static_cast<std::size_t>(n.best.feature));
        id = x <= n.best.threshold ? n.left : n.right;
      }
      fitted.leaf_of_row[r] = id;
    }
    return fitted;
  }

  const ColumnDataset& data_;
  std::span<const double> targets_;
  std::span<const double> hessians_;
  TreeParams params_;
  std::vector<std::uint32_t> sample_;
  std::vector<std::uint32_t> features_;
  std::vector<BuildNode> nodes_;
  std::vector<int> node_of_;
  std::vector<char> go_left_;
  double min_gain_ = 0.0;
};

json ConfigToJson(const RankerConfig& c) {
  return {{"num_trees", c.num_trees},
          {"shrinkage", c.shrinkage},
          {"max_leaves", c.max_leaves},
          {"min_leaf_instances", c.min_leaf_instances ? json(*c.min_leaf_instances) : json("auto")},
          {"sigma", c.sigma},
          {"seed", c.seed},
          {"row_subsample", c.row_subsample},
          {"feature_subsample", c.feature_subsample}};
}

RankerConfig ConfigFromJson(const json& j) {
  RankerConfig c;
  c.num_trees = j.at("num_trees").get<int>();
  c.shrinkage = j.at("shrinkage").get<double>();
  c.max_leaves = j.at("max_leaves").get<int>();
  const json& m = j.at("min_leaf_instances");
  if (m.is_number_integer()) c.min_leaf_instances = m.get<int>();
  c.sigma = j.at("sigma").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.row_subsample = j.value("row_subsample", 1.0);
  c.feature_subsample = j.value("feature_subsample", 1.0);
  return c;
}

std::vector<std::uint32_t> SampleIndices(std::size_t n, double fraction, std::mt19937_64& rng) {
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  if (fraction >= 1.0) return {};
  const std::size_t keep = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(keep);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

void RankerConfig::Validate() const {
  if (num_trees < 0) throw InvalidArgument("number of trees must be >= 0");
  if (!(shrinkage > 0.0)) throw InvalidArgument("shrinkage must be > 0");
  if (max_leaves < 2) throw InvalidArgument("max leaves must be >= 2");
  if (min_leaf_instances && *min_leaf_instances < 1) {
    throw InvalidArgument("min instances per leaf must be >= 1");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("sigmoid scale must be > 0");
  if (!(row_subsample > 0.0 && row_subsample <= 1.0) ||
      !(feature_subsample > 0.0 && feature_subsample <= 1.0)) {
    throw InvalidArgument("subsample fractions must be in (0, 1]");
  }
}

int RankerConfig::ResolveMinLeaf(std::size_t num_instances) const {
  if (min_leaf_instances) return *min_leaf_instances;
  return std::max(1, static_cast<int>(num_instances / 100));
}

LambdaResult LambdaGradients(std::span<const double> scores, std::span<const int> labels,
                             double sigma) {
  if (scores.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
  if (scores.empty()) throw InvalidArgument("lambda gradients need at least one item");
  for (double s : scores) {
    if (!std::isfinite(s)) throw InvalidArgument("non-finite score");
  }
  const std::size_t n = scores.size();
  LambdaResult result{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

  std::vector<int> ideal(labels.begin(), labels.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = Dcg(ideal);
  if (idcg <= 0.0) return result;

  const std::vector<std::size_t> position = RankPositions(scores);
  const auto discount = [&position](std::size_t i) {
    return 1.0 / std::log2(static_cast<double>(position[i]) + 2.0);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (labels[i] <= labels[j]) continue;
      const double gain_diff = std::exp2(labels[i]) - std::exp2(labels[j]);
      const double delta = std::abs(gain_diff * (discount(i) - discount(j))) / idcg;
      const double rho = 1.0 / (1.0 + std::exp(sigma * (scores[i] - scores[j])));
      const double lambda = sigma * rho * delta;
      const double hessian = sigma * sigma * rho * (1.0 - rho) * delta;
      result.lambdas[i] += lambda;
      result.lambdas[j] -= lambda;
      result.hessians[i] += hessian;
      result.hessians[j] += hessian;
    }
  }
  return result;
}

ColumnDataset::ColumnDataset(std::span<const FeatureVector> rows) {
  std::set<std::string_view> names;
  for (const FeatureVector& fv : rows) {
    for (const auto& [name, value] : fv) names.insert(name);
  }
  names_.assign(names.begin(), names.end());
  std::map<std::string_view, std::uint32_t> index;
  for (std::size_t j = 0; j < names_.size(); ++j) index.emplace(names_[j], static_cast<std::uint32_t>(j));
  columns_.resize(names_.size());
  row_entries_.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [name, value] : rows[r]) {
      const std::uint32_t j = index.at(name);
      columns_[j].push_back({value, static_cast<std::uint32_t>(r)});
      row_entries_[r].emplace_back(j, value);
    }
    std::sort(row_entries_[r].begin(), row_entries_[r].end());
  }
  for (auto& column : columns_) {
    std::stable_sort(column.begin(), column.end(),
                     [](const Entry& a, const Entry& b) { return a.value < b.value; });
  }
}

double ColumnDataset::Value(std::size_t row, std::size_t feature) const {
  const auto& entries = row_entries_[row];
  auto it = std::lower_bound(entries.begin(), entries.end(), static_cast<std::uint32_t>(feature),
                             [](const auto& e, std::uint32_t f) { return e.first < f; });
  return it != entries.end() && it->first == feature ? it->second : 0.0;
}

RegressionTree::RegressionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ValidationError("regression tree has no nodes");
  for (const Node& n : nodes_) {
    const bool leaf = n.left < 0 && n.right < 0;
    const auto valid = [this](int child) {
      return child > 0 && static_cast<std::size_t>(child) < nodes_.size();
    };
    if (!leaf && (!valid(n.left) || !valid(n.right))) {
      throw ValidationError("regression tree node has an invalid child");
    }
  }
}

double RegressionTree::Predict(const FeatureVector& x) const {
  std::size_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const Node& n = nodes_[id];
    id = static_cast<std::size_t>(x.Get(n.feature) <= n.threshold ? n.left : n.right);
  }
  return nodes_[id].value;
}

std::size_t RegressionTree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

FittedTree FitRegressionTree(const ColumnDataset& data, std::span<const double> targets,
                             std::span<const double> hessians, const TreeParams& params,
                             std::span<const std::uint32_t> rows,
                             std::span<const std::uint32_t> features) {
  if (data.num_rows() == 0) throw InvalidArgument("cannot fit a tree to an empty dataset");
  if (targets.size() != data.num_rows() || hessians.size() != data.num_rows()) {
    throw InvalidArgument("targets and hessians must have one entry per row");
  }
  if (params.max_leaves < 1) throw InvalidArgument("max leaves must be positive");
  return TreeBuilder(data, targets, hessians, params, rows, features).Build();
}

Ensemble::Ensemble(std::vector<RegressionTree> trees, double shrinkage, double base_score)
    : trees_(std::move(trees)), shrinkage_(shrinkage), base_score_(base_score) {}

double Ensemble::Score(const FeatureVector& x) const {
  double sum = 0.0;
  for (const RegressionTree& t : trees_) sum += t.Predict(x);
  return base_score_ + shrinkage_ * sum;
}

std::string Ensemble::ToJson() const {
  json trees = json::array();
  for (const RegressionTree& t : trees_) {
    json nodes = json::array();
    for (const RegressionTree::Node& n : t.nodes()) {
      if (n.is_leaf()) {
        nodes.push_back({{"leaf", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  json out = {{"format", kModelFormat},
              {"shrinkage", shrinkage_},
              {"base_score", base_score_},
              {"config", ConfigToJson(config_)},
              {"trees", std::move(trees)}};
  return out.dump();
}

Ensemble Ensemble::FromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat) {
      throw ValidationError("unsupported ranker model format '" + j.at("format").get<std::string>() +
                            "'");
    }
    std::vector<RegressionTree> trees;
    for (const json& t : j.at("trees")) {
      std::vector<RegressionTree::Node> nodes;
      for (const json& n : t) {
        RegressionTree::Node node;
        if (n.contains("leaf")) {
          node.value = n.at("leaf").get<double>();
        } else {
          node.feature = n.at("feature").get<std::string>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<int>();
          node.right = n.at("right").get<int>();
        }
        nodes.push_back(std::move(node));
      }
      trees.emplace_back(std::move(nodes));
    }
    Ensemble model(std::move(trees), j.at("shrinkage").get<double>(),
                   j.at("base_score").get<double>());
    model.config_ = ConfigFromJson(j.at("config"));
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed ranker model: ") + e.what());
  }
}

void Ensemble::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file '" + path.string() + "'");
  out << ToJson() << '\n';
}

Ensemble Ensemble::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

Ensemble TrainLambdaMart(std::span<const RankGroup> groups, const RankerConfig& config,
                         std::vector<RoundStats>* history) {
  config.Validate();
  bool has_pair = false;
  std::vector<FeatureVector> rows;
  std::vector<std::size_t> offsets;
  for (const RankGroup& g : groups) {
    if (g.features.size() != g.labels.size()) {
      throw InvalidArgument("group '" + g.qid + "' has mismatched features and labels");
    }
    bool pos = false;
    bool neg = false;
    for (int label : g.labels) {
      if (label != 0 && label != 1) throw InvalidArgument("relevance labels must be 0 or 1");
      (label == 1 ? pos : neg) = true;
    }
    has_pair = has_pair || (pos && neg);
    offsets.push_back(rows.size());
    for (const FeatureVector& fv : g.features) {
      for (const auto& [name, value] : fv) {
        if (!std::isfinite(value)) throw InvalidArgument("non-finite value for feature '" + name + "'");
      }
      rows.push_back(fv);
    }
  }
  if (!has_pair) {
    throw InvalidArgument("ranker training needs a group with both relevant and other sentences");
  }

  const ColumnDataset data(rows);
  const TreeParams params{config.max_leaves, config.ResolveMinLeaf(rows.size())};
  std::vector<double> scores(rows.size(), 0.0);
  std::vector<double> lambdas(rows.size(), 0.0);
  std::vector<double> hessians(rows.size(), 0.0);
  std::vector<RegressionTree> trees;
  trees.reserve(static_cast<std::size_t>(config.num_trees));
  std::mt19937_64 rng(config.seed);

  for (int round = 0; round < config.num_trees; ++round) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::size_t begin = offsets[g];
      const std::size_t n = groups[g].labels.size();
      if (n == 0) continue;
      const LambdaResult lr = LambdaGradients(std::span<const double>(scores).subspan(begin, n),
                                              groups[g].labels, config.sigma);
      std::copy(lr.lambdas.begin(), lr.lambdas.end(), lambdas.begin() + static_cast<std::ptrdiff_t>(begin));
      std::copy(lr.hessians.begin(), lr.hessians.end(), hessians.begin() + static_cast<std::ptrdiff_t>(begin));
    }
    const auto row_sample = SampleIndices(rows.size(), config.row_subsample, rng);
    const auto feature_sample = SampleIndices(data.num_features(), config.feature_subsample, rng);
    FittedTree fitted = FitRegressionTree(data, lambdas, hessians, params, row_sample, feature_sample);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto leaf = static_cast<std::size_t>(fitted.leaf_of_row[r]);
      scores[r] += config.shrinkage * fitted.tree.nodes()[leaf].value;
    }
    trees.push_back(std::move(fitted.tree));

    if (history != nullptr || spdlog::should_log(spdlog::level::debug)) {
      std::vector<RelevanceList> ranked;
      double ndcg_sum = 0.0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t n = groups[g].labels.size();
        if (std::find(groups[g].labels.begin(), groups[g].labels.end(), 1) == groups[g].labels.end()) {
          continue;
        }
        const auto position = RankPositions(std::span<const double>(scores).subspan(offsets[g], n));
        RelevanceList list(n);
        for (std::size_t i = 0; i < n; ++i) list[position[i]] = groups[g].labels[i];
        ndcg_sum += Ndcg(list);
        ranked.push_back(std::move(list));
      }
      RoundStats stats{round + 1, MeanReciprocalRank(ranked),
                       ndcg_sum / static_cast<double>(ranked.size())};
      spdlog::debug("round {}: train MRR {:.4f} NDCG {:.4f}", stats.round, stats.mrr, stats.ndcg);
      if (history != nullptr) history->push_back(stats);
    }
  }
  Ensemble model(std::move(trees), config.shrinkage, 0.0);
  model.set_config(config);
  return model;
}

std::vector<ScoredCandidate> SortByScore(std::vector<ScoredCandidate> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.index < b.index;
            });
  return candidates;
}

std::vector<ScoredCandidate> ScoreGroup(const Ensemble& model, const RankGroup& group) {
  std::vector<ScoredCandidate> scored;
  scored.reserve(group.features.size());
  for (std::size_t i = 0; i < group.features.size(); ++i) {
    const std::size_t index = i < group.indices.size() ? group.indices[i] : i;
    scored.push_back({index, model.Score(group.features[i])});
  }
  return SortByScore(std::move(scored));
}

SimilarityMetric ParseSimilarityMetric(std::string_view name) {
  if (name == "tfidf") return SimilarityMetric::kTfidf;
  if (name == "w2v") return SimilarityMetric::kW2v;
  throw InvalidArgument("unknown similarity metric '" + std::string(name) + "'");
}

std::string_view ToString(SimilarityMetric metric) {
  return metric == SimilarityMetric::kTfidf ? "tfidf" : "w2v";
}

std::vector<ScoredCandidate> RankBySimilarity(const QueryGroup& group, SimilarityMetric metric,
                                              const IdfTable& idf,
                                              const EmbeddingTable* embeddings) {
  if (metric == SimilarityMetric::kW2v && embeddings == nullptr) {
    throw InvalidArgument("w2v similarity needs an embedding table");
  }
  const std::vector<std::string> claim = LowercaseWords(group.claim.claim_tokens);
  std::vector<ScoredCandidate> scored;
  for (const AnnotatedSentence& s : group.sentences) {
    const std::vector<std::string> words = LowercaseWords(s.tokens);
    const double score = metric == SimilarityMetric::kTfidf
                             ? TfidfCosine(claim, words, idf)
                             : EmbeddingCosine(claim, words, *embeddings);
    scored.push_back({s.index, score});
  }
  return SortByScore(std::move(scored));
}

}  // namespace argsup
