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

#ifndef ARGSUP_STATS_H_
#define ARGSUP_STATS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "argsup/corpus.h"
#include "argsup/features.h"

namespace argsup {

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
};

// Welch's unequal-variance two-sample t-test. Both samples need >= 2 values.
// When both variances are zero the test is degenerate: equal means give
// t = 0, p = 1; different means give t = +-inf, p = 0.
TTestResult WelchTTest(std::span<const double> a, std::span<const double> b);

// Paired t-test on equal-length samples (differences a_i - b_i).
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);

// Two-sided p-value of a Student t statistic.
double StudentTwoSidedP(double t, double df);

// min(1, p * comparisons) for every entry.
std::vector<double> BonferroniCorrect(std::span<const double> p_values);

// Significance stars: p < 0.05, 1e-3, 1e-5, 1e-10 give 1 to 4 stars.
int SignificanceStars(double p);

// Arrow count for the ratio of the larger mean over the smaller one:
// ratio < 2 -> 1, < 3 -> 2, < 4 -> 3, otherwise (or a non-positive smaller
// mean) 4.
int RatioArrows(double larger, double smaller);

struct SignificanceCell {
  std::string feature;
  ArgumentType type = ArgumentType::kStudy;
  std::size_t n_supporting = 0;
  std::size_t n_other = 0;
  double mean_supporting = 0.0;
  double mean_other = 0.0;
  bool sufficient = false;  // both groups hold >= 2 sentences
  TTestResult test;
  double corrected_p = 1.0;
  int stars = 0;            // after correction; 0 = not significant
  bool up = false;          // supporting mean is the larger one
  int arrows = 0;

  // "**^^", "**vv" or "-"; "n/a" for insufficient data.
  std::string Marker() const;
};

struct SignificanceReport {
  std::vector<SignificanceCell> cells;  // feature-major, types in canonical order
  std::size_t comparisons = 0;

  // Aligned text table, one row per feature, one column per type.
  std::string FormatTable() const;
  // Tab-separated, one row per cell.
  std::string FormatTsv() const;
};

// One analysed sentence: its features, relevance and assigned type.
struct TypedObservation {
  const FeatureVector* features = nullptr;
  int relevance = 0;
  ArgumentType type = ArgumentType::kStudy;
};

// For every (feature, type) cell, splits that type's sentences into
// supporting vs. other, runs Welch's test and applies a Bonferroni
// correction over all cells with sufficient data.
SignificanceReport FeatureSignificanceReport(std::span<const TypedObservation> observations,
                                             std::span<const std::string> feature_names);

}  // namespace argsup

#endif  // ARGSUP_STATS_H_
