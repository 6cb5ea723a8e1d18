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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "argsup/error.h"
#include "argsup/stats.h"

namespace argsup {
namespace {

// Two-sided Student-t p-value by Simpson integration of the density from 0
// to |t|.
double OracleTwoSidedP(double t, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * std::numbers::pi);
  const auto density = [&](double x) { return c * std::pow(1 + x * x / df, -(df + 1) / 2); };
  const int n = 20000;
  const double b = std::abs(t);
  const double h = b / n;
  double sum = density(0) + density(b);
  for (int i = 1; i < n; ++i) sum += density(i * h) * (i % 2 == 1 ? 4 : 2);
  return 1.0 - 2.0 * (sum * h / 3);
}

TEST_CASE("Welch test fixture") {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {2, 3, 4};
  const TTestResult r = WelchTTest(a, b);
  CHECK(r.t == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(r.df == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.p_two_sided == doctest::Approx(0.2879).epsilon(1e-3));
  CHECK(r.p_two_sided == doctest::Approx(OracleTwoSidedP(r.t, r.df)).epsilon(1e-8));
}

TEST_CASE("Welch p-values agree with numeric integration") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(2 + rng() % 10);
    std::vector<double> b(2 + rng() % 10);
    for (double& v : a) v = normal(rng);
    for (double& v : b) v = 0.5 + 2.0 * normal(rng);
    const TTestResult r = WelchTTest(a, b);
    CHECK(r.p_two_sided == doctest::Approx(OracleTwoSidedP(r.t, r.df)).epsilon(1e-7));
  }
}

TEST_CASE("Welch degenerate and extreme cases") {
  const std::vector<double> a = {1, 2, 3, 4};
  const TTestResult same = WelchTTest(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p_two_sided == doctest::Approx(1.0));

  const std::vector<double> constant = {5, 5, 5};
  const TTestResult flat = WelchTTest(constant, constant);
  CHECK(flat.t == 0.0);
  CHECK(flat.p_two_sided == 1.0);

  std::vector<double> shifted;
  std::vector<double> base;
  for (int i = 0; i < 10; ++i) {
    base.push_back(0.1 * i);
    shifted.push_back(100 + 0.1 * i);
  }
  CHECK(WelchTTest(shifted, base).p_two_sided < 1e-6);
  CHECK_THROWS_AS(WelchTTest(std::vector<double>{1}, a), InvalidArgument);
}

TEST_CASE("paired test") {
  const std::vector<double> a = {1, 2, 3, 5};
  const std::vector<double> b = {0, 2, 1, 3};
  const TTestResult r = PairedTTest(a, b);
  // Differences 1, 0, 2, 2: mean 1.25, sd 0.9574.
  CHECK(r.t == doctest::Approx(1.25 / (0.957427 / 2)).epsilon(1e-5));
  CHECK(r.df == 3.0);
  CHECK_THROWS_AS(PairedTTest(a, std::vector<double>{1, 2}), InvalidArgument);
}

TEST_CASE("Bonferroni correction") {
  const std::vector<double> hundred(100, 0.01);
  for (double p : BonferroniCorrect(hundred)) CHECK(p == 1.0);
  const std::vector<double> two = {0.01, 0.2};
  CHECK(BonferroniCorrect(two) == std::vector<double>{0.02, 0.4});
}

TEST_CASE("property: Bonferroni never lowers p and caps at 1") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> p(1 + rng() % 30);
    for (double& v : p) v = u(rng);
    const std::vector<double> corrected = BonferroniCorrect(p);
    REQUIRE(corrected.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(corrected[i] >= p[i]);
      CHECK(corrected[i] <= 1.0);
    }
  }
}

TEST_CASE("stars and arrows") {
  CHECK(SignificanceStars(0.2) == 0);
  CHECK(SignificanceStars(0.01) == 1);
  CHECK(SignificanceStars(1e-4) == 2);
  CHECK(SignificanceStars(1e-8) == 3);
  CHECK(SignificanceStars(1e-12) == 4);
  CHECK(RatioArrows(1.5, 1.0) == 1);
  CHECK(RatioArrows(2.5, 1.0) == 2);
  CHECK(RatioArrows(3.5, 1.0) == 3);
  CHECK(RatioArrows(9.0, 1.0) == 4);
  CHECK(RatioArrows(1.0, 0.0) == 4);
}

struct PlantedData {
  std::vector<FeatureVector> features;
  std::vector<TypedObservation> observations;
};

PlantedData Planted(bool constant) {
  PlantedData data;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  for (ArgumentType type : kAllArgumentTypes) {
    for (int i = 0; i < 60; ++i) {
      const int relevance = i < 20 ? 1 : 0;
      FeatureVector fv;
      double f = 5.0 + normal(rng);
      if (type == ArgumentType::kStudy && relevance == 1) f += 10.0;
      fv.Set("bas:f", constant ? 3.0 : f);
      fv.Set("bas:noise", 5.0 + normal(rng));
      data.features.push_back(fv);
      data.observations.push_back({nullptr, relevance, type});
    }
  }
  for (std::size_t i = 0; i < data.features.size(); ++i) {
    data.observations[i].features = &data.features[i];
  }
  return data;
}

TEST_CASE("planted feature is significant only for its type") {
  const PlantedData data = Planted(false);
  const std::vector<std::string> names = {"bas:f", "bas:noise"};
  const SignificanceReport report = FeatureSignificanceReport(data.observations, names);
  CHECK(report.comparisons == 8);
  REQUIRE(report.cells.size() == 8);
  for (const SignificanceCell& cell : report.cells) {
    CHECK(cell.sufficient);
    CHECK(cell.n_supporting == 20);
    CHECK(cell.n_other == 40);
    CHECK(cell.corrected_p == doctest::Approx(std::min(1.0, cell.test.p_two_sided * 8)));
    if (cell.feature == "bas:f" && cell.type == ArgumentType::kStudy) {
      CHECK(cell.stars > 0);
      CHECK(cell.up);
      CHECK(cell.Marker().find('^') != std::string::npos);
    } else if (cell.feature == "bas:f") {
      CHECK(cell.Marker() == "-");
    }
  }
  CHECK(report.FormatTable().find("comparisons: 8") != std::string::npos);
  CHECK(report.FormatTsv().rfind("feature\ttype\t", 0) == 0);
}

TEST_CASE("constant feature is never significant") {
  const PlantedData data = Planted(true);
  const std::vector<std::string> names = {"bas:f"};
  const SignificanceReport report = FeatureSignificanceReport(data.observations, names);
  for (const SignificanceCell& cell : report.cells) CHECK(cell.Marker() == "-");
}

TEST_CASE("thin cells are marked insufficient") {
  FeatureVector fv;
  fv.Set("bas:f", 1.0);
  const std::vector<TypedObservation> observations = {
      {&fv, 1, ArgumentType::kOpinion}, {&fv, 0, ArgumentType::kOpinion},
      {&fv, 0, ArgumentType::kOpinion}};
  const std::vector<std::string> names = {"bas:f"};
  const SignificanceReport report = FeatureSignificanceReport(observations, names);
  CHECK(report.comparisons == 0);
  for (const SignificanceCell& cell : report.cells) CHECK(cell.Marker() == "n/a");
}

}  // namespace
}  // namespace argsup
