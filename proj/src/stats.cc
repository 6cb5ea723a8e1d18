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

#include "argsup/stats.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "argsup/error.h"

namespace argsup {
namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double n = 0.0;
};

Moments ComputeMoments(std::span<const double> x) {
  Moments m;
  m.n = static_cast<double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= m.n;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.variance = x.size() > 1 ? ss / (m.n - 1.0) : 0.0;
  return m;
}

TTestResult Degenerate(double mean_diff, double df) {
  if (mean_diff == 0.0) return {0.0, df, 1.0};
  return {std::copysign(std::numeric_limits<double>::infinity(), mean_diff), df, 0.0};
}

}  // namespace

double StudentTwoSidedP(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  // P(|T| > |t|) = I_{df / (df + t^2)}(df / 2, 1 / 2).
  const double x = df / (df + t * t);
  return std::clamp(boost::math::ibeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

TTestResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidArgument("t-test samples need at least 2 values");
  const Moments ma = ComputeMoments(a);
  const Moments mb = ComputeMoments(b);
  const double va = ma.variance / ma.n;
  const double vb = mb.variance / mb.n;
  const double se2 = va + vb;
  if (se2 == 0.0) return Degenerate(ma.mean - mb.mean, ma.n + mb.n - 2.0);
  TTestResult r;
  r.t = (ma.mean - mb.mean) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (ma.n - 1.0) + vb * vb / (mb.n - 1.0));
  r.p_two_sided = StudentTwoSidedP(r.t, r.df);
  return r;
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("paired t-test needs equal-length samples");
  if (a.size() < 2) throw InvalidArgument("t-test samples need at least 2 values");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  const Moments m = ComputeMoments(diff);
  const double df = m.n - 1.0;
  if (m.variance == 0.0) return Degenerate(m.mean, df);
  TTestResult r;
  r.t = m.mean / std::sqrt(m.variance / m.n);
  r.df = df;
  r.p_two_sided = StudentTwoSidedP(r.t, r.df);
  return r;
}

std::vector<double> BonferroniCorrect(std::span<const double> p_values) {
  const double m = static_cast<double>(p_values.size());
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) out.push_back(std::min(1.0, p * m));
  return out;
}

int SignificanceStars(double p) {
  if (p < 1e-10) return 4;
  if (p < 1e-5) return 3;
  if (p < 1e-3) return 2;
  if (p < 0.05) return 1;
  return 0;
}

int RatioArrows(double larger, double smaller) {
  if (smaller <= 0.0 || larger <= 0.0) return 4;
  const double ratio = larger / smaller;
  if (ratio < 2.0) return 1;
  if (ratio < 3.0) return 2;
  if (ratio < 4.0) return 3;
  return 4;
}

std::string SignificanceCell::Marker() const {
  if (!sufficient) return "n/a";
  if (stars == 0) return "-";
  return std::string(static_cast<std::size_t>(stars), '*') +
         std::string(static_cast<std::size_t>(arrows), up ? '^' : 'v');
}

SignificanceReport FeatureSignificanceReport(std::span<const TypedObservation> observations,
                                             std::span<const std::string> feature_names) {
  SignificanceReport report;
  std::vector<std::size_t> tested;
  std::vector<double> raw;
  for (const std::string& feature : feature_names) {
    for (ArgumentType type : kAllArgumentTypes) {
      SignificanceCell cell;
      cell.feature = feature;
      cell.type = type;
      std::vector<double> supporting;
      std::vector<double> other;
      for (const TypedObservation& obs : observations) {
        if (obs.type != type) continue;
        (obs.relevance == 1 ? supporting : other).push_back(obs.features->Get(feature));
      }
      cell.n_supporting = supporting.size();
      cell.n_other = other.size();
      const auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return v.empty() ? 0.0 : s / static_cast<double>(v.size());
      };
      cell.mean_supporting = mean(supporting);
      cell.mean_other = mean(other);
      cell.sufficient = supporting.size() >= 2 && other.size() >= 2;
      if (cell.sufficient) {
        cell.test = WelchTTest(supporting, other);
        tested.push_back(report.cells.size());
        raw.push_back(cell.test.p_two_sided);
      }
      report.cells.push_back(std::move(cell));
    }
  }
  report.comparisons = raw.size();
  const std::vector<double> corrected = BonferroniCorrect(raw);
  for (std::size_t k = 0; k < tested.size(); ++k) {
    SignificanceCell& cell = report.cells[tested[k]];
    cell.corrected_p = corrected[k];
    cell.stars = SignificanceStars(cell.corrected_p);
    cell.up = cell.mean_supporting > cell.mean_other;
    const double larger = std::max(cell.mean_supporting, cell.mean_other);
    const double smaller = std::min(cell.mean_supporting, cell.mean_other);
    cell.arrows = cell.stars > 0 ? RatioArrows(larger, smaller) : 0;
  }
  return report;
}

std::string SignificanceReport::FormatTable() const {
  std::ostringstream out;
  std::size_t width = std::string("feature").size();
  for (const SignificanceCell& c : cells) width = std::max(width, c.feature.size());
  out << std::left << std::setw(static_cast<int>(width)) << "feature";
  for (ArgumentType type : kAllArgumentTypes) out << "  " << std::setw(10) << ToString(type);
  out << '\n';
  for (std::size_t i = 0; i + kNumArgumentTypes <= cells.size(); i += kNumArgumentTypes) {
    out << std::setw(static_cast<int>(width)) << cells[i].feature;
    for (std::size_t t = 0; t < kNumArgumentTypes; ++t) {
      out << "  " << std::setw(10) << cells[i + t].Marker();
    }
    out << '\n';
  }
  out << "comparisons: " << comparisons << '\n';
  return out.str();
}

std::string SignificanceReport::FormatTsv() const {
  std::ostringstream out;
  out << "feature\ttype\tn_supporting\tn_other\tmean_supporting\tmean_other\tt\tdf\tp\tp_bonferroni"
         "\tmarker\n";
  out << std::setprecision(6);
  for (const SignificanceCell& c : cells) {
    out << c.feature << '\t' << ToString(c.type) << '\t' << c.n_supporting << '\t' << c.n_other
        << '\t' << c.mean_supporting << '\t' << c.mean_other << '\t';
    if (c.sufficient) {
      out << c.test.t << '\t' << c.test.df << '\t' << c.test.p_two_sided << '\t' << c.corrected_p;
    } else {
      out << "-\t-\t-\t-";
    }
    out << '\t' << c.Marker() << '\n';
  }
  return out.str();
}

}  // namespace argsup
