// Copyright 2026 The quantest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quantest/quantiles.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace quantest {

double SampleQuantile(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) throw Error(ErrorCode::kTooFewObservations, "empty sample");
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kInvalidProbability, "quantile level outside (0, 1)");
  }
  if (n == 1) return sorted[0];
  // The median is handled separately so even n gives the exact midpoint
  // rather than lo + 0.5 * (hi - lo), which can differ in the last bit.
  if (p == 0.5) {
    return n % 2 == 1 ? sorted[n / 2]
                      : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  }
  const double pos = static_cast<double>(n - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= n || frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double SampleQuantile(const Sample& sample, QuantileSpec spec) {
  return SampleQuantile(sample.values(), spec.p());
}

double EmpiricalCdf(std::span<const double> sorted, double x) {
  if (sorted.empty()) throw Error(ErrorCode::kTooFewObservations, "empty sample");
  const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
  return static_cast<double>(count) / static_cast<double>(sorted.size());
}

double EmpiricalCdf(const Sample& sample, double x) {
  return EmpiricalCdf(sample.values(), x);
}

double BahadurEnvelope(std::size_t n) {
  const double dn = static_cast<double>(n);
  const double log_n = std::log(dn);
  return std::pow(dn, -0.75) * std::sqrt(log_n) * std::pow(std::log(log_n), 0.25);
}

BahadurParts BahadurDecompose(const Sample& sample, double true_quantile,
                              double true_density, QuantileSpec spec) {
  if (!(true_density > 0.0) || !std::isfinite(true_density)) {
    throw Error(ErrorCode::kNonpositiveDensity,
                "true density at the quantile must be positive, got " +
                    std::to_string(true_density));
  }
  BahadurParts parts;
  parts.estimate = SampleQuantile(sample, spec);
  parts.linear_term = (spec.p() - EmpiricalCdf(sample, true_quantile)) / true_density;
  parts.remainder = parts.estimate - true_quantile - parts.linear_term;
  parts.envelope = BahadurEnvelope(std::max<std::size_t>(sample.n(), 3));
  return parts;
}

}  // namespace quantest
