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

#ifndef QUANTEST_QUANTILES_H_
#define QUANTEST_QUANTILES_H_

#include <span>

#include "quantest/core.h"

namespace quantest {

// Linear-interpolation quantile at 0-indexed position (n - 1) p of sorted
// data. At p = 1/2 this is the middle order statistic for odd n and the
// midpoint of the two central ones for even n.
double SampleQuantile(std::span<const double> sorted, double p);
double SampleQuantile(const Sample& sample, QuantileSpec spec = {});

// Fraction of observations <= x (right-continuous).
double EmpiricalCdf(std::span<const double> sorted, double x);
double EmpiricalCdf(const Sample& sample, double x);

// Split of (sample quantile - true quantile) into the linear empirical-CDF
// term and the remainder:
//   estimate - truth = linear_term + remainder,
//   linear_term = (p - F_n(truth)) / f(truth).
// `envelope` is the almost-sure rate n^-3/4 (log n)^1/2 (log log n)^1/4 that
// bounds the remainder up to an unknown constant.
struct BahadurParts {
  double estimate = 0.0;
  double linear_term = 0.0;
  double remainder = 0.0;
  double envelope = 0.0;
};

// Throws NonpositiveDensity unless true_density > 0.
BahadurParts BahadurDecompose(const Sample& sample, double true_quantile,
                              double true_density, QuantileSpec spec = {});

// n^-3/4 (log n)^1/2 (log log n)^1/4; requires n >= 3 so log log n > 0.
double BahadurEnvelope(std::size_t n);

}  // namespace quantest

#endif  // QUANTEST_QUANTILES_H_
