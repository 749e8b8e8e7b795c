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

// k-sample test for equality of quantiles.
//
// With sample p-quantiles q_1..q_k, successive differences
// d = (q_1 - q_2, ..., q_{k-1} - q_k) and plug-in variances
//
//   sigma_i = p (1 - p) / (lambda_i f_i(q_i)^2),   lambda_i = n_i / n_1,
//
// the statistic T = n_1 d^T (A Sigma A^T)^-1 d is asymptotically chi-square
// with k - 1 degrees of freedom when all population quantiles agree, and the
// test rejects when T exceeds the 1 - alpha chi-square quantile. The f_i are
// kernel density estimates. Group order fixes the rows of A but T is
// invariant under reversing the groups.

#ifndef QUANTEST_INFERENCE_H_
#define QUANTEST_INFERENCE_H_

#include <span>
#include <vector>

#include "quantest/core.h"

namespace quantest {

// Density estimates at or below this floor make the variance estimate
// meaningless and raise DegenerateDensity.
inline constexpr double kDensityFloor = 1e-12;

struct SigmaHat {
  std::vector<double> entries;
  std::vector<double> quantile_points;
  std::vector<double> density_values;
  std::vector<double> bandwidths;
  std::vector<double> lambda_hat;
};

SigmaHat EstimateSigmaHat(std::span<const Sample> samples, const TestConfig& config);

// Throws InvalidConfig for a bad config, TooFewGroups for k < 2,
// DegenerateDensity, ZeroDispersion or NotPositiveDefinite on numeric
// breakdown.
TestOutcome MedianTest(std::span<const Sample> samples, const TestConfig& config);

// Same as MedianTest with a precomputed critical value, for callers running
// many tests with one configuration.
TestOutcome MedianTest(std::span<const Sample> samples, const TestConfig& config,
                       double critical_value);

// Known population values for one group, for simulation studies.
struct GroupTruth {
  double median = 0.0;
  double density_at_median = 0.0;
  double sigma = 0.0;  // true diagonal entry of Sigma
};

// Computable terms of the high-probability bound on the statistic error:
//   statistic_gap = |Mh^T (A Sh A^T)^-1 Mh - M^T (A S A^T)^-1 M|
// is controlled by the Bahadur remainder, the sum of absolute differences of
// successive Bahadur linear terms and ||Sh^-1 - S^-1||_F. The unknown
// constant of the bound is not estimated.
struct Theorem2Diagnostics {
  double bahadur_sum = 0.0;
  double remainder_max = 0.0;
  double sigma_inv_gap = 0.0;
  double statistic_gap = 0.0;
};

// Uses the plug-in Sigma-hat of EstimateSigmaHat (median case).
Theorem2Diagnostics ComputeTheorem2Diagnostics(std::span<const Sample> samples,
                                               std::span<const GroupTruth> truth,
                                               const TestConfig& config = {});

// Uses the supplied Sigma-hat entries instead of estimating them.
Theorem2Diagnostics ComputeTheorem2Diagnostics(std::span<const Sample> samples,
                                               std::span<const GroupTruth> truth,
                                               std::span<const double> sigma_hat);

// True Sigma entry 1 / (4 lambda f(M)^2) for a group.
double TrueMedianSigma(double density_at_median, double lambda);

}  // namespace quantest

#endif  // QUANTEST_INFERENCE_H_
