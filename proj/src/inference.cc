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

#include "quantest/inference.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "quantest/density.h"
#include "quantest/numerics.h"
#include "quantest/quantiles.h"

namespace quantest {
namespace {

void CheckGroups(std::span<const Sample> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kTooFewGroups,
                "need at least 2 groups, got " + std::to_string(samples.size()));
  }
}

std::vector<double> SuccessiveDifferences(std::span<const double> v) {
  std::vector<double> d(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) d[i] = v[i] - v[i + 1];
  return d;
}

}  // namespace

SigmaHat EstimateSigmaHat(std::span<const Sample> samples, const TestConfig& config) {
  config.Validate();
  CheckGroups(samples);
  const double p = config.quantile.p();
  const Kernel kernel(config.kernel);
  const double n1 = static_cast<double>(samples[0].n());

  SigmaHat sh;
  const std::size_t k = samples.size();
  sh.entries.reserve(k);
  sh.quantile_points.reserve(k);
  sh.density_values.reserve(k);
  sh.bandwidths.reserve(k);
  sh.lambda_hat.reserve(k);
  for (const Sample& s : samples) {
    const double q = SampleQuantile(s, config.quantile);
    const Bandwidth b =
        SelectBandwidth(s.n(), config, DispersionEstimate(s, config.dispersion_rule));
    const double f = KdeEvaluate(s, b, kernel, q);
    if (!(f > kDensityFloor)) {
      throw Error(ErrorCode::kDegenerateDensity,
                  "density estimate at the quantile of group '" + s.label() +
                      "' is below 1e-12; increase the bandwidth constant");
    }
    const double lambda = static_cast<double>(s.n()) / n1;
    sh.entries.push_back(p * (1.0 - p) / (lambda * f * f));
    sh.quantile_points.push_back(q);
    sh.density_values.push_back(f);
    sh.bandwidths.push_back(b.value());
    sh.lambda_hat.push_back(lambda);
  }
  return sh;
}

TestOutcome MedianTest(std::span<const Sample> samples, const TestConfig& config,
                       double critical_value) {
  SigmaHat sh = EstimateSigmaHat(samples, config);
  const int df = static_cast<int>(samples.size()) - 1;
  const std::vector<double> d = SuccessiveDifferences(sh.quantile_points);

  TestOutcome out;
  out.statistic = static_cast<double>(samples[0].n()) *
                  QuadraticForm(d, ContrastCovariance(sh.entries));
  out.df = df;
  out.critical_value = critical_value;
  out.p_value = Chi2Survival(out.statistic, df);
  out.reject = out.statistic > critical_value;
  out.medians = std::move(sh.quantile_points);
  out.density_at_median = std::move(sh.density_values);
  out.bandwidths = std::move(sh.bandwidths);
  out.lambda_hat = std::move(sh.lambda_hat);
  return out;
}

TestOutcome MedianTest(std::span<const Sample> samples, const TestConfig& config) {
  config.Validate();
  CheckGroups(samples);
  const int df = static_cast<int>(samples.size()) - 1;
  return MedianTest(samples, config, Chi2Quantile(1.0 - config.alpha, df));
}

double TrueMedianSigma(double density_at_median, double lambda) {
  if (!(density_at_median > 0.0)) {
    throw Error(ErrorCode::kNonpositiveDensity, "true density must be positive");
  }
  return 1.0 / (4.0 * lambda * density_at_median * density_at_median);
}

namespace {

Theorem2Diagnostics Diagnose(std::span<const Sample> samples,
                             std::span<const GroupTruth> truth,
                             std::span<const double> sigma_hat, QuantileSpec spec) {
  CheckGroups(samples);
  const std::size_t k = samples.size();
  if (truth.size() != k || sigma_hat.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "truth and sigma must have one entry per group");
  }

  Theorem2Diagnostics diag;
  std::vector<double> estimates(k), true_points(k), true_sigma(k), linear(k);
  double inv_gap_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const BahadurParts parts =
        BahadurDecompose(samples[i], truth[i].median, truth[i].density_at_median, spec);
    estimates[i] = parts.estimate;
    linear[i] = parts.linear_term;
    diag.remainder_max = std::max(diag.remainder_max, std::abs(parts.remainder));
    true_points[i] = truth[i].median;
    true_sigma[i] = truth[i].sigma;
    const double gap = 1.0 / sigma_hat[i] - 1.0 / truth[i].sigma;
    inv_gap_sq += gap * gap;
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    diag.bahadur_sum += std::abs(linear[i] - linear[i + 1]);
  }
  diag.sigma_inv_gap = std::sqrt(inv_gap_sq);

  const double estimated_form =
      QuadraticForm(SuccessiveDifferences(estimates), ContrastCovariance(sigma_hat));
  const double true_form =
      QuadraticForm(SuccessiveDifferences(true_points), ContrastCovariance(true_sigma));
  diag.statistic_gap = std::abs(estimated_form - true_form);
  return diag;
}

}  // namespace

Theorem2Diagnostics ComputeTheorem2Diagnostics(std::span<const Sample> samples,
                                               std::span<const GroupTruth> truth,
                                               const TestConfig& config) {
  const SigmaHat sh = EstimateSigmaHat(samples, config);
  return Diagnose(samples, truth, sh.entries, config.quantile);
}

Theorem2Diagnostics ComputeTheorem2Diagnostics(std::span<const Sample> samples,
                                               std::span<const GroupTruth> truth,
                                               std::span<const double> sigma_hat) {
  return Diagnose(samples, truth, sigma_hat, QuantileSpec{});
}

}  // namespace quantest
