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

#include "quantest/density.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "quantest/quantiles.h"

namespace quantest {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Gaussian kernel truncated where exp(-u^2/2) underflows relative to the
// accumulated sum; 40 standard deviations is far past double precision.
constexpr double kGaussianCutoff = 40.0;

}  // namespace

double Kernel::operator()(double u) const noexcept {
  switch (kind_) {
    case KernelKind::kGaussian:
      return kInvSqrt2Pi * std::exp(-0.5 * u * u);
    case KernelKind::kEpanechnikov:
      return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
  }
  return 0.0;
}

double Kernel::lipschitz() const noexcept {
  // max |K'(u)|: at u = +-1 for the gaussian, at u = +-1 for epanechnikov.
  return kind_ == KernelKind::kGaussian ? kInvSqrt2Pi * std::exp(-0.5) : 1.5;
}

double Kernel::support_radius() const noexcept {
  return kind_ == KernelKind::kGaussian ? std::numeric_limits<double>::infinity() : 1.0;
}

Bandwidth::Bandwidth(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidConfig,
                "bandwidth must be positive and finite, got " + std::to_string(value));
  }
}

Bandwidth SelectBandwidth(std::size_t n, double bandwidth_const, double dispersion) {
  if (!(dispersion > 0.0)) {
    throw Error(ErrorCode::kZeroDispersion,
                "sample dispersion is zero; cannot choose a bandwidth");
  }
  if (n < 2) throw Error(ErrorCode::kTooFewObservations, "bandwidth needs n >= 2");
  return Bandwidth(bandwidth_const * dispersion *
                   std::pow(static_cast<double>(n), kBandwidthExponent));
}

Bandwidth SelectBandwidth(std::size_t n, const TestConfig& config, double dispersion) {
  return SelectBandwidth(n, config.bandwidth_const, dispersion);
}

double DispersionEstimate(std::span<const double> sorted, DispersionRule rule) {
  const std::size_t n = sorted.size();
  if (n < 2) throw Error(ErrorCode::kTooFewObservations, "dispersion needs n >= 2");

  // Two-pass variance around the mean.
  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0) || sorted.front() == sorted.back()) {
    throw Error(ErrorCode::kZeroDispersion, "all observations are equal");
  }
  if (rule == DispersionRule::kStdDev) return sd;

  const double iqr = SampleQuantile(sorted, 0.75) - SampleQuantile(sorted, 0.25);
  const double robust = iqr / kNormalIqr;
  return robust > 0.0 ? std::min(sd, robust) : sd;
}

double DispersionEstimate(const Sample& sample, DispersionRule rule) {
  return DispersionEstimate(sample.values(), rule);
}

double KdeEvaluate(std::span<const double> sorted, Bandwidth b, Kernel kernel, double x) {
  if (sorted.empty()) return 0.0;
  const double h = b.value();
  const double radius =
      kernel.kind() == KernelKind::kGaussian ? kGaussianCutoff : kernel.support_radius();
  const auto first = std::lower_bound(sorted.begin(), sorted.end(), x - radius * h);
  const auto last = std::upper_bound(first, sorted.end(), x + radius * h);
  double sum = 0.0;
  for (auto it = first; it != last; ++it) sum += kernel((x - *it) / h);
  return sum / (static_cast<double>(sorted.size()) * h);
}

double KdeEvaluate(const Sample& sample, Bandwidth b, Kernel kernel, double x) {
  return KdeEvaluate(sample.values(), b, kernel, x);
}

double SupErrorRate(std::size_t n, Bandwidth b) {
  const double dn = static_cast<double>(n);
  return std::sqrt(std::log(dn) / (dn * b.value()));
}

}  // namespace quantest
