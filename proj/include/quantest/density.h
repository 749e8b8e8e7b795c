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

// Kernel density estimation at a point.
//
// Both kernels are symmetric probability densities that are Lipschitz of
// order 1 with a finite first absolute moment:
//
//   gaussian      K(u) = exp(-u^2 / 2) / sqrt(2 pi)   Lipschitz 1/sqrt(2 pi e)
//   epanechnikov  K(u) = 0.75 (1 - u^2) on [-1, 1]     Lipschitz 1.5
//
// Bandwidths follow b_n = c * s * n^(-1/3), where s is a dispersion estimate
// of the sample. n^(-1/3) is the only power-law rate for which n b_n / log n
// diverges, n^(1/2) b_n^(3/2) (log n)^(-1/2) vanishes and
// sum_n b_n^(-9/2) (log n)^(-3/2) n^(-5/2) converges.

#ifndef QUANTEST_DENSITY_H_
#define QUANTEST_DENSITY_H_

#include <cstddef>
#include <span>

#include "quantest/core.h"

namespace quantest {

inline constexpr double kBandwidthExponent = -1.0 / 3.0;

// Normal-consistent IQR divisor: the IQR of N(0, 1).
inline constexpr double kNormalIqr = 1.349;

class Kernel {
 public:
  explicit Kernel(KernelKind kind = KernelKind::kGaussian) : kind_(kind) {}

  KernelKind kind() const noexcept { return kind_; }

  double operator()(double u) const noexcept;

  // Global Lipschitz constant of K.
  double lipschitz() const noexcept;

  // K vanishes for |u| > support_radius(); infinity for the gaussian.
  double support_radius() const noexcept;

 private:
  KernelKind kind_;
};

class Bandwidth {
 public:
  // Throws InvalidConfig unless value is positive and finite.
  explicit Bandwidth(double value);

  double value() const noexcept { return value_; }

 private:
  double value_;
};

// c * dispersion * n^(-1/3). Throws ZeroDispersion for dispersion <= 0.
Bandwidth SelectBandwidth(std::size_t n, double bandwidth_const, double dispersion);
Bandwidth SelectBandwidth(std::size_t n, const TestConfig& config, double dispersion);

// kStdDev: sample standard deviation (divisor n - 1).
// kRobust: min(sd, IQR / 1.349) with the IQR taken from SampleQuantile; falls
// back to sd when the IQR is zero but the sample is not constant.
// Throws ZeroDispersion for a constant sample.
double DispersionEstimate(std::span<const double> sorted, DispersionRule rule);
double DispersionEstimate(const Sample& sample, DispersionRule rule);

// (1 / (n b)) sum_j K((x - X_j) / b). Uses sortedness to skip points outside
// the kernel support.
double KdeEvaluate(std::span<const double> sorted, Bandwidth b, Kernel kernel, double x);
double KdeEvaluate(const Sample& sample, Bandwidth b, Kernel kernel, double x);

// sqrt(log n / (n b)), the almost-sure uniform error rate of the estimator on
// compact sets.
double SupErrorRate(std::size_t n, Bandwidth b);

}  // namespace quantest

#endif  // QUANTEST_DENSITY_H_
