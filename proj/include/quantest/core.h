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

// Domain types shared by every module: samples, quantile levels, test
// configuration and the outcome of a k-sample quantile test.

#ifndef QUANTEST_CORE_H_
#define QUANTEST_CORE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quantest/error.h"

namespace quantest {

// One group's observations. Values are finite and stored sorted ascending, so
// order statistics are O(1) lookups. Immutable once built.
class Sample {
 public:
  // Throws TooFewObservations (n < 2) or NonFiniteValue. Ties are kept.
  Sample(std::string label, std::vector<double> values);

  const std::string& label() const noexcept { return label_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t n() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::string label_;
  std::vector<double> values_;
};

// Probability level p in (0, 1); 1/2 is the median.
class QuantileSpec {
 public:
  QuantileSpec() = default;
  explicit QuantileSpec(double p);

  double p() const noexcept { return p_; }
  bool is_median() const noexcept { return p_ == 0.5; }

  friend bool operator==(const QuantileSpec&, const QuantileSpec&) = default;

 private:
  double p_ = 0.5;
};

enum class KernelKind { kGaussian, kEpanechnikov };
enum class DispersionRule { kStdDev, kRobust };

struct TestConfig {
  QuantileSpec quantile;
  double alpha = 0.05;
  KernelKind kernel = KernelKind::kGaussian;
  double bandwidth_const = 1.0;
  DispersionRule dispersion_rule = DispersionRule::kRobust;

  // Throws InvalidConfig unless 0 < alpha < 1 and bandwidth_const > 0.
  void Validate() const;

  friend bool operator==(const TestConfig&, const TestConfig&) = default;
};

struct TestOutcome {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  bool reject = false;
  double critical_value = 0.0;
  std::vector<double> medians;  // sample p-quantiles; medians when p = 1/2
  std::vector<double> density_at_median;
  std::vector<double> bandwidths;
  std::vector<double> lambda_hat;
};

// Returns the samples unchanged when k >= 2 and each sample satisfies its
// invariants. Throws TooFewGroups, TooFewObservations or NonFiniteValue.
std::vector<Sample> ValidateSamples(std::vector<Sample> samples);

std::string_view KernelName(KernelKind kind);
KernelKind ParseKernel(std::string_view name);
std::string_view DispersionRuleName(DispersionRule rule);
DispersionRule ParseDispersionRule(std::string_view name);

}  // namespace quantest

#endif  // QUANTEST_CORE_H_
