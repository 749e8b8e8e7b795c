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

#include "quantest/core.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace quantest {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooFewGroups: return "TooFewGroups";
    case ErrorCode::kTooFewObservations: return "TooFewObservations";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kNegativeInput: return "NegativeInput";
    case ErrorCode::kZeroDispersion: return "ZeroDispersion";
    case ErrorCode::kNonpositiveDensity: return "NonpositiveDensity";
    case ErrorCode::kNonpositiveVariance: return "NonpositiveVariance";
    case ErrorCode::kNonpositiveScale: return "NonpositiveScale";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kDegenerateDensity: return "DegenerateDensity";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool IsUserError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooFewGroups:
    case ErrorCode::kTooFewObservations:
    case ErrorCode::kNonFiniteValue:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidProbability:
    case ErrorCode::kNegativeInput:
    case ErrorCode::kNonpositiveScale:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kFileNotFound:
    case ErrorCode::kParseError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

Sample::Sample(std::string label, std::vector<double> values)
    : label_(std::move(label)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::kTooFewObservations,
                "group '" + label_ + "' has " + std::to_string(values_.size()) +
                    " observation(s); at least 2 are required");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "group '" + label_ + "' value #" + std::to_string(i + 1) +
                      " is not finite");
    }
  }
  std::sort(values_.begin(), values_.end());
}

QuantileSpec::QuantileSpec(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kInvalidProbability,
                "quantile level must lie in (0, 1), got " + std::to_string(p));
  }
}

void TestConfig::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (!(bandwidth_const > 0.0) || !std::isfinite(bandwidth_const)) {
    throw Error(ErrorCode::kInvalidConfig,
                "bandwidth constant must be positive, got " +
                    std::to_string(bandwidth_const));
  }
}

std::vector<Sample> ValidateSamples(std::vector<Sample> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kTooFewGroups,
                "need at least 2 groups, got " + std::to_string(samples.size()));
  }
  // Sample's constructor already enforces its invariants; re-check so that a
  // moved-from or otherwise hollow Sample cannot slip through.
  for (const Sample& s : samples) {
    if (s.n() < 2) {
      throw Error(ErrorCode::kTooFewObservations,
                  "group '" + s.label() + "' has fewer than 2 observations");
    }
    if (!std::is_sorted(s.values().begin(), s.values().end())) {
      throw Error(ErrorCode::kInvalidConfig, "group '" + s.label() + "' is not sorted");
    }
  }
  return samples;
}

std::string_view KernelName(KernelKind kind) {
  return kind == KernelKind::kGaussian ? "gaussian" : "epanechnikov";
}

KernelKind ParseKernel(std::string_view name) {
  if (name == "gaussian") return KernelKind::kGaussian;
  if (name == "epanechnikov") return KernelKind::kEpanechnikov;
  throw Error(ErrorCode::kInvalidConfig, "unknown kernel '" + std::string(name) + "'");
}

std::string_view DispersionRuleName(DispersionRule rule) {
  return rule == DispersionRule::kStdDev ? "stddev" : "robust";
}

DispersionRule ParseDispersionRule(std::string_view name) {
  if (name == "stddev") return DispersionRule::kStdDev;
  if (name == "robust") return DispersionRule::kRobust;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown dispersion rule '" + std::string(name) + "'");
}

}  // namespace quantest
