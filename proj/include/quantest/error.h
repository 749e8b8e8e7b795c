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

#ifndef QUANTEST_ERROR_H_
#define QUANTEST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace quantest {

enum class ErrorCode {
  kTooFewGroups,
  kTooFewObservations,
  kNonFiniteValue,
  kInvalidConfig,
  kInvalidProbability,
  kNegativeInput,
  kZeroDispersion,
  kNonpositiveDensity,
  kNonpositiveVariance,
  kNonpositiveScale,
  kNotPositiveDefinite,
  kDegenerateDensity,
  kIterationLimit,
  kDimensionMismatch,
  kFileNotFound,
  kParseError,
  kIoError,
};

// Stable identifier, e.g. "TooFewGroups".
std::string_view ErrorCodeName(ErrorCode code);

// True for errors caused by user input (flags, files, data shape) rather than
// by a numerical breakdown.
bool IsUserError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace quantest

#endif  // QUANTEST_ERROR_H_
