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

// Serialized outputs: the JSON run report, text summary, power-curve CSV and
// SVG plot.

#ifndef QUANTEST_REPORT_H_
#define QUANTEST_REPORT_H_

#include <span>
#include <string>
#include <vector>

#include "quantest/core.h"
#include "quantest/montecarlo.h"

namespace quantest {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct GroupSummary {
  std::string label;
  std::size_t n = 0;
  double median = 0.0;
  double bandwidth = 0.0;
  double density_at_median = 0.0;
  double lambda_hat = 0.0;

  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
};

struct RunReport {
  std::string schema_version = kReportSchemaVersion;
  TestConfig config;
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  bool reject = false;
  double critical_value = 0.0;
  std::vector<GroupSummary> groups;
  std::vector<std::string> warnings;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport BuildRunReport(std::span<const Sample> samples, const TestConfig& config,
                         const TestOutcome& outcome);

// Pretty-printed JSON. Doubles use the shortest representation that parses
// back to the same bits.
std::string SerializeReport(const RunReport& report);
// Throws ParseError on malformed input or a different major schema version.
RunReport ParseReport(const std::string& json_text);

std::string FormatReportText(const RunReport& report);

// Header `delta,power,mc_stderr,errors`, one row per grid point.
std::string FormatPowerCsv(std::span<const PowerPoint> curve);

std::string RenderPowerSvg(std::span<const PowerPoint> curve, double alpha,
                           const std::string& title);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

}  // namespace quantest

#endif  // QUANTEST_REPORT_H_
