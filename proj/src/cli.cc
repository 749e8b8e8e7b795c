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

#include "quantest/cli.h"

#include <charconv>
#include <exception>
#include <optional>

#include "CLI11.hpp"
#include "quantest/inference.h"
#include "quantest/io.h"
#include "quantest/montecarlo.h"
#include "quantest/report.h"

namespace quantest {
namespace {

struct TestArgs {
  std::vector<std::string> inputs;
  std::string grouped;
  double alpha = 0.05;
  double quantile = 0.5;
  std::string kernel = "gaussian";
  double bandwidth_const = 1.0;
  std::string dispersion = "robust";
  std::string format = "json";
};

struct PowerArgs {
  std::string family = "normal";
  std::size_t n = 1000;
  std::size_t k = 2;
  std::string deltas = "0:0.5:0.025";
  std::size_t reps = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 20240501;
  std::string out;
  std::string svg;
  std::string kernel = "gaussian";
  double bandwidth_const = 1.0;
  unsigned threads = 0;
};

double ParseGridNumber(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidConfig, "bad number '" + std::string(text) + "' in --deltas");
  }
  return v;
}

// "start:stop:step", or a single value.
std::vector<double> ParseDeltaSpec(const std::string& spec) {
  const auto first = spec.find(':');
  if (first == std::string::npos) return {ParseGridNumber(spec)};
  const auto second = spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "--deltas expects start:stop:step");
  }
  const std::string_view s(spec);
  return DeltaGrid(ParseGridNumber(s.substr(0, first)),
                   ParseGridNumber(s.substr(first + 1, second - first - 1)),
                   ParseGridNumber(s.substr(second + 1)));
}

int RunTest(const TestArgs& a, std::ostream& out) {
  TestConfig config;
  config.quantile = QuantileSpec(a.quantile);
  config.alpha = a.alpha;
  config.kernel = ParseKernel(a.kernel);
  config.bandwidth_const = a.bandwidth_const;
  config.dispersion_rule = ParseDispersionRule(a.dispersion);
  config.Validate();

  if (a.inputs.empty() == a.grouped.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "give exactly one of --input or --grouped");
  }
  const std::vector<Sample> samples =
      a.grouped.empty() ? LoadSampleFiles(a.inputs) : LoadGroupedFile(a.grouped);

  const TestOutcome outcome = MedianTest(samples, config);
  const RunReport report = BuildRunReport(samples, config, outcome);
  out << (a.format == "text" ? FormatReportText(report) : SerializeReport(report));
  return kExitOk;
}

int RunPower(const PowerArgs& a, std::ostream& out) {
  PowerConfig config;
  config.family = ParseFamily(a.family);
  config.n = a.n;
  config.k = a.k;
  config.deltas = ParseDeltaSpec(a.deltas);
  config.reps = a.reps;
  config.alpha = a.alpha;
  config.seed = a.seed;
  config.kernel = ParseKernel(a.kernel);
  config.bandwidth_const = a.bandwidth_const;
  config.Validate();

  const std::vector<PowerPoint> curve = PowerCurve(config, a.threads);
  std::string svg;
  if (!a.svg.empty()) {
    svg = RenderPowerSvg(curve, config.alpha,
                         "Power, " + std::string(FamilyName(config.family)) +
                             " family, k = " + std::to_string(config.k) +
                             ", n = " + std::to_string(config.n));
  }
  WriteFileAtomic(a.out, FormatPowerCsv(curve));
  if (!a.svg.empty()) WriteFileAtomic(a.svg, svg);

  std::size_t errors = 0;
  for (const PowerPoint& p : curve) errors += p.errors;
  out << "wrote " << curve.size() << " rows to " << a.out;
  if (errors > 0) out << " (" << errors << " degenerate replications)";
  out << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-sample test for equality of medians and other quantiles", "quantest"};
  app.require_subcommand(1);

  TestArgs t;
  auto* test = app.add_subcommand("test", "Test equality of a quantile across groups");
  test->add_option("--input", t.inputs, "One CSV file per group (single numeric column)");
  test->add_option("--grouped", t.grouped, "One CSV file with columns group,value");
  test->add_option("--alpha", t.alpha, "Significance level")->capture_default_str();
  test->add_option("--quantile", t.quantile, "Quantile level p (0.5 = median)")
      ->capture_default_str();
  test->add_option("--kernel", t.kernel, "Density kernel")
      ->check(CLI::IsMember({"gaussian", "epanechnikov"}))
      ->capture_default_str();
  test->add_option("--bandwidth-const", t.bandwidth_const, "Bandwidth constant c in c*s*n^-1/3")
      ->capture_default_str();
  test->add_option("--dispersion", t.dispersion, "Bandwidth scale rule")
      ->check(CLI::IsMember({"robust", "stddev"}))
      ->capture_default_str();
  test->add_option("--format", t.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  PowerArgs p;
  auto* power = app.add_subcommand("power", "Monte Carlo power curve under shift alternatives");
  power->add_option("--family", p.family, "Population family")
      ->check(CLI::IsMember({"normal", "cauchy"}))
      ->capture_default_str();
  power->add_option("--n", p.n, "Observations per group")->capture_default_str();
  power->add_option("--k", p.k, "Number of groups")->capture_default_str();
  power->add_option("--deltas", p.deltas, "Shift grid start:stop:step")->capture_default_str();
  power->add_option("--reps", p.reps, "Replications per shift")->capture_default_str();
  power->add_option("--alpha", p.alpha, "Significance level")->capture_default_str();
  power->add_option("--seed", p.seed, "Master seed")->capture_default_str();
  power->add_option("--out", p.out, "Output CSV path")->required();
  power->add_option("--svg", p.svg, "Optional SVG plot path");
  power->add_option("--kernel", p.kernel, "Density kernel")
      ->check(CLI::IsMember({"gaussian", "epanechnikov"}))
      ->capture_default_str();
  power->add_option("--bandwidth-const", p.bandwidth_const, "Bandwidth constant")
      ->capture_default_str();
  power->add_option("--threads", p.threads,
                    "Worker threads (default: QUANTEST_THREADS or all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help and friends report success through the same path.
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (test->parsed()) return RunTest(t, out);
    return RunPower(p, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return IsUserError(e.code()) ? kExitUsage : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace quantest
