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

#include "quantest/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace quantest {
namespace {

using json = nlohmann::ordered_json;

// Below this size the chi-square calibration is visibly off.
constexpr std::size_t kSmallGroup = 30;

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string EscapeXml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

json ConfigToJson(const TestConfig& c) {
  return json{{"quantile", c.quantile.p()},
              {"alpha", c.alpha},
              {"kernel", KernelName(c.kernel)},
              {"bandwidth_const", c.bandwidth_const},
              {"dispersion_rule", DispersionRuleName(c.dispersion_rule)}};
}

TestConfig ConfigFromJson(const json& j) {
  TestConfig c;
  c.quantile = QuantileSpec(j.at("quantile").get<double>());
  c.alpha = j.at("alpha").get<double>();
  c.kernel = ParseKernel(j.at("kernel").get<std::string>());
  c.bandwidth_const = j.at("bandwidth_const").get<double>();
  c.dispersion_rule = ParseDispersionRule(j.at("dispersion_rule").get<std::string>());
  return c;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

RunReport BuildRunReport(std::span<const Sample> samples, const TestConfig& config,
                         const TestOutcome& outcome) {
  RunReport r;
  r.config = config;
  r.statistic = outcome.statistic;
  r.df = outcome.df;
  r.p_value = outcome.p_value;
  r.reject = outcome.reject;
  r.critical_value = outcome.critical_value;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    r.groups.push_back({s.label(), s.n(), outcome.medians[i], outcome.bandwidths[i],
                        outcome.density_at_median[i], outcome.lambda_hat[i]});
    if (s.n() < kSmallGroup) {
      r.warnings.push_back("group '" + s.label() + "' has only " + std::to_string(s.n()) +
                           " observations; the chi-square calibration is asymptotic");
    }
    const auto v = s.values();
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
      r.warnings.push_back("group '" + s.label() +
                           "' contains tied values; the test assumes continuous data");
    }
  }
  return r;
}

std::string SerializeReport(const RunReport& r) {
  json groups = json::array();
  for (const GroupSummary& g : r.groups) {
    groups.push_back({{"label", g.label},
                      {"n", g.n},
                      {"median", g.median},
                      {"bandwidth", g.bandwidth},
                      {"density_at_median", g.density_at_median},
                      {"lambda_hat", g.lambda_hat}});
  }
  const json j{{"schema_version", r.schema_version},
               {"config", ConfigToJson(r.config)},
               {"statistic", r.statistic},
               {"df", r.df},
               {"p_value", r.p_value},
               {"reject", r.reject},
               {"critical_value", r.critical_value},
               {"groups", groups},
               {"warnings", r.warnings}};
  return j.dump(2) + "\n";
}

RunReport ParseReport(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    RunReport r;
    r.schema_version = j.at("schema_version").get<std::string>();
    if (!r.schema_version.starts_with("1.")) {
      throw Error(ErrorCode::kParseError,
                  "unsupported report schema version '" + r.schema_version + "'");
    }
    r.config = ConfigFromJson(j.at("config"));
    r.statistic = j.at("statistic").get<double>();
    r.df = j.at("df").get<int>();
    r.p_value = j.at("p_value").get<double>();
    r.reject = j.at("reject").get<bool>();
    r.critical_value = j.at("critical_value").get<double>();
    for (const json& g : j.at("groups")) {
      r.groups.push_back({g.at("label").get<std::string>(), g.at("n").get<std::size_t>(),
                          g.at("median").get<double>(), g.at("bandwidth").get<double>(),
                          g.at("density_at_median").get<double>(),
                          g.at("lambda_hat").get<double>()});
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
}

std::string FormatReportText(const RunReport& r) {
  std::ostringstream out;
  out << "k-sample quantile test (p = " << FormatDouble(r.config.quantile.p())
      << ", alpha = " << FormatDouble(r.config.alpha) << ", kernel = "
      << KernelName(r.config.kernel) << ")\n";
  out << "  statistic T     " << Fixed(r.statistic, 6) << "\n";
  out << "  df              " << r.df << "\n";
  out << "  p-value         " << Fixed(r.p_value, 6) << "\n";
  out << "  critical value  " << Fixed(r.critical_value, 6) << "\n";
  out << "  decision        "
      << (r.reject ? "reject equality of quantiles" : "do not reject") << "\n\n";

  std::size_t width = 5;
  for (const GroupSummary& g : r.groups) width = std::max(width, g.label.size());
  char line[256];
  std::snprintf(line, sizeof(line), "  %-*s %8s %14s %12s %14s\n", static_cast<int>(width),
                "group", "n", "quantile", "bandwidth", "density");
  out << line;
  for (const GroupSummary& g : r.groups) {
    std::snprintf(line, sizeof(line), "  %-*s %8zu %14.6g %12.6g %14.6g\n",
                  static_cast<int>(width), g.label.c_str(), g.n, g.median, g.bandwidth,
                  g.density_at_median);
    out << line;
  }
  for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::string FormatPowerCsv(std::span<const PowerPoint> curve) {
  std::string out = "delta,power,mc_stderr,errors\n";
  for (const PowerPoint& p : curve) {
    out += FormatDouble(p.delta);
    out += ',';
    out += FormatDouble(p.power);
    out += ',';
    out += FormatDouble(p.mc_stderr);
    out += ',';
    out += std::to_string(p.errors);
    out += '\n';
  }
  return out;
}

std::string RenderPowerSvg(std::span<const PowerPoint> curve, double alpha,
                           const std::string& title) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_min = curve.empty() ? 0.0 : curve.front().delta;
  double x_max = curve.empty() ? 1.0 : curve.back().delta;
  if (x_max <= x_min) x_max = x_min + 1.0;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (1.0 - y) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << EscapeXml(title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << sy(0) << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft << "\" y2=\""
      << sy(1) << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = i / 5.0;
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << Fixed(sy(y), 2) << "\" x2=\"" << kLeft
        << "\" y2=\"" << Fixed(sy(y), 2) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << Fixed(sy(y) + 4, 2)
        << "\" text-anchor=\"end\">" << Fixed(y, 1) << "</text>\n";
    const double x = x_min + (x_max - x_min) * i / 5.0;
    svg << "<line x1=\"" << Fixed(sx(x), 2) << "\" y1=\"" << sy(0) << "\" x2=\""
        << Fixed(sx(x), 2) << "\" y2=\"" << sy(0) + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << Fixed(sx(x), 2) << "\" y=\"" << sy(0) + 18
        << "\" text-anchor=\"middle\">" << Fixed(x, 3) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">median difference (delta)</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << kTop + plot_h / 2
      << ")\">power</text>\n</g>\n";

  // Nominal level.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << Fixed(sy(alpha), 2) << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << Fixed(sy(alpha), 2)
      << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w - 4 << "\" y=\"" << Fixed(sy(alpha) - 4, 2)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\"gray\">alpha = "
      << FormatDouble(alpha) << "</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i) svg << ' ';
    svg << Fixed(sx(curve[i].delta), 2) << ',' << Fixed(sy(curve[i].power), 2);
  }
  svg << "\"/>\n";
  for (const PowerPoint& p : curve) {
    svg << "<circle cx=\"" << Fixed(sx(p.delta), 2) << "\" cy=\"" << Fixed(sy(p.power), 2)
        << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace quantest
