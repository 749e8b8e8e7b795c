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

#include "quantest/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "quantest/inference.h"
#include "quantest/numerics.h"

namespace quantest {
namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

enum class RepOutcome : std::uint8_t { kAccept, kReject, kError };

void CheckScale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kNonpositiveScale,
                "scale must be positive, got " + std::to_string(scale));
  }
}

}  // namespace

double Rng::Uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPow53Inv;
}

double Rng::StandardNormal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * Uniform() - 1.0;
    v = 2.0 * Uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * factor;
  has_cached_ = true;
  return u * factor;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng SubstreamRng(std::uint64_t seed, std::uint64_t index, std::uint64_t rep) {
  return Rng(SplitMix64(SplitMix64(SplitMix64(seed) ^ index) ^ rep));
}

double CauchyInverseCdf(double u, double x0, double gamma) {
  return x0 + gamma * std::tan(std::numbers::pi * (u - 0.5));
}

Sample SampleNormal(Rng& rng, double mu, double sigma, std::size_t n, std::string label) {
  CheckScale(sigma);
  std::vector<double> values(n);
  for (double& v : values) v = mu + sigma * rng.StandardNormal();
  return Sample(std::move(label), std::move(values));
}

Sample SampleCauchy(Rng& rng, double x0, double gamma, std::size_t n, std::string label) {
  CheckScale(gamma);
  std::vector<double> values(n);
  for (double& v : values) v = CauchyInverseCdf(rng.Uniform(), x0, gamma);
  return Sample(std::move(label), std::move(values));
}

std::string_view FamilyName(Family family) {
  return family == Family::kNormal ? "normal" : "cauchy";
}

Family ParseFamily(std::string_view name) {
  if (name == "normal") return Family::kNormal;
  if (name == "cauchy") return Family::kCauchy;
  throw Error(ErrorCode::kInvalidConfig, "unknown family '" + std::string(name) + "'");
}

void PowerConfig::Validate() const {
  if (reps < 1) throw Error(ErrorCode::kInvalidConfig, "reps must be >= 1");
  if (n < 2) throw Error(ErrorCode::kInvalidConfig, "n must be >= 2");
  if (k < 2) throw Error(ErrorCode::kInvalidConfig, "k must be >= 2");
  if (deltas.empty()) throw Error(ErrorCode::kInvalidConfig, "delta grid is empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!std::isfinite(deltas[i]) || deltas[i] < 0.0) {
      throw Error(ErrorCode::kInvalidConfig, "deltas must be finite and >= 0");
    }
    if (i > 0 && deltas[i] < deltas[i - 1]) {
      throw Error(ErrorCode::kInvalidConfig, "deltas must be nondecreasing");
    }
  }
  MakeTestConfig().Validate();
}

TestConfig PowerConfig::MakeTestConfig() const {
  TestConfig tc;
  tc.alpha = alpha;
  tc.kernel = kernel;
  tc.bandwidth_const = bandwidth_const;
  return tc;
}

std::vector<double> DeltaGrid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidConfig, "delta grid bounds must be finite");
  }
  if (stop < start) throw Error(ErrorCode::kInvalidConfig, "delta grid stop < start");
  if (!(step > 0.0)) {
    if (start == stop) return {start};
    throw Error(ErrorCode::kInvalidConfig, "delta grid step must be positive");
  }
  const double span = (stop - start) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
  if (count > 1'000'000) throw Error(ErrorCode::kInvalidConfig, "delta grid too large");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return grid;
}

std::vector<Sample> DrawShiftGroups(Rng& rng, Family family, std::size_t k, std::size_t n,
                                    double delta) {
  std::vector<Sample> groups;
  groups.reserve(k);
  for (std::size_t g = 0; g < k; ++g) {
    const double shift = g == 0 ? 0.0 : delta;
    std::string label = "g" + std::to_string(g + 1);
    groups.push_back(family == Family::kNormal
                         ? SampleNormal(rng, shift, 1.0, n, std::move(label))
                         : SampleCauchy(rng, shift, 1.0, n, std::move(label)));
  }
  return groups;
}

unsigned DefaultWorkerCount() {
  if (const char* env = std::getenv("QUANTEST_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<PowerPoint> PowerCurve(const PowerConfig& config, unsigned workers) {
  config.Validate();
  const TestConfig test_config = config.MakeTestConfig();
  const double critical =
      Chi2Quantile(1.0 - config.alpha, static_cast<int>(config.k) - 1);

  const std::size_t total = config.deltas.size() * config.reps;
  std::vector<RepOutcome> outcomes(total, RepOutcome::kError);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  constexpr std::size_t kChunk = 8;

  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= total) return;
      const std::size_t end = std::min(total, begin + kChunk);
      for (std::size_t job = begin; job < end; ++job) {
        const std::size_t di = job / config.reps;
        const std::size_t rep = job % config.reps;
        try {
          Rng rng = SubstreamRng(config.seed, di, rep);
          const auto groups =
              DrawShiftGroups(rng, config.family, config.k, config.n, config.deltas[di]);
          const TestOutcome out = MedianTest(groups, test_config, critical);
          outcomes[job] = out.reject ? RepOutcome::kReject : RepOutcome::kAccept;
        } catch (const Error& e) {
          if (IsUserError(e.code())) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(total);
            return;
          }
          outcomes[job] = RepOutcome::kError;
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next.store(total);
          return;
        }
      }
    }
  };

  if (workers == 0) workers = DefaultWorkerCount();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<PowerPoint> curve;
  curve.reserve(config.deltas.size());
  const double reps = static_cast<double>(config.reps);
  for (std::size_t di = 0; di < config.deltas.size(); ++di) {
    std::size_t rejections = 0;
    PowerPoint point;
    point.delta = config.deltas[di];
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const RepOutcome o = outcomes[di * config.reps + rep];
      if (o == RepOutcome::kReject) ++rejections;
      if (o == RepOutcome::kError) ++point.errors;
    }
    point.power = static_cast<double>(rejections) / reps;
    point.mc_stderr = std::sqrt(point.power * (1.0 - point.power) / reps);
    curve.push_back(point);
  }
  return curve;
}

}  // namespace quantest
