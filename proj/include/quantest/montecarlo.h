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

// Seeded variate generation and level/power simulations.
//
// Every replication draws from its own engine, seeded by a SplitMix64 hash
// of (seed, delta index, replication index). Uniforms are built from the top
// 53 bits of std::mt19937_64 output, whose sequence is fixed by the
// standard, so results are bit-reproducible across platforms, runs and
// worker counts.

#ifndef QUANTEST_MONTECARLO_H_
#define QUANTEST_MONTECARLO_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "quantest/core.h"

namespace quantest {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), granularity 2^-53.
  double Uniform();

  // Standard normal by the Marsaglia polar method; the second variate of each
  // accepted pair is cached for the next call.
  double StandardNormal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Independent engine for replication `rep` of grid point `index`.
Rng SubstreamRng(std::uint64_t seed, std::uint64_t index, std::uint64_t rep);

// x0 + gamma tan(pi (u - 1/2)).
double CauchyInverseCdf(double u, double x0, double gamma);

// Throw NonpositiveScale unless the scale is positive.
Sample SampleNormal(Rng& rng, double mu, double sigma, std::size_t n,
                    std::string label = "normal");
Sample SampleCauchy(Rng& rng, double x0, double gamma, std::size_t n,
                    std::string label = "cauchy");

enum class Family { kNormal, kCauchy };

std::string_view FamilyName(Family family);
Family ParseFamily(std::string_view name);

struct PowerConfig {
  Family family = Family::kNormal;
  std::size_t k = 2;
  std::size_t n = 1000;
  std::vector<double> deltas;
  std::size_t reps = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  KernelKind kernel = KernelKind::kGaussian;
  double bandwidth_const = 1.0;

  // Throws InvalidConfig on reps == 0, n < 2, k < 2, negative, non-finite
  // or decreasing deltas, or a bad alpha/bandwidth constant.
  void Validate() const;
  TestConfig MakeTestConfig() const;
};

struct PowerPoint {
  double delta = 0.0;
  double power = 0.0;       // rejections / reps
  double mc_stderr = 0.0;   // sqrt(power (1 - power) / reps)
  std::size_t errors = 0;   // replications that failed numerically
};

// Evenly spaced grid start, start + step, ... up to stop inclusive (with a
// 1e-9 relative slack on the last point). Values are rounded to 12 decimals
// so that 0.35 prints as 0.35.
std::vector<double> DeltaGrid(double start, double stop, double step);

// Draws group 1 from F(0) and groups 2..k from F(delta).
std::vector<Sample> DrawShiftGroups(Rng& rng, Family family, std::size_t k, std::size_t n,
                                    double delta);

// Worker count from QUANTEST_THREADS, else std::thread::hardware_concurrency.
unsigned DefaultWorkerCount();

// Runs config.reps replications per delta on `workers` threads (0 selects
// DefaultWorkerCount()). Output is independent of the worker count.
// Replications failing with a numeric error are tallied in
// PowerPoint::errors and do not count as rejections.
std::vector<PowerPoint> PowerCurve(const PowerConfig& config, unsigned workers = 0);

}  // namespace quantest

#endif  // QUANTEST_MONTECARLO_H_
