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

#include "quantest/quantiles.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "quantest/montecarlo.h"

namespace quantest {
namespace {

using testing::Median;

const double kNormalDensityAtZero = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// Fraction of N(0,1) replications at n = 10^4 whose Bahadur remainder lies
// within kRemainderEnvelopeMultiple envelopes. Calibrated over 500 reps at
// three base seeds: |R_n| / envelope had 95th percentile ~0.9, max ~2.2.
constexpr double kRemainderEnvelopeMultiple = 3.0;

TEST(SampleQuantileTest, MedianConventions) {
  EXPECT_EQ(SampleQuantile(Sample("a", {1, 2, 3}), QuantileSpec(0.5)), 2.0);
  EXPECT_EQ(SampleQuantile(Sample("a", {4, 1, 3, 2}), QuantileSpec(0.5)), 2.5);
}

TEST(SampleQuantileTest, GeneralLevelInterpolates) {
  const Sample s("a", {10, 20, 30, 40, 50});
  EXPECT_EQ(SampleQuantile(s, QuantileSpec(0.25)), 20.0);
  EXPECT_DOUBLE_EQ(SampleQuantile(s, QuantileSpec(0.3)), 22.0);  // pos 1.2
  EXPECT_DOUBLE_EQ(SampleQuantile(s, QuantileSpec(0.999)), 49.96);
}

TEST(SampleQuantileTest, EvenMedianMatchesInterpolation) {
  std::vector<double> v{0.3, 1.7, 2.2, 9.0};
  const double mid = SampleQuantile(v, 0.5);
  const double pos = 1.5;  // (n - 1) / 2
  EXPECT_DOUBLE_EQ(mid, v[1] + (pos - 1.0) * (v[2] - v[1]));
}

TEST(SampleQuantileTest, MonotoneAndEquivariant) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> norm;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + gen() % 60);
    for (double& x : v) x = norm(gen);
    const Sample s("s", v);
    double prev = -INFINITY;
    for (double p = 0.01; p < 1.0; p += 0.01) {
      const double q = SampleQuantile(s, QuantileSpec(p));
      EXPECT_GE(q, prev);
      prev = q;
    }
    const double c = 3.75, scale = 2.5;
    std::vector<double> shifted = v, scaled = v;
    for (double& x : shifted) x += c;
    for (double& x : scaled) x *= scale;
    for (double p : {0.1, 0.25, 0.5, 0.8}) {
      const double q = SampleQuantile(s, QuantileSpec(p));
      EXPECT_NEAR(SampleQuantile(Sample("s", shifted), QuantileSpec(p)), q + c, 1e-12);
      EXPECT_NEAR(SampleQuantile(Sample("s", scaled), QuantileSpec(p)), q * scale, 1e-12);
    }
  }
}

TEST(EmpiricalCdfTest, Basics) {
  const Sample s("a", {1, 2, 3});
  EXPECT_EQ(EmpiricalCdf(s, 0.5), 0.0);
  EXPECT_EQ(EmpiricalCdf(s, 3.0), 1.0);
  EXPECT_EQ(EmpiricalCdf(s, 99.0), 1.0);
  EXPECT_DOUBLE_EQ(EmpiricalCdf(s, 2.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(EmpiricalCdf(Sample("t", {1, 1, 2}), 1.0), 2.0 / 3.0);
}

TEST(EmpiricalCdfTest, NondecreasingStepFunction) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> norm;
  std::vector<double> v(200);
  for (double& x : v) x = std::round(norm(gen) * 8.0) / 8.0;
  const Sample s("s", v);
  std::vector<double> grid;
  for (double x = -4.0; x <= 4.0; x += 1.0 / 64.0) grid.push_back(x);
  for (double x : v) grid.push_back(x);
  std::sort(grid.begin(), grid.end());
  double prev = 0.0;
  for (double x : grid) {
    const double f = EmpiricalCdf(s, x);
    EXPECT_GE(f, prev);
    prev = f;
  }
  // Right-continuity at a data point: the jump is included at x itself.
  const double x0 = s[100];
  EXPECT_GT(EmpiricalCdf(s, x0), EmpiricalCdf(s, std::nextafter(x0, -INFINITY)));
}

TEST(BahadurTest, ZeroLinearTermWhenEcdfIsHalf) {
  const Sample s("a", {-2, -1, 1, 2});
  const auto parts = BahadurDecompose(s, -0.5, 0.3);  // F_n(-0.5) = 1/2
  EXPECT_EQ(parts.linear_term, 0.0);
  EXPECT_EQ(parts.remainder, parts.estimate - (-0.5));
}

TEST(BahadurTest, IdentityHoldsToMachinePrecision) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Sample s = SampleNormal(rng, 0.0, 1.0, 50 + seed);
    const auto parts = BahadurDecompose(s, 0.0, kNormalDensityAtZero);
    EXPECT_NEAR(0.0 + parts.linear_term + parts.remainder, parts.estimate, 1e-12);
  }
}

TEST(BahadurTest, NonpositiveDensityRejected) {
  const Sample s("a", {1, 2, 3});
  EXPECT_THROW(BahadurDecompose(s, 2.0, 0.0), Error);
  try {
    BahadurDecompose(s, 2.0, -1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveDensity);
  }
}

TEST(BahadurTest, EnvelopeFormula) {
  const double n = 1e4;
  EXPECT_NEAR(BahadurEnvelope(10000),
              std::pow(n, -0.75) * std::sqrt(std::log(n)) * std::pow(std::log(std::log(n)), 0.25),
              1e-18);
}

TEST(BahadurTest, RemainderWithinEnvelopeMultiple) {
  int inside = 0;
  const int reps = 500;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng = SubstreamRng(2024, 10000, rep);
    const Sample s = SampleNormal(rng, 0.0, 1.0, 10000);
    const auto parts = BahadurDecompose(s, 0.0, kNormalDensityAtZero);
    if (std::abs(parts.remainder) <= kRemainderEnvelopeMultiple * parts.envelope) ++inside;
  }
  EXPECT_GE(inside, 475) << "fraction inside = " << inside / double(reps);
}

TEST(BahadurTest, RemainderShrinksWithN) {
  auto median_abs_remainder = [](std::size_t n) {
    std::vector<double> r;
    for (int rep = 0; rep < 500; ++rep) {
      Rng rng = SubstreamRng(77, n, rep);
      r.push_back(std::abs(
          BahadurDecompose(SampleNormal(rng, 0.0, 1.0, n), 0.0, kNormalDensityAtZero)
              .remainder));
    }
    return Median(r);
  };
  EXPECT_LT(median_abs_remainder(10000), median_abs_remainder(100));
}

TEST(AsymptoticNormalityTest, StandardizedMedianIsStandardNormal) {
  const std::size_t n = 4000;
  const int reps = 2000;
  std::vector<double> z;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng = SubstreamRng(99, 0, rep);
    const double m = SampleQuantile(SampleNormal(rng, 0.0, 1.0, n));
    z.push_back(std::sqrt(double(n)) * m * 2.0 * kNormalDensityAtZero);
  }
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= reps;
  double var = 0.0;
  for (double v : z) var += (v - mean) * (v - mean);
  var /= reps - 1;
  EXPECT_LE(std::abs(mean), 0.05);
  EXPECT_LE(std::abs(var - 1.0), 0.1);
}

}  // namespace
}  // namespace quantest
