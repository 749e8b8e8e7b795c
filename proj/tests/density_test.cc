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

#include "quantest/density.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "quantest/montecarlo.h"
#include "quantest/quantiles.h"

namespace quantest {
namespace {

using testing::Median;
using testing::NormalPdf;
using testing::Trapezoid;

const Kernel kGauss(KernelKind::kGaussian);
const Kernel kEpan(KernelKind::kEpanechnikov);

TEST(KernelTest, PointValues) {
  EXPECT_NEAR(kGauss(0.0), 0.3989423, 1e-7);
  EXPECT_EQ(kEpan(0.0), 0.75);
  EXPECT_EQ(kEpan(1.0), 0.0);
  EXPECT_EQ(kEpan(-1.0), 0.0);
  EXPECT_EQ(kEpan(1.5), 0.0);
}

TEST(KernelTest, Symmetric) {
  for (double u = -5.0; u <= 5.0; u += 0.137) {
    EXPECT_EQ(kGauss(u), kGauss(-u));
    EXPECT_EQ(kEpan(u), kEpan(-u));
  }
}

TEST(KernelTest, UnitMassByQuadrature) {
  EXPECT_NEAR(Trapezoid(kGauss, -8.0, 8.0, 20000), 1.0, 1e-6);
  EXPECT_NEAR(Trapezoid(kEpan, -1.0, 1.0, 20000), 1.0, 1e-6);
}

TEST(KernelTest, NonnegativeOnGrid) {
  for (int i = 0; i < 10000; ++i) {
    const double u = -10.0 + 20.0 * i / 9999.0;
    EXPECT_GE(kGauss(u), 0.0);
    EXPECT_GE(kEpan(u), 0.0);
  }
}

TEST(KernelTest, LipschitzBound) {
  EXPECT_NEAR(kGauss.lipschitz(), 1.0 / std::sqrt(2.0 * std::numbers::pi * std::exp(1.0)),
              1e-15);
  EXPECT_LT(kGauss.lipschitz(), 1.0);
  EXPECT_EQ(kEpan.lipschitz(), 1.5);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  for (int i = 0; i < 100000; ++i) {
    const double u = unif(gen), v = unif(gen);
    if (u == v) continue;
    for (const Kernel& k : {kGauss, kEpan}) {
      EXPECT_LE(std::abs(k(u) - k(v)) / std::abs(u - v), k.lipschitz() * (1 + 1e-9));
    }
  }
}

TEST(KernelTest, FiniteFirstAbsoluteMoment) {
  auto abs_moment = [](const Kernel& k, double lim) {
    return Trapezoid([&](double x) { return std::abs(x) * k(x); }, -lim, lim, 40000);
  };
  EXPECT_NEAR(abs_moment(kGauss, 12.0), std::sqrt(2.0 / std::numbers::pi), 1e-6);
  EXPECT_NEAR(abs_moment(kEpan, 1.0), 0.375, 1e-6);
}

TEST(BandwidthTest, PowerLawValues) {
  EXPECT_NEAR(SelectBandwidth(1000, 1.0, 1.0).value(), 0.1, 1e-15);
  EXPECT_NEAR(SelectBandwidth(8, 1.0, 2.0).value(), 1.0, 1e-15);
  TestConfig c;
  c.bandwidth_const = 2.0;
  EXPECT_NEAR(SelectBandwidth(1000, c, 1.0).value(), 0.2, 1e-15);
}

TEST(BandwidthTest, StrictlyDecreasingInN) {
  double prev = INFINITY;
  for (std::size_t n = 2; n < 100000; n = n * 3 / 2 + 1) {
    const double b = SelectBandwidth(n, 1.0, 1.0).value();
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(BandwidthTest, ZeroDispersionRejected) {
  try {
    SelectBandwidth(10, 1.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroDispersion);
  }
  EXPECT_THROW(Bandwidth(-1.0), Error);
}

TEST(BandwidthTest, ExponentMeetsRateConditions) {
  // With b_n = n^-1/3: n b_n / log n grows, n^1/2 b_n^3/2 (log n)^-1/2 shrinks.
  double prev_growth = 0.0, prev_decay = INFINITY;
  for (double n = 1e2; n <= 1e8; n *= 10) {
    const double b = std::pow(n, kBandwidthExponent);
    const double growth = n * b / std::log(n);
    const double decay = std::sqrt(n) * std::pow(b, 1.5) / std::sqrt(std::log(n));
    EXPECT_GT(growth, prev_growth);
    EXPECT_LT(decay, prev_decay);
    prev_growth = growth;
    prev_decay = decay;
  }
}

TEST(DispersionTest, TwoPointStdDev) {
  EXPECT_NEAR(DispersionEstimate(Sample("a", {0.0, 2.0}), DispersionRule::kStdDev),
              std::sqrt(2.0), 1e-15);
}

TEST(DispersionTest, ConstantSampleRejected) {
  for (auto rule : {DispersionRule::kStdDev, DispersionRule::kRobust}) {
    try {
      DispersionEstimate(Sample("a", {1, 1, 1}), rule);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kZeroDispersion);
    }
  }
}

TEST(DispersionTest, RobustNearOneForNormal) {
  Rng rng(42);
  const Sample s = SampleNormal(rng, 0.0, 1.0, 100000);
  EXPECT_NEAR(DispersionEstimate(s, DispersionRule::kRobust), 1.0, 0.1);
}

TEST(DispersionTest, RobustIsMinOfSdAndScaledIqr) {
  // Heavy outlier inflates sd but not the IQR.
  const Sample s("a", {1, 2, 3, 4, 5, 6, 7, 1000});
  const double sd = DispersionEstimate(s, DispersionRule::kStdDev);
  const double iqr = SampleQuantile(s, QuantileSpec(0.75)) - SampleQuantile(s, QuantileSpec(0.25));
  EXPECT_DOUBLE_EQ(DispersionEstimate(s, DispersionRule::kRobust), std::min(sd, iqr / 1.349));
}

TEST(DispersionTest, ShiftInvariant) {
  Rng rng(8);
  const Sample s = SampleNormal(rng, 0.0, 2.0, 500);
  std::vector<double> moved(s.values().begin(), s.values().end());
  for (double& x : moved) x += 1e3;
  for (auto rule : {DispersionRule::kStdDev, DispersionRule::kRobust}) {
    EXPECT_NEAR(DispersionEstimate(Sample("m", moved), rule), DispersionEstimate(s, rule),
                1e-9);
  }
}

TEST(KdeTest, HandValues) {
  const std::vector<double> one{0.0};
  EXPECT_NEAR(KdeEvaluate(one, Bandwidth(1.0), kGauss, 0.0), 0.3989423, 1e-7);
  // (K(1) + K(-1)) / 2 = K(1).
  const Sample two("a", {-1.0, 1.0});
  EXPECT_NEAR(KdeEvaluate(two, Bandwidth(1.0), kGauss, 0.0), 0.2419707, 1e-7);
  EXPECT_NEAR(KdeEvaluate(two, Bandwidth(1.0), kGauss, 0.0), NormalPdf(1.0), 1e-15);
  EXPECT_NEAR(KdeEvaluate(two, Bandwidth(2.0), kEpan, 0.0), 0.5 * 0.75 * 0.75, 1e-15);
}

TEST(KdeTest, MatchesNaiveSum) {
  Rng rng(1);
  const Sample s = SampleCauchy(rng, 0.0, 1.0, 300);
  for (const Kernel& k : {kGauss, kEpan}) {
    for (double x : {-3.0, -0.2, 0.0, 1.7}) {
      const double h = 0.4;
      double naive = 0.0;
      for (double v : s.values()) naive += k((x - v) / h);
      naive /= s.n() * h;
      EXPECT_NEAR(KdeEvaluate(s, Bandwidth(h), k, x), naive, 1e-14);
    }
  }
}

TEST(KdeTest, NonnegativeAndIntegratesToOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Sample s = SampleNormal(rng, seed * 0.1, 1.0 + seed * 0.05, 50 + 10 * seed);
    for (const Kernel& k : {kGauss, kEpan}) {
      const Bandwidth b = SelectBandwidth(s.n(), 1.0, DispersionEstimate(s, DispersionRule::kRobust));
      auto f = [&](double x) { return KdeEvaluate(s, b, k, x); };
      const double lo = s.min() - 5 * b.value(), hi = s.max() + 5 * b.value();
      EXPECT_NEAR(Trapezoid(f, lo, hi, 20000), 1.0, 1e-4);
      for (int i = 0; i <= 200; ++i) EXPECT_GE(f(lo + (hi - lo) * i / 200), 0.0);
    }
  }
}

TEST(SupErrorRateTest, Values) {
  EXPECT_NEAR(SupErrorRate(100, Bandwidth(0.1)), std::sqrt(std::log(100.0) / 10.0), 1e-15);
  EXPECT_NEAR(SupErrorRate(100, Bandwidth(0.1)), 0.678614, 1e-6);
}

TEST(SupErrorRateTest, DecreasesUnderPowerLawBandwidth) {
  auto psi = [](double n) {
    return SupErrorRate(static_cast<std::size_t>(n), Bandwidth(std::pow(n, kBandwidthExponent)));
  };
  EXPECT_GT(psi(1e2), psi(1e3));
  EXPECT_GT(psi(1e3), psi(1e4));
  double prev = INFINITY;
  for (int j = 4; j <= 20; ++j) {
    const double v = psi(std::ldexp(1.0, j));
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 0.05);
}

// |f_n(M_n) - f(M)| for N(0,1) shrinks as n grows.
TEST(ConsistencyTest, DensityAtSampleMedianConverges) {
  auto median_error = [](std::size_t n) {
    std::vector<double> err;
    for (int rep = 0; rep < 200; ++rep) {
      Rng rng = SubstreamRng(31, n, rep);
      const Sample s = SampleNormal(rng, 0.0, 1.0, n);
      const Bandwidth b = SelectBandwidth(n, 1.0, DispersionEstimate(s, DispersionRule::kRobust));
      err.push_back(std::abs(KdeEvaluate(s, b, kGauss, SampleQuantile(s)) - NormalPdf(0.0)));
    }
    return Median(err);
  };
  const double e2 = median_error(100), e3 = median_error(1000), e4 = median_error(10000);
  EXPECT_GT(e2, e3);
  EXPECT_GT(e3, e4);
}

// Uniform error on [-2, 2] tracks Psi(n): the ratio fitted at n = 100 bounds
// the ratio at larger n.
TEST(ConsistencyTest, SupErrorTracksRate) {
  auto median_ratio = [](std::size_t n) {
    std::vector<double> ratio;
    for (int rep = 0; rep < 20; ++rep) {
      Rng rng = SubstreamRng(57, n, rep);
      const Sample s = SampleNormal(rng, 0.0, 1.0, n);
      const Bandwidth b = SelectBandwidth(n, 1.0, DispersionEstimate(s, DispersionRule::kRobust));
      double sup = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = -2.0 + 4.0 * i / 200;
        sup = std::max(sup, std::abs(KdeEvaluate(s, b, kGauss, x) - NormalPdf(x)));
      }
      ratio.push_back(sup / SupErrorRate(n, b));
    }
    return Median(ratio);
  };
  const double fitted = 2.0 * median_ratio(100);
  EXPECT_LT(median_ratio(1000), fitted);
  EXPECT_LT(median_ratio(10000), fitted);
}

}  // namespace
}  // namespace quantest
