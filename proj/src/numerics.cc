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

#include "quantest/numerics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace quantest {
namespace {

constexpr int kMaxIterations = 300;
constexpr double kTermTolerance = 1e-14;
constexpr double kTiny = 1e-300;
constexpr double kMinPivot = 1e-300;

// P(a, x) by the power series, valid for x < a + 1.
double GammaPSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kTermTolerance) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw Error(ErrorCode::kIterationLimit, "incomplete gamma series did not converge");
}

// Q(a, x) by the modified Lentz continued fraction, valid for x >= a + 1.
double GammaQContinuedFraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kTermTolerance) {
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
  }
  throw Error(ErrorCode::kIterationLimit,
              "incomplete gamma continued fraction did not converge");
}

void CheckGammaArgs(double a, double x) {
  if (!(a > 0.0)) throw Error(ErrorCode::kInvalidConfig, "gamma shape must be positive");
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorCode::kNegativeInput,
                "incomplete gamma argument must be >= 0, got " + std::to_string(x));
  }
}

void CheckDf(int df) {
  if (df < 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "degrees of freedom must be >= 1, got " + std::to_string(df));
  }
}

}  // namespace

double RegularizedGammaP(double a, double x) {
  CheckGammaArgs(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return GammaPSeries(a, x);
  return 1.0 - GammaQContinuedFraction(a, x);
}

double RegularizedGammaQ(double a, double x) {
  CheckGammaArgs(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - GammaPSeries(a, x);
  return GammaQContinuedFraction(a, x);
}

double Chi2Cdf(double x, int df) {
  CheckDf(df);
  return RegularizedGammaP(0.5 * df, 0.5 * x);
}

double Chi2Survival(double x, int df) {
  CheckDf(df);
  return RegularizedGammaQ(0.5 * df, 0.5 * x);
}

double Chi2Quantile(double q, int df) {
  CheckDf(df);
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidProbability,
                "chi-square quantile needs 0 <= q < 1, got " + std::to_string(q));
  }
  if (q == 0.0) return 0.0;

  // Residual that is increasing in x; the upper tail is compared through Q so
  // that q close to 1 keeps full relative accuracy.
  const bool upper = q > 0.5;
  const double tail = 1.0 - q;
  auto residual = [&](double x) {
    return upper ? tail - Chi2Survival(x, df) : Chi2Cdf(x, df) - q;
  };

  double lo = 0.0;
  double hi = std::max(1.0, static_cast<double>(df));
  while (residual(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw Error(ErrorCode::kIterationLimit, "quantile bracket overflow");
  }

  // Newton steps inside the bracket; a step that leaves it falls back to
  // bisection.
  const double half_df = 0.5 * df;
  const double log_norm = -half_df * std::log(2.0) - std::lgamma(half_df);
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 400; ++i) {
    const double r = residual(x);
    if (r == 0.0) return x;
    if (r < 0.0) lo = x; else hi = x;
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;

    const double density = std::exp(log_norm + (half_df - 1.0) * std::log(x) - 0.5 * x);
    double next = (density > 0.0 && std::isfinite(density)) ? x - r / density : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-13 * std::max(1.0, x)) return next;
    x = next;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymTridiag::Multiply(std::span<const double> x) const {
  const std::size_t m = diag.size();
  if (x.size() != m) throw Error(ErrorCode::kDimensionMismatch, "tridiagonal multiply");
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < m) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

SymTridiag ContrastCovariance(std::span<const double> variances) {
  const std::size_t k = variances.size();
  if (k < 2) throw Error(ErrorCode::kTooFewGroups, "contrasts need at least 2 groups");
  for (std::size_t i = 0; i < k; ++i) {
    if (!(variances[i] > 0.0) || !std::isfinite(variances[i])) {
      throw Error(ErrorCode::kNonpositiveVariance,
                  "variance #" + std::to_string(i + 1) + " is not positive and finite");
    }
  }
  SymTridiag t;
  t.diag.resize(k - 1);
  t.off.resize(k - 2);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    t.diag[i] = variances[i] + variances[i + 1];
    if (i + 2 < k) t.off[i] = -variances[i + 1];
  }
  return t;
}

TridiagLdlt::TridiagLdlt(const SymTridiag& t) {
  const std::size_t m = t.size();
  if (m == 0 || t.off.size() + 1 != m) {
    throw Error(ErrorCode::kDimensionMismatch, "malformed tridiagonal matrix");
  }
  d_.resize(m);
  l_.resize(m - 1);
  d_[0] = t.diag[0];
  for (std::size_t i = 0;; ++i) {
    if (!(d_[i] > kMinPivot) || !std::isfinite(d_[i])) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "nonpositive pivot at row " + std::to_string(i + 1));
    }
    if (i + 1 == m) break;
    l_[i] = t.off[i] / d_[i];
    d_[i + 1] = t.diag[i + 1] - l_[i] * t.off[i];
  }
}

std::vector<double> TridiagLdlt::Solve(std::span<const double> rhs) const {
  const std::size_t m = d_.size();
  if (rhs.size() != m) throw Error(ErrorCode::kDimensionMismatch, "rhs size mismatch");
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < m; ++i) x[i] -= l_[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < m; ++i) x[i] /= d_[i];
  for (std::size_t i = m - 1; i > 0; --i) x[i - 1] -= l_[i - 1] * x[i];
  return x;
}

std::vector<double> SpdTridiagSolve(const SymTridiag& t, std::span<const double> rhs) {
  return TridiagLdlt(t).Solve(rhs);
}

double QuadraticForm(std::span<const double> d, const SymTridiag& t) {
  const TridiagLdlt ldlt(t);
  const std::size_t m = t.size();
  if (d.size() != m) throw Error(ErrorCode::kDimensionMismatch, "contrast size mismatch");
  const auto pivots = ldlt.pivots();
  // z = L^-1 d; d^T T^-1 d = z^T D^-1 z.
  double z = d[0];
  double sum = z * z / pivots[0];
  for (std::size_t i = 1; i < m; ++i) {
    z = d[i] - (t.off[i - 1] / pivots[i - 1]) * z;
    sum += z * z / pivots[i];
  }
  return sum;
}

}  // namespace quantest
