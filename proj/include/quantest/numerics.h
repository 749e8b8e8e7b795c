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

// Chi-square distribution functions and the symmetric tridiagonal algebra
// used by the quadratic-form statistic.

#ifndef QUANTEST_NUMERICS_H_
#define QUANTEST_NUMERICS_H_

#include <span>
#include <vector>

#include "quantest/error.h"

namespace quantest {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series for x < a + 1, Lentz continued fraction for the upper tail
// otherwise. Throws IterationLimit if 300 terms do not converge.
double RegularizedGammaP(double a, double x);
// Q(a, x) = 1 - P(a, x), computed directly in the upper tail.
double RegularizedGammaQ(double a, double x);

// P(df / 2, x / 2). Throws NegativeInput for x < 0 and InvalidConfig for
// df < 1.
double Chi2Cdf(double x, int df);
// Upper tail 1 - Chi2Cdf(x, df) without cancellation.
double Chi2Survival(double x, int df);

// x with Chi2Cdf(x, df) = q, to 1e-10 in x. Throws InvalidProbability unless
// 0 <= q < 1.
double Chi2Quantile(double q, int df);

// Symmetric tridiagonal matrix stored as its diagonal and first
// off-diagonal.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;  // size diag.size() - 1

  std::size_t size() const noexcept { return diag.size(); }

  // y = T x.
  std::vector<double> Multiply(std::span<const double> x) const;
};

// A diag(variances) A^T for the (k-1) x k successive-difference matrix A
// with rows (..., -1, 1, ...):
//   diag_i = v_i + v_{i+1},  off_i = -v_{i+1}.
// Throws NonpositiveVariance unless every entry is positive and finite, and
// TooFewGroups for k < 2.
SymTridiag ContrastCovariance(std::span<const double> variances);

// LDL^T factorization with positive pivots.
class TridiagLdlt {
 public:
  // Throws NotPositiveDefinite if a pivot is not above 1e-300.
  explicit TridiagLdlt(const SymTridiag& t);

  std::vector<double> Solve(std::span<const double> rhs) const;

  std::span<const double> pivots() const noexcept { return d_; }

 private:
  std::vector<double> d_;  // D
  std::vector<double> l_;  // subdiagonal of unit-lower L
};

// x with T x = rhs in O(m).
std::vector<double> SpdTridiagSolve(const SymTridiag& t, std::span<const double> rhs);

// d^T T^-1 d, computed as sum_i z_i^2 / D_i with L z = d, so the result is
// nonnegative by construction and zero only for d = 0.
double QuadraticForm(std::span<const double> d, const SymTridiag& t);

}  // namespace quantest

#endif  // QUANTEST_NUMERICS_H_
