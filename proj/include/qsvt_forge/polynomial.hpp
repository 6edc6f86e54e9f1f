// Copyright 2026 The qsvt-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSVT_FORGE_POLYNOMIAL_HPP
#define QSVT_FORGE_POLYNOMIAL_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "qsvt_forge/errors.hpp"

namespace qsvt_forge {

/// Polynomial in the Chebyshev basis, P(x) = sum_j c_j T_j(x).
///
/// `qsvt_scale` records a factor divided out so that |P| <= 1/2 holds for the
/// transform; the encoded function is qsvt_scale * P.
struct ChebyshevPolynomial {
  std::vector<double> coeffs{0.0};
  double sup_error = 0.0;
  double qsvt_scale = 1.0;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  double operator()(double x) const {
    // Clenshaw recurrence.
    double b1 = 0, b2 = 0;
    for (std::size_t j = coeffs.size(); j-- > 1;) {
      const double b0 = 2 * x * b1 - b2 + coeffs[j];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + coeffs[0];
  }

  /// Maximum of |P| on an evenly spaced grid of `points` points on [lo, hi].
  double grid_sup(std::size_t points = 10000, double lo = -1.0, double hi = 1.0) const {
    double m = 0;
    for (std::size_t i = 0; i < points; ++i) {
      const double x = lo + (hi - lo) * double(i) / double(points - 1);
      m = std::max(m, std::abs((*this)(x)));
    }
    return m;
  }

  /// Halves until |P| <= 1/2 on the test grid; the removed factor goes to
  /// qsvt_scale.
  ChebyshevPolynomial for_qsvt() const {
    ChebyshevPolynomial out = *this;
    while (out.grid_sup() > 0.5) {
      for (auto &c : out.coeffs) c *= 0.5;
      out.sup_error *= 0.5;
      out.qsvt_scale *= 2.0;
    }
    return out;
  }

  /// Converts power-basis coefficients a_0 + a_1 x + ... to Chebyshev form.
  static ChebyshevPolynomial from_monomial(const std::vector<double> &a) {
    const std::size_t n = a.size();
    require(n > 0, "from_monomial: empty coefficient list");
    // x^k = sum_j t[k][j] T_j, built with x T_j = (T_{j+1} + T_{|j-1|}) / 2.
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    t[0][0] = 1.0;
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t j = 0; j < k; ++j) {
        const double v = t[k - 1][j];
        if (v == 0) continue;
        if (j == 0) {
          t[k][1] += v;
        } else {
          t[k][j + 1] += 0.5 * v;
          t[k][j - 1] += 0.5 * v;
        }
      }
    ChebyshevPolynomial p;
    p.coeffs.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) p.coeffs[j] += a[k] * t[k][j];
    return p;
  }
};

/// Chebyshev interpolant of f at d+1 first-kind nodes.
template <typename F>
ChebyshevPolynomial chebyshev_interpolant(F f, std::size_t d) {
  const std::size_t m = d + 1;
  std::vector<double> fx(m);
  for (std::size_t k = 0; k < m; ++k) fx[k] = f(std::cos(std::numbers::pi * (double(k) + 0.5) / double(m)));
  ChebyshevPolynomial p;
  p.coeffs.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0;
    for (std::size_t k = 0; k < m; ++k) acc += fx[k] * std::cos(std::numbers::pi * double(j) * (double(k) + 0.5) / double(m));
    p.coeffs[j] = (j == 0 ? 1.0 : 2.0) * acc / double(m);
  }
  return p;
}

/// Polynomial approximant of exp(-beta (1 - x)) on [-1, 1]: the lowest-degree
/// Chebyshev interpolant whose error on a 10^4-point grid is <= eps.
inline ChebyshevPolynomial exp_poly(double beta, double eps) {
  require(beta > 0, "exp_poly: beta must be positive");
  require(eps > 0 && eps < 0.5, "exp_poly: eps must lie in (0, 1/2)");
  auto f = [beta](double x) { return std::exp(-beta * (1.0 - x)); };
  constexpr std::size_t kGrid = 10000;
  for (std::size_t d = 0; d <= 400; ++d) {
    ChebyshevPolynomial p = chebyshev_interpolant(f, d);
    double err = 0;
    for (std::size_t i = 0; i < kGrid; ++i) {
      const double x = -1.0 + 2.0 * double(i) / double(kGrid - 1);
      err = std::max(err, std::abs(p(x) - f(x)));
    }
    if (err <= eps) {
      p.sup_error = err;
      return p;
    }
  }
  throw ValidationError("exp_poly: no interpolant up to degree 400 reaches eps");
}

}  // namespace qsvt_forge

#endif
