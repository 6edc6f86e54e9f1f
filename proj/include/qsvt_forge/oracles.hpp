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

// Brute-force reference computations. This header deliberately includes no
// other qsvt_forge header (a ctest lint enforces it) so that nothing here
// shares a code path with the pipelines it checks.

#ifndef QSVT_FORGE_ORACLES_HPP
#define QSVT_FORGE_ORACLES_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

namespace qsvt_forge::oracle {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using DMat = Eigen::MatrixXd;
using DVec = Eigen::VectorXd;

struct OracleReport {
  std::string name;
  double oracle = 0;
  double pipeline = 0;
  double abs_err = 0;
  double rel_err = 0;
};

inline OracleReport report(std::string name, double oracle_value, double pipeline_value) {
  OracleReport r{std::move(name), oracle_value, pipeline_value, 0, 0};
  r.abs_err = std::abs(oracle_value - pipeline_value);
  r.rel_err = oracle_value != 0 ? r.abs_err / std::abs(oracle_value) : r.abs_err;
  return r;
}

struct Eig {
  /// Sorted by decreasing magnitude.
  DVec values;
  CMat vectors;
};

inline Eig dense_eig(const CMat &a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_eig: matrix must be square");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("dense_eig: matrix is not Hermitian");
  Eigen::ComplexEigenSolver<CMat> es(a);
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(es.eigenvalues()(i).real()) > std::abs(es.eigenvalues()(j).real());
  });
  Eig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = es.eigenvalues()(idx[std::size_t(k)]).real();
    CVec v = es.eigenvectors().col(idx[std::size_t(k)]);
    out.vectors.col(k) = v / v.norm();
  }
  return out;
}

/// Algebraic extremes of a Hermitian matrix.
inline double lambda_max(const CMat &a) {
  const Eig e = dense_eig(a);
  return e.values.maxCoeff();
}
inline double lambda_min(const CMat &a) {
  const Eig e = dense_eig(a);
  return e.values.minCoeff();
}

inline CMat expm(const CMat &a) { return a.exp(); }
inline CMat logm(const CMat &a) { return a.log(); }
inline CMat sqrtm(const CMat &a) { return a.sqrt(); }
inline CMat powm(const CMat &a, double p) { return a.pow(p); }

inline double opnorm(const CMat &a) {
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

inline CMat dense_inverse(const CMat &a) { return a.fullPivLu().inverse(); }

/// Power iteration on the raw matrix, renormalizing each step.
inline CVec classical_power(const CMat &a, const CVec &x0, std::size_t k) {
  CVec x = x0 / x0.norm();
  for (std::size_t i = 0; i < k; ++i) {
    x = a * x;
    x /= x.norm();
  }
  return x;
}

namespace detail {

/// Decomposes a flat index of (n^p) into p digits, most significant first.
inline void digits(std::size_t flat, std::size_t n, std::size_t p, std::vector<std::size_t> &out) {
  out.assign(p, 0);
  for (std::size_t k = p; k-- > 0;) {
    out[k] = flat % n;
    flat /= n;
  }
}

}  // namespace detail

/// f(x) = 1/2 sum_{I,J} A[I,J] prod_l x_{I_l} prod_l x_{J_l}, one monomial at a time.
inline double monomial_eval(const DMat &a, std::size_t n, std::size_t p, const DVec &x) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < p; ++i) dim *= n;
  if (std::size_t(a.rows()) != dim || std::size_t(x.size()) != n)
    throw std::invalid_argument("monomial_eval: dimension mismatch");
  std::vector<std::size_t> di, dj;
  double acc = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    detail::digits(i, n, p, di);
    double xi = 1;
    for (auto d : di) xi *= x(Eigen::Index(d));
    if (xi == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      const double aij = a(Eigen::Index(i), Eigen::Index(j));
      if (aij == 0) continue;
      detail::digits(j, n, p, dj);
      double xj = 1;
      for (auto d : dj) xj *= x(Eigen::Index(d));
      acc += aij * xi * xj;
    }
  }
  return 0.5 * acc;
}

/// Exact gradient of monomial_eval by differentiating every monomial.
inline DVec monomial_gradient(const DMat &a, std::size_t n, std::size_t p, const DVec &x) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < p; ++i) dim *= n;
  DVec g = DVec::Zero(Eigen::Index(n));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double aij = a(Eigen::Index(i), Eigen::Index(j));
      if (aij == 0) continue;
      std::vector<std::size_t> di, dj;
      detail::digits(i, n, p, di);
      detail::digits(j, n, p, dj);
      idx = di;
      idx.insert(idx.end(), dj.begin(), dj.end());
      for (std::size_t m = 0; m < idx.size(); ++m) {
        double prod = 1;
        for (std::size_t l = 0; l < idx.size(); ++l)
          if (l != m) prod *= x(Eigen::Index(idx[l]));
        g(Eigen::Index(idx[m])) += 0.5 * aij * prod;
      }
    }
  return g;
}

/// Central differences with one Richardson level: (4 g(h/2) - g(h)) / 3.
inline DVec fd_gradient(const std::function<double(const DVec &)> &f, const DVec &x, double h = 1e-4) {
  if (!(h > 0)) throw std::invalid_argument("fd_gradient: h must be positive");
  auto central = [&](double step) {
    DVec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      DVec xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      g(i) = (f(xp) - f(xm)) / (2 * step);
    }
    return g;
  };
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

/// x_{t+1} = x_t - eta grad f(x_t), renormalized when `spherical`.
inline std::vector<DVec> classical_gd_recursion(const DMat &a, std::size_t n, std::size_t p, const DVec &x0, double eta,
                                                std::size_t T, bool spherical) {
  std::vector<DVec> traj{spherical ? DVec(x0 / x0.norm()) : x0};
  for (std::size_t t = 0; t < T; ++t) {
    DVec next = traj.back() - eta * monomial_gradient(a, n, p, traj.back());
    if (spherical) next /= next.norm();
    traj.push_back(next);
  }
  return traj;
}

/// X_{t+1} = 2 X_t - X_t A X_t from X_0 = alpha0 A^+; returns X_0..X_T.
inline std::vector<CMat> classical_newton(const CMat &a, double alpha0, std::size_t T) {
  std::vector<CMat> xs{alpha0 * a.adjoint()};
  for (std::size_t t = 0; t < T; ++t) {
    const CMat &x = xs.back();
    xs.push_back(2 * x - x * a * x);
  }
  return xs;
}

/// Kronecker product written out by hand.
inline CMat kron(const CMat &a, const CMat &b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace qsvt_forge::oracle

#endif
