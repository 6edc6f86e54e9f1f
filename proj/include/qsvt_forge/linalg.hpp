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

#ifndef QSVT_FORGE_LINALG_HPP
#define QSVT_FORGE_LINALG_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qsvt_forge/errors.hpp"

namespace qsvt_forge {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace linalg {

/// Eigenvalues this close below zero are treated as zero when taking
/// square roots of operators that are PSD in exact arithmetic.
inline constexpr double kPsdClamp = 1e-12;

inline Mat kron(const Mat &a, const Mat &b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vec kron(const Vec &a, const Vec &b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Mat identity(std::size_t n) { return Mat::Identity(Eigen::Index(n), Eigen::Index(n)); }

inline double op_norm(const Mat &m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline double max_abs(const Mat &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// max |(U^dagger U - I)_ij|
inline double unitarity_defect(const Mat &u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - identity(std::size_t(u.rows())));
}

inline bool is_hermitian(const Mat &m, double tol = 1e-12) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

/// Applies f to the eigenvalues of a Hermitian matrix.
template <typename F>
Mat hermitian_function(const Mat &h, F f) {
  Mat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  RVec ev = es.eigenvalues();
  Vec fv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) fv(i) = f(ev(i));
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

/// Square root of a PSD matrix; eigenvalues in [-kPsdClamp, 0] go to 0.
inline Mat psd_sqrt(const Mat &h) {
  return hermitian_function(h, [](double x) {
    if (x < -kPsdClamp) throw ValidationError("psd_sqrt: matrix has a negative eigenvalue");
    return std::sqrt(std::max(x, 0.0));
  });
}

inline std::size_t product(const std::vector<std::size_t> &dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

/// For a tensor-product space with register dimensions `dims` (register 0 is
/// most significant), returns the map old flat index -> new flat index after
/// reordering so that new register i is old register perm[i].
inline std::vector<std::size_t> register_index_map(const std::vector<std::size_t> &dims,
                                                   const std::vector<std::size_t> &perm) {
  const std::size_t r = dims.size();
  require(perm.size() == r, "register permutation size mismatch");
  std::vector<std::size_t> new_dims(r), new_stride(r), old_digit(r);
  for (std::size_t i = 0; i < r; ++i) new_dims[i] = dims[perm[i]];
  std::size_t acc = 1;
  for (std::size_t i = r; i-- > 0;) {
    new_stride[i] = acc;
    acc *= new_dims[i];
  }
  // position of old register j in the new order
  std::vector<std::size_t> where(r);
  for (std::size_t i = 0; i < r; ++i) where[perm[i]] = i;

  const std::size_t total = product(dims);
  std::vector<std::size_t> map(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = r; j-- > 0;) {
      old_digit[j] = rem % dims[j];
      rem /= dims[j];
    }
    std::size_t out = 0;
    for (std::size_t j = 0; j < r; ++j) out += old_digit[j] * new_stride[where[j]];
    map[idx] = out;
  }
  return map;
}

inline Mat permute_registers(const Mat &m, const std::vector<std::size_t> &dims,
                             const std::vector<std::size_t> &perm) {
  const auto map = register_index_map(dims, perm);
  require(std::size_t(m.rows()) == map.size() && m.rows() == m.cols(), "permute_registers: dimension mismatch");
  Mat out(m.rows(), m.cols());
  for (std::size_t c = 0; c < map.size(); ++c)
    for (std::size_t r = 0; r < map.size(); ++r) out(Eigen::Index(map[r]), Eigen::Index(map[c])) = m(Eigen::Index(r), Eigen::Index(c));
  return out;
}

inline Vec permute_registers(const Vec &v, const std::vector<std::size_t> &dims,
                             const std::vector<std::size_t> &perm) {
  const auto map = register_index_map(dims, perm);
  require(std::size_t(v.size()) == map.size(), "permute_registers: dimension mismatch");
  Vec out(v.size());
  for (std::size_t r = 0; r < map.size(); ++r) out(Eigen::Index(map[r])) = v(Eigen::Index(r));
  return out;
}

/// Lifts `op`, acting on registers `targets` (in that order), to the full
/// space with identity on every other register.
inline Mat embed(const Mat &op, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &targets) {
  std::vector<std::size_t> order = targets;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (std::find(targets.begin(), targets.end(), j) == targets.end()) rest.push_back(j);
  std::size_t dt = 1, dr = 1;
  for (auto j : targets) dt *= dims[j];
  for (auto j : rest) dr *= dims[j];
  require(std::size_t(op.rows()) == dt, "embed: operator does not match target registers");
  order.insert(order.end(), rest.begin(), rest.end());
  Mat local = kron(op, identity(dr));
  // `local` lives in register order `order`; move back to natural order.
  std::vector<std::size_t> local_dims(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) local_dims[i] = dims[order[i]];
  std::vector<std::size_t> back(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) back[order[i]] = i;
  return permute_registers(local, local_dims, back);
}

/// Partial trace keeping the registers listed in `keep` (in natural order).
inline Mat partial_trace(const Mat &rho, const std::vector<std::size_t> &dims, const std::vector<std::size_t> &keep) {
  std::vector<std::size_t> traced;
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (std::find(keep.begin(), keep.end(), j) == keep.end()) traced.push_back(j);
  std::vector<std::size_t> order = keep;
  order.insert(order.end(), traced.begin(), traced.end());
  Mat r = permute_registers(rho, dims, order);
  std::size_t dk = 1, dt = 1;
  for (auto j : keep) dk *= dims[j];
  for (auto j : traced) dt *= dims[j];
  Mat out = Mat::Zero(Eigen::Index(dk), Eigen::Index(dk));
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cplx acc = 0;
      for (std::size_t e = 0; e < dt; ++e) acc += r(Eigen::Index(a * dt + e), Eigen::Index(b * dt + e));
      out(Eigen::Index(a), Eigen::Index(b)) = acc;
    }
  return out;
}

/// Reduced density of the first register of a bipartite pure state
/// |psi> in C^{da} (x) C^{db}.
inline Mat reduced_first(const Vec &psi, std::size_t da, std::size_t db) {
  require(std::size_t(psi.size()) == da * db, "reduced_first: dimension mismatch");
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.data(), Eigen::Index(da), Eigen::Index(db));
  return m * m.adjoint();
}

/// Swap of registers i and j as a permutation matrix.
inline Mat swap_operator(const std::vector<std::size_t> &dims, std::size_t i, std::size_t j) {
  std::vector<std::size_t> perm(dims.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::swap(perm[i], perm[j]);
  const auto map = register_index_map(dims, perm);
  Mat s = Mat::Zero(Eigen::Index(map.size()), Eigen::Index(map.size()));
  for (std::size_t r = 0; r < map.size(); ++r) s(Eigen::Index(map[r]), Eigen::Index(r)) = 1.0;
  return s;
}

/// Real unitary reflection V with V e_0 = w (w unit norm).
inline Mat reflection_to(const Vec &w) {
  const Eigen::Index n = w.size();
  Vec e0 = Vec::Zero(n);
  e0(0) = 1.0;
  // Align the global phase of w with e0 so the reflection is exact.
  cplx ph = std::abs(w(0)) > 0 ? w(0) / std::abs(w(0)) : cplx(1.0);
  Vec u = e0 - w / ph;
  Mat v = identity(std::size_t(n));
  const double nu = u.squaredNorm();
  if (nu > 1e-30) v -= 2.0 * u * u.adjoint() / nu;
  return v * ph;
}

/// Complete the unit vector w into a unitary whose first column is w.
inline Mat unitary_with_first_column(const Vec &w) { return reflection_to(w); }

inline std::size_t ceil_log2(std::size_t m) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < m) ++q;
  return q;
}

inline Mat ry(double theta) {
  Mat r(2, 2);
  r << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return r;
}

inline Mat pauli_z() {
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

inline Mat hadamard() {
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace linalg
}  // namespace qsvt_forge

#endif
