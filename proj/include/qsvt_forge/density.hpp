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

#ifndef QSVT_FORGE_DENSITY_HPP
#define QSVT_FORGE_DENSITY_HPP

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "qsvt_forge/block_encoding.hpp"

namespace qsvt_forge {

/// `count` identical copies of a density operator.
struct DensityCopies {
  Mat rho;
  std::uint64_t count = 0;
};

struct DmeResult {
  Mat unitary;
  /// Liouville matrix (column-stacking convention) of the simulated channel.
  Mat channel;
  std::uint64_t copies_used = 0;
  /// Distance between the simulated channel and the channel of `unitary`.
  double channel_deviation = 0;
};

namespace blockenc {

inline std::uint64_t dme_copy_count(double t, double eps) {
  require(eps > 0, "density exponentiation: eps must be positive");
  return std::uint64_t(std::ceil(t * t / eps - 1e-12));
}

/// exp(-i rho t) evaluated directly; this is what the partial-swap channel
/// converges to and what exact-mode pipelines use.
inline Mat exact_exponential(const Mat &rho, double t) {
  Mat sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  Vec ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(cplx(0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

namespace detail {

inline Mat liouville_of_unitary(const Mat &u) { return linalg::kron(Mat(u.conjugate()), u); }

inline Mat vec_to_mat(const Vec &v, Eigen::Index d) {
  Mat m(d, d);
  for (Eigen::Index c = 0; c < d; ++c) m.col(c) = v.segment(c * d, d);
  return m;
}

/// Nearest unitary (polar factor) with the phase convention
/// det = exp(-i t tr rho), branch chosen closest to the identity.
inline Mat polar_unitary(const Mat &k, double t, double tr_rho) {
  Eigen::JacobiSVD<Mat> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat v = svd.matrixU() * svd.matrixV().adjoint();
  const Eigen::Index d = v.rows();
  const cplx det = v.determinant();
  const double want = -t * tr_rho;
  const double base = (want - std::arg(det)) / double(d);
  Mat best = v;
  double best_dist = INFINITY;
  for (Eigen::Index m = 0; m < d; ++m) {
    const double phi = base + 2 * std::numbers::pi * double(m) / double(d);
    Mat cand = v * std::exp(cplx(0, phi));
    const double dist = (cand - Mat::Identity(d, d)).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = cand;
    }
  }
  return best;
}

}  // namespace detail

/// Partial-swap simulation of exp(-i rho t): N = ceil(t^2/eps) steps of
/// sigma -> Tr_1[e^{-iS dt} (rho (x) sigma) e^{iS dt}], dt = t/N.
///
/// The returned unitary is the polar factor of the dominant Kraus operator of
/// the N-step channel. A channel fixes a unitary only up to a global phase; it
/// is pinned by det = exp(-i t) (unit-trace rho) on the branch nearest the
/// identity, which is unambiguous for t < pi.
inline DmeResult density_exponentiation(const DensityCopies &copies, double t, double eps) {
  const Eigen::Index d = copies.rho.rows();
  require(d > 0 && copies.rho.cols() == d, "density_exponentiation: rho must be square");
  require(t >= 0, "density_exponentiation: t must be non-negative");
  const std::uint64_t n = t == 0 ? 0 : dme_copy_count(t, eps);
  if (copies.count < n)
    throw ValidationError("density_exponentiation: " + std::to_string(n) + " copies required, " +
                          std::to_string(copies.count) + " supplied");
  DmeResult out;
  out.copies_used = n;
  if (n == 0) {
    out.unitary = Mat::Identity(d, d);
    out.channel = Mat::Identity(d * d, d * d);
    return out;
  }
  const double dt = t / double(n);
  const Mat swap = linalg::swap_operator({std::size_t(d), std::size_t(d)}, 0, 1);
  const Mat step_u = std::cos(dt) * Mat::Identity(d * d, d * d) - cplx(0, std::sin(dt)) * swap;

  // One step as a Liouville matrix, column by column over the basis E_ab.
  Mat step(d * d, d * d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      Mat e = Mat::Zero(d, d);
      e(a, b) = 1.0;
      Mat big = step_u * linalg::kron(copies.rho, e) * step_u.adjoint();
      Mat red = linalg::partial_trace(big, {std::size_t(d), std::size_t(d)}, {1});
      for (Eigen::Index c = 0; c < d; ++c) step.col(b * d + a).segment(c * d, d) = red.col(c);
    }
  // step^n by repeated squaring.
  Mat acc = Mat::Identity(d * d, d * d), base = step;
  for (std::uint64_t k = n; k > 0; k >>= 1) {
    if (k & 1) acc = acc * base;
    base = base * base;
  }
  out.channel = acc;

  // Choi matrix J = sum_ab E_ab (x) Phi(E_ab); its top eigenvector is the
  // dominant Kraus operator.
  Mat choi = Mat::Zero(d * d, d * d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      Mat e = Mat::Zero(d, d);
      e(a, b) = 1.0;
      choi += linalg::kron(e, detail::vec_to_mat(acc.col(b * d + a), d));
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (choi + choi.adjoint()));
  const Vec top = es.eigenvectors().col(d * d - 1) * std::sqrt(std::max(0.0, es.eigenvalues()(d * d - 1)));
  // J = sum_k |K_k>> <<K_k| with |K>> = sum_a |a> (x) K|a>, so K(:, a) = top segment a.
  Mat k(d, d);
  for (Eigen::Index a = 0; a < d; ++a) k.col(a) = top.segment(a * d, d);
  out.unitary = detail::polar_unitary(k, t, copies.rho.trace().real());
  out.channel_deviation = linalg::op_norm(acc - detail::liouville_of_unitary(out.unitary));
  return out;
}

/// Controlled uses of exp(-i rho) charged for a log-unitary to accuracy delta.
inline std::uint64_t log_unitary_charge(double delta) {
  require(delta > 0 && delta < 1, "log_unitary: delta must lie in (0, 1)");
  return std::uint64_t(std::ceil(2.0 * std::log2(1.0 / delta) - 1e-12));
}

/// Encodes pi rho / 4 from V = exp(-i rho) via the principal logarithm.
/// With `noise_seed` set, a Hermitian perturbation of operator norm delta
/// (seeded, deterministic) is added to the encoded block.
inline BlockEncoding log_unitary(const Mat &v, double delta, std::optional<std::uint64_t> noise_seed = std::nullopt) {
  require(v.rows() == v.cols(), "log_unitary: input must be square");
  require(linalg::unitarity_defect(v) <= 1e-9, "log_unitary: input is not unitary");
  const Eigen::Index d = v.rows();
  Eigen::ComplexSchur<Mat> schur(v);
  const Mat &q = schur.matrixU();
  Vec logs(d);
  for (Eigen::Index i = 0; i < d; ++i) logs(i) = std::log(schur.matrixT()(i, i));
  Mat rho = cplx(0, 1) * (q * logs.asDiagonal() * q.adjoint());
  rho = 0.5 * (rho + rho.adjoint());
  Mat blk = (std::numbers::pi / 4.0) * rho;
  if (noise_seed) {
    std::mt19937_64 rng(*noise_seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat h(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) h(i, j) = cplx(g(rng), g(rng));
    h = 0.5 * (h + h.adjoint());
    const double hn = linalg::op_norm(h);
    if (hn > 0) blk += (delta / hn) * h;
  }
  BlockEncoding be = dilate(blk, delta, "log_unitary");
  be.queries = log_unitary_charge(delta);
  return be;
}

}  // namespace blockenc
}  // namespace qsvt_forge

#endif
