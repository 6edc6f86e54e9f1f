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

#ifndef QSVT_FORGE_GENERATE_HPP
#define QSVT_FORGE_GENERATE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qsvt_forge/graddesc.hpp"
#include "qsvt_forge/sparse_matrix.hpp"

namespace qsvt_forge::gen {

struct InstanceSpec {
  std::size_t dim = 4;
  std::size_t sparsity = 1;
  /// Lower bound on lambda_1 - lambda_2.
  double gap = 0.1;
  /// Eigenvalues lie in (1/kappa, hi).
  double kappa = 10;
  double hi = 0.95;
  std::uint64_t seed = 0;
};

struct Instance {
  Mat matrix;
  RVec spectrum;  // planted, descending
};

inline RMat random_orthogonal(std::size_t g, std::mt19937_64 &rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  RMat m(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = nd(rng);
  Eigen::HouseholderQR<RMat> qr(m);
  RMat q = qr.householderQ();
  return q;
}

/// Planted spectrum, then a similarity by a block-diagonal orthogonal matrix
/// with blocks of size s and a random permutation: real symmetric, row
/// sparsity <= s, spectrum exactly the planted one.
inline Instance generate_instance(const InstanceSpec &spec) {
  require(spec.dim >= 1, "generate: dim must be positive");
  require(spec.sparsity >= 1 && spec.sparsity <= spec.dim, "generate: sparsity must lie in [1, dim]");
  require(spec.kappa > 1 && spec.hi <= 1 && spec.hi > 1 / spec.kappa, "generate: need 1/kappa < hi <= 1");
  const double lo = 1.0 / spec.kappa;
  if (spec.dim > 1 && !(spec.gap < spec.hi - lo))
    throw ValidationError("generate: gap " + std::to_string(spec.gap) + " does not fit in (" + std::to_string(lo) + ", " +
                          std::to_string(spec.hi) + ")");
  std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + 0x51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::Index n = Eigen::Index(spec.dim);
  RVec ev(n);
  // lambda_1 in the upper part of the window, the rest below lambda_1 - gap.
  const double l1_lo = std::min(spec.hi, lo + spec.gap + 0.5 * (spec.hi - lo - spec.gap));
  ev(0) = l1_lo + (spec.hi - l1_lo) * u(rng);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double top = ev(0) - spec.gap;
    ev(i) = lo + (top - lo) * (0.02 + 0.98 * u(rng));
  }
  std::sort(ev.data() + 1, ev.data() + n, std::greater<double>());

  RMat q = RMat::Zero(n, n);
  for (std::size_t start = 0; start < spec.dim; start += spec.sparsity) {
    const std::size_t g = std::min(spec.sparsity, spec.dim - start);
    q.block(Eigen::Index(start), Eigen::Index(start), Eigen::Index(g), Eigen::Index(g)) = random_orthogonal(g, rng);
  }
  std::vector<Eigen::Index> perm(spec.dim);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  RMat pq(n, n);
  for (Eigen::Index i = 0; i < n; ++i) pq.row(i) = q.row(perm[std::size_t(i)]);
  // Diagonal entries are placed by a second shuffle so that lambda_1 is not
  // tied to a fixed block.
  std::vector<Eigen::Index> slot(spec.dim);
  std::iota(slot.begin(), slot.end(), Eigen::Index{0});
  std::shuffle(slot.begin(), slot.end(), rng);
  RVec d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(slot[std::size_t(i)]) = ev(i);
  RMat a = pq * d.asDiagonal() * pq.transpose();
  a = (0.5 * (a + a.transpose())).eval();
  // Flush rounding-level fill-in so the stated sparsity is exact.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(a(i, j)) < 1e-15) a(i, j) = 0;
  Instance out;
  out.matrix = a.cast<cplx>();
  out.spectrum = ev;
  return out;
}

/// Non-symmetric, diagonally dominant: diagonal in [0.5, 0.9], off-diagonal
/// row sums of absolute values at most 0.1 over `extra` entries per row.
inline Mat newton_instance(std::size_t dim, std::uint64_t seed, std::size_t extra = 2) {
  require(dim >= 1, "newton_instance: dim must be positive");
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RMat a = RMat::Zero(Eigen::Index(dim), Eigen::Index(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    a(Eigen::Index(i), Eigen::Index(i)) = 0.5 + 0.4 * u(rng);
    if (dim == 1) continue;
    for (std::size_t e = 0; e < extra; ++e) {
      std::size_t j = std::size_t(u(rng) * double(dim)) % dim;
      if (j == i) j = (j + 1) % dim;
      a(Eigen::Index(i), Eigen::Index(j)) = (u(rng) - 0.5) * 0.1 / double(extra);
    }
  }
  return a.cast<cplx>();
}

/// Random symmetric factors scaled so that ||A|| <= target.
inline grad::TensorPolynomial tensor_problem(std::size_t n, std::size_t p, std::size_t K, std::uint64_t seed,
                                             double target = 0.5) {
  require(n >= 1 && p >= 1 && K >= 1, "tensor_problem: n, p and K must be positive");
  require(target > 0 && target < 1, "tensor_problem: target norm must lie in (0, 1)");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 11);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double c = std::pow(target / double(K), 1.0 / double(p));
  std::vector<std::vector<RMat>> terms(K);
  for (auto &term : terms)
    for (std::size_t m = 0; m < p; ++m) {
      RMat f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < f.rows(); ++i)
        for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = nd(rng);
      f = (0.5 * (f + f.transpose())).eval();
      const double nf = linalg::op_norm(f.cast<cplx>());
      term.push_back(nf > 0 ? RMat(f * (c / nf)) : f);
    }
  return grad::TensorPolynomial::from_factors(std::move(terms));
}

}  // namespace qsvt_forge::gen

#endif
