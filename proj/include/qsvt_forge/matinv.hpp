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

#ifndef QSVT_FORGE_MATINV_HPP
#define QSVT_FORGE_MATINV_HPP

#include <cmath>
#include <vector>

#include "qsvt_forge/block_encoding.hpp"

namespace qsvt_forge::matinv {

struct NewtonConfig {
  Mat matrix;
  /// X_0 = alpha0 A^+; 0 selects 1 / (||A||_1 ||A||_inf).
  double alpha0 = 0;
  std::size_t T = 8;
  double eps = 0;
};

struct NewtonResult {
  BlockEncoding x;
  /// ||I - A X_t||_2 for t = 0..T, from the encoded iterates.
  std::vector<double> residual;
  std::vector<Mat> iterates;
  double alpha0 = 0;
  /// A-priori bound on ||X_t|| used as the subnormalization of every iterate.
  double norm_bound = 0;
};

inline double default_alpha0(const Mat &a) {
  const double n1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const double ninf = a.cwiseAbs().rowwise().sum().maxCoeff();
  require(n1 > 0 && ninf > 0, "newton: matrix is zero");
  return 1.0 / (n1 * ninf);
}

/// Encoding of A with alpha = max(1, s); entries must satisfy |a_ij| <= 1.
inline BlockEncoding encode_general(const Mat &a) {
  require(a.rows() == a.cols() && a.rows() > 0, "newton: matrix must be square");
  require(a.cwiseAbs().maxCoeff() <= 1.0 + 1e-12, "newton: entries must satisfy |a_ij| <= 1");
  const double s = std::max<double>(1.0, double(SparseHermitianMatrix::row_sparsity(a)));
  BlockEncoding be = blockenc::dilate(a / s, 0.0, "entry_oracle");
  be.alpha = s;
  be.queries = 1;
  return be;
}

namespace detail {

/// Re-subnormalizes to `target`: preamplify when the current alpha is larger,
/// shrink with a rotated ancilla when it is smaller.
inline BlockEncoding to_alpha(const BlockEncoding &be, double target) {
  const double f = be.alpha / target;
  if (f > 1.0 + 1e-15) return blockenc::preamplify(be, f);
  if (f < 1.0 - 1e-15) {
    BlockEncoding out = blockenc::scale_down(be, 1.0 / f);
    out.alpha = target;
    out.eps = be.eps;
    return out;
  }
  return blockenc::relabel_alpha(be, target);
}

}  // namespace detail

/// Both sides of I - A X_{t+1} = (I - A X_t)^2 with X_{t+1} = 2 X_t - X_t A X_t.
struct Contraction {
  Mat lhs, rhs;
};

inline Contraction residual_contraction_check(const Mat &a, const Mat &x) {
  require(a.rows() == a.cols() && x.rows() == a.cols() && x.cols() == a.rows(), "contraction: shapes differ");
  const Mat id = Mat::Identity(a.rows(), a.cols());
  const Mat next = 2 * x - x * a * x;
  const Mat r = id - a * x;
  return {id - a * next, r * r};
}

inline NewtonResult newton_inverse(const NewtonConfig &cfg) {
  const Mat &a = cfg.matrix;
  const BlockEncoding be_a = encode_general(a);
  NewtonResult res;
  res.alpha0 = cfg.alpha0 > 0 ? cfg.alpha0 : default_alpha0(a);
  const Eigen::Index n = a.rows();
  const Mat id = Mat::Identity(n, n);
  const Mat x0 = res.alpha0 * a.adjoint();
  const double r0 = linalg::op_norm(id - a * x0);
  if (!(r0 < 1.0))
    throw ValidationError("newton: ||I - alpha0 A A^+|| = " + std::to_string(r0) + " is not below 1");
  // ||A^-1|| <= ||X_0|| / (1 - ||R_0||) and ||X_t|| <= ||A^-1|| (1 + ||R_t||).
  res.norm_bound = 2.0 * linalg::op_norm(x0) / (1.0 - r0);

  // X_0: the rotated ancilla carries cos(theta/2) = alpha0 s when that is <= 1.
  BlockEncoding x = blockenc::dilate(a.adjoint() / be_a.alpha, 0.0, "entry_oracle^+");
  x.queries = 1;
  const double c = res.alpha0 * be_a.alpha;
  if (c < 1.0) {
    x = blockenc::scale_down(x, 1.0 / c);
    x.alpha = 1.0;
  } else {
    x.alpha = c;
  }
  x = detail::to_alpha(x, res.norm_bound);

  auto record = [&](const BlockEncoding &b) {
    const Mat xt = blockenc::encoded_block(b);
    res.iterates.push_back(xt);
    res.residual.push_back(linalg::op_norm(id - a * xt));
  };
  record(x);
  for (std::size_t t = 0; t < cfg.T; ++t) {
    const BlockEncoding xax = blockenc::product(blockenc::product(x, be_a), x);
    BlockEncoding mean = blockenc::linear_combination({x, x, xax}, {+1, +1, -1});
    mean = blockenc::relabel_alpha(mean, 3.0 * mean.alpha);  // encodes 2X - XAX
    x = detail::to_alpha(mean, res.norm_bound);
    x.provenance = {"newton(t=" + std::to_string(t + 1) + ")"};
    record(x);
    if (res.residual.back() > 1.0)
      throw DegeneracyError("newton: residual " + std::to_string(res.residual.back()) + " exceeds 1 at step " +
                            std::to_string(t + 1));
  }
  res.x = x;
  return res;
}

}  // namespace qsvt_forge::matinv

#endif
