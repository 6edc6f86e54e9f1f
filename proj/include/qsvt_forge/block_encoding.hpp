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

#ifndef QSVT_FORGE_BLOCK_ENCODING_HPP
#define QSVT_FORGE_BLOCK_ENCODING_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qsvt_forge/linalg.hpp"
#include "qsvt_forge/polynomial.hpp"
#include "qsvt_forge/sparse_matrix.hpp"

namespace qsvt_forge {

/// A unitary U on (ancilla register) x (system register) whose top-left
/// sys_dim x sys_dim block, times alpha, is the encoded matrix.
///
/// The ancilla register is the most significant one, so "ancilla in |0>"
/// selects the first sys_dim basis states. Ancillas are usually qubits
/// (anc_dim = 2^a) but a general register dimension is allowed; this is what
/// the gradient-operator extraction needs when an n-dimensional register is
/// reinterpreted as an ancilla.
/// Query counts saturate instead of wrapping; long amplified chains can
/// nominally exceed 2^64.
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

struct BlockEncoding {
  Mat unitary;
  double alpha = 1.0;
  std::size_t anc_dim = 1;
  std::size_t sys_dim = 1;
  double eps = 0.0;
  /// Uses of elementary oracles (sparse-access oracles, state preparations)
  /// consumed by one application of `unitary`.
  std::uint64_t queries = 1;
  std::vector<std::string> provenance;

  std::size_t anc_qubits() const { return linalg::ceil_log2(anc_dim); }
  std::size_t sys_qubits() const { return linalg::ceil_log2(sys_dim); }
  Mat block() const { return unitary.topLeftCorner(Eigen::Index(sys_dim), Eigen::Index(sys_dim)); }
};

struct PureState {
  Vec amplitudes;

  PureState() = default;
  explicit PureState(Vec v, bool normalize = true) : amplitudes(std::move(v)) {
    const double n = amplitudes.norm();
    require(n > 0, "PureState: zero vector");
    if (normalize) amplitudes /= n;
    require(std::abs(amplitudes.norm() - 1.0) <= 1e-12, "PureState: not unit norm");
  }
  std::size_t dim() const { return std::size_t(amplitudes.size()); }
  std::size_t qubits() const { return linalg::ceil_log2(dim()); }
};

/// A purification |Phi> on system (x) environment, i.e. the first column of
/// a preparation unitary. Storing only the column keeps large instances cheap.
struct Purification {
  Vec state;
  std::size_t sys_dim = 1;
  std::size_t env_dim = 1;

  Mat reduced() const { return linalg::reduced_first(state, sys_dim, env_dim); }
};

namespace blockenc {

inline BlockEncoding from_unitary(Mat u, std::size_t anc_dim, std::size_t sys_dim, double alpha = 1.0,
                                  std::string label = "unitary") {
  require(u.rows() == u.cols() && std::size_t(u.rows()) == anc_dim * sys_dim,
          "from_unitary: dimension does not match anc_dim * sys_dim");
  require(linalg::unitarity_defect(u) <= 1e-10, "from_unitary: matrix is not unitary");
  BlockEncoding be;
  be.unitary = std::move(u);
  be.alpha = alpha;
  be.anc_dim = anc_dim;
  be.sys_dim = sys_dim;
  be.queries = 0;
  be.provenance = {std::move(label)};
  return be;
}

/// Unitary dilation [[A, sqrt(I - AA^+)], [sqrt(I - A^+A), -A^+]].
inline BlockEncoding dilate(const Mat &a, double target_eps = 0.0, std::string label = "dilate") {
  require(a.rows() == a.cols(), "dilate: matrix must be square");
  const double nrm = linalg::op_norm(a);
  require(nrm <= 1.0 + 1e-12, "dilate: operator norm exceeds 1");
  const Eigen::Index n = a.rows();
  const Mat id = Mat::Identity(n, n);
  Mat u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = a;
  u.topRightCorner(n, n) = linalg::psd_sqrt(id - a * a.adjoint());
  u.bottomLeftCorner(n, n) = linalg::psd_sqrt(id - a.adjoint() * a);
  u.bottomRightCorner(n, n) = -a.adjoint();
  BlockEncoding be;
  be.unitary = std::move(u);
  be.alpha = 1.0;
  be.anc_dim = 2;
  be.sys_dim = std::size_t(n);
  be.eps = target_eps;
  be.queries = 1;
  be.provenance = {std::move(label)};
  return be;
}

inline BlockEncoding identity_encoding(std::size_t dim) {
  auto be = from_unitary(linalg::identity(dim), 1, dim, 1.0, "identity");
  return be;
}

inline Mat encoded_block(const BlockEncoding &be) { return be.alpha * be.block(); }

struct Applied {
  Vec flagged;
  double success_prob = 0;
};

/// U |0>|phi>, restricted to the all-zero ancilla branch.
inline Applied apply_to_state(const BlockEncoding &be, const Vec &phi) {
  require(std::size_t(phi.size()) == be.sys_dim, "apply_to_state: state dimension mismatch");
  Applied out;
  out.flagged = be.block() * phi;
  out.success_prob = out.flagged.squaredNorm();
  return out;
}

/// The full output vector U |0>|phi> (ancilla-major layout).
inline Vec apply_full(const BlockEncoding &be, const Vec &phi) {
  require(std::size_t(phi.size()) == be.sys_dim, "apply_full: state dimension mismatch");
  return be.unitary.leftCols(Eigen::Index(be.sys_dim)) * phi;
}

/// Reinterprets the same unitary with a different subnormalization.
inline BlockEncoding relabel_alpha(BlockEncoding be, double new_alpha) {
  require(new_alpha > 0, "relabel_alpha: alpha must be positive");
  be.eps *= new_alpha / be.alpha;
  be.alpha = new_alpha;
  return be;
}

inline std::vector<std::string> join_provenance(const std::string &op, std::initializer_list<const BlockEncoding *> parts) {
  std::vector<std::string> out;
  for (auto *p : parts) out.insert(out.end(), p->provenance.begin(), p->provenance.end());
  out.push_back(op);
  return out;
}

/// Encodes A1 A2 with separate ancilla registers: (anc1, anc2, sys).
inline BlockEncoding product(const BlockEncoding &b1, const BlockEncoding &b2) {
  require(b1.sys_dim == b2.sys_dim, "product: system dimensions differ");
  const std::vector<std::size_t> dims{b1.anc_dim, b2.anc_dim, b1.sys_dim};
  Mat u1 = linalg::embed(b1.unitary, dims, {0, 2});
  Mat u2 = linalg::embed(b2.unitary, dims, {1, 2});
  BlockEncoding be;
  be.unitary = u1 * u2;
  be.alpha = b1.alpha * b2.alpha;
  be.anc_dim = b1.anc_dim * b2.anc_dim;
  be.sys_dim = b1.sys_dim;
  be.eps = b1.alpha * b2.eps + b2.alpha * b1.eps;
  be.queries = sat_add(b1.queries, b2.queries);
  be.provenance = join_provenance("product", {&b1, &b2});
  return be;
}

/// R_Y(theta) with cos(theta/2) = c, as a one-ancilla encoding of the scalar c.
inline Mat ry_for_cos(double c) {
  require(c >= 0 && c <= 1.0 + 1e-15, "ry_for_cos: value must lie in [0, 1]");
  return linalg::ry(2.0 * std::acos(std::min(c, 1.0)));
}

/// Encodes A/p by tensoring a rotated ancilla: (new anc, old anc, sys).
inline BlockEncoding scale_down(const BlockEncoding &be, double p) {
  require(p > 1.0, "scale_down: factor must exceed 1");
  BlockEncoding out;
  out.unitary = linalg::kron(ry_for_cos(1.0 / p), be.unitary);
  out.alpha = be.alpha;
  out.anc_dim = 2 * be.anc_dim;
  out.sys_dim = be.sys_dim;
  out.eps = be.eps / p;
  out.queries = be.queries;
  out.provenance = be.provenance;
  out.provenance.push_back("scale_down(" + std::to_string(p) + ")");
  return out;
}

/// c * I_dim via R_Y(theta) (x) I, cos(theta/2) = c.
inline BlockEncoding diag_encode(double c, std::size_t dim) {
  require(c > 0 && c <= 1.0, "diag_encode: c must lie in (0, 1]");
  BlockEncoding be;
  be.unitary = linalg::kron(ry_for_cos(c), linalg::identity(dim));
  be.alpha = 1.0;
  be.anc_dim = 2;
  be.sys_dim = dim;
  be.eps = 0;
  be.queries = 0;
  be.provenance = {"diag(" + std::to_string(c) + ")"};
  return be;
}

/// Extends the ancilla register to `anc_dim` by acting as the identity on
/// the new ancilla basis states; the top-left block is unchanged.
inline BlockEncoding pad_ancilla(const BlockEncoding &be, std::size_t anc_dim) {
  require(anc_dim >= be.anc_dim, "pad_ancilla: cannot shrink the ancilla register");
  if (anc_dim == be.anc_dim) return be;
  BlockEncoding out = be;
  const Eigen::Index old_n = be.unitary.rows();
  const Eigen::Index n = Eigen::Index(anc_dim * be.sys_dim);
  out.unitary = Mat::Identity(n, n);
  out.unitary.topLeftCorner(old_n, old_n) = be.unitary;
  out.anc_dim = anc_dim;
  return out;
}

/// Prepare-select linear combination: encodes sum_i sign_i M_i / m where M_i
/// is encoded_block of term i. Terms with smaller alpha are first scaled
/// down to the largest alpha, so the equal-weight form applies; the result
/// carries alpha = max_i alpha_i.
inline BlockEncoding linear_combination(const std::vector<BlockEncoding> &bes, const std::vector<int> &signs) {
  require(!bes.empty(), "linear_combination: empty list");
  require(signs.size() == bes.size(), "linear_combination: one sign per term required");
  const std::size_t m = bes.size();
  const std::size_t sys = bes[0].sys_dim;
  double amax = 0;
  for (const auto &b : bes) {
    require(b.sys_dim == sys, "linear_combination: system dimensions differ");
    amax = std::max(amax, b.alpha);
  }
  for (int s : signs) require(s == 1 || s == -1, "linear_combination: signs must be +1 or -1");

  std::vector<BlockEncoding> terms;
  terms.reserve(m);
  std::size_t anc = 1;
  double eps_sum = 0;
  std::uint64_t q = 0;
  for (const auto &b : bes) {
    BlockEncoding t = b;
    if (b.alpha < amax * (1 - 1e-15)) {
      t = scale_down(b, amax / b.alpha);
      t.alpha = amax;
      t.eps = b.eps;  // scaling the block leaves the error of the target unchanged
    }
    anc = std::max(anc, t.anc_dim);
    eps_sum += t.eps;
    q = sat_add(q, t.queries);
    terms.push_back(std::move(t));
  }
  const std::size_t sel = std::size_t{1} << linalg::ceil_log2(m);
  const std::size_t blk = anc * sys;
  Vec w = Vec::Zero(Eigen::Index(sel));
  for (std::size_t i = 0; i < m; ++i) w(Eigen::Index(i)) = 1.0 / std::sqrt(double(m));
  const Mat prep = linalg::kron(linalg::reflection_to(w), linalg::identity(blk));

  Mat select = Mat::Identity(Eigen::Index(sel * blk), Eigen::Index(sel * blk));
  for (std::size_t i = 0; i < m; ++i) {
    BlockEncoding t = pad_ancilla(terms[i], anc);
    select.block(Eigen::Index(i * blk), Eigen::Index(i * blk), Eigen::Index(blk), Eigen::Index(blk)) =
        double(signs[i]) * t.unitary;
  }
  BlockEncoding out;
  out.unitary = prep.adjoint() * select * prep;
  out.alpha = amax;
  out.anc_dim = sel * anc;
  out.sys_dim = sys;
  out.eps = eps_sum / double(m);
  out.queries = q;
  for (const auto &b : bes) out.provenance.insert(out.provenance.end(), b.provenance.begin(), b.provenance.end());
  out.provenance.push_back("lcu(" + std::to_string(m) + ")");
  return out;
}

/// Kronecker product of encodings; all ancillas are gathered in front so the
/// joint |0...0> flag selects every sub-block.
inline BlockEncoding tensor(const std::vector<BlockEncoding> &bes) {
  require(!bes.empty(), "tensor: empty list");
  const std::size_t m = bes.size();
  Mat u = bes[0].unitary;
  std::vector<std::size_t> dims{bes[0].anc_dim, bes[0].sys_dim};
  double alpha = bes[0].alpha, with_err = bes[0].alpha + bes[0].eps;
  std::size_t anc = bes[0].anc_dim, sys = bes[0].sys_dim;
  std::uint64_t q = bes[0].queries;
  for (std::size_t i = 1; i < m; ++i) {
    u = linalg::kron(u, bes[i].unitary);
    dims.push_back(bes[i].anc_dim);
    dims.push_back(bes[i].sys_dim);
    alpha *= bes[i].alpha;
    with_err *= bes[i].alpha + bes[i].eps;
    anc *= bes[i].anc_dim;
    sys *= bes[i].sys_dim;
    q = sat_add(q, bes[i].queries);
  }
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < m; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < m; ++i) perm.push_back(2 * i + 1);
  BlockEncoding out;
  out.unitary = m == 1 ? u : linalg::permute_registers(u, dims, perm);
  out.alpha = alpha;
  out.anc_dim = anc;
  out.sys_dim = sys;
  out.eps = with_err - alpha;
  out.queries = q;
  for (const auto &b : bes) out.provenance.insert(out.provenance.end(), b.provenance.begin(), b.provenance.end());
  out.provenance.push_back("tensor(" + std::to_string(m) + ")");
  return out;
}

/// Gate-count model for the sparse-access encoding: log n + log^2.5(1/eps).
inline double sparse_oracle_cost(std::size_t n, double eps) {
  const double e = eps > 0 ? eps : 1e-16;
  return std::log2(double(std::max<std::size_t>(n, 2))) + std::pow(std::log2(1.0 / e), 2.5);
}

/// Encodes A/s with alpha = s (dilation of A/s at desk scale).
inline BlockEncoding sparse_oracle_encode(const SparseHermitianMatrix &a, double eps = 0.0) {
  const double s = double(a.sparsity());
  require(linalg::op_norm(a.dense()) <= s * (1 + 1e-12), "sparse_oracle_encode: ||A|| exceeds s");
  BlockEncoding be = dilate(a.dense() / s, 0.0,
                            "sparse_oracle(n=" + std::to_string(a.dim()) + ",s=" + std::to_string(a.sparsity()) +
                                ",cost=" + std::to_string(sparse_oracle_cost(a.dim(), eps)) + ")");
  be.alpha = s;
  be.eps = eps;
  be.queries = 1;
  return be;
}

namespace detail {

/// Groups rows/columns of `b` into blocks that are decoupled by exact zeros.
/// Each decoupled block is handled with its own scale so that tiny singular
/// values (for instance p_k ~ 1e-30 in a long power run) keep full relative
/// accuracy instead of drowning in the rounding noise of larger blocks.
struct Component {
  std::vector<Eigen::Index> rows, cols;
};

inline std::vector<Component> decoupled_components(const Mat &b) {
  const Eigen::Index n = b.rows(), m = b.cols();
  std::vector<Eigen::Index> parent(std::size_t(n + m));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
    return x;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      if (b(i, j) != cplx(0.0)) parent[std::size_t(find(i))] = find(n + j);
  std::vector<Component> comps;
  std::vector<Eigen::Index> slot(std::size_t(n + m), -1);
  for (Eigen::Index x = 0; x < n + m; ++x) {
    const Eigen::Index r = find(x);
    if (slot[std::size_t(r)] < 0) {
      slot[std::size_t(r)] = Eigen::Index(comps.size());
      comps.emplace_back();
    }
    auto &c = comps[std::size_t(slot[std::size_t(r)])];
    if (x < n)
      c.rows.push_back(x);
    else
      c.cols.push_back(x - n);
  }
  return comps;
}

}  // namespace detail

/// Purification of a density matrix: sum_i sqrt(p_i) |v_i>|i>.
/// Blocks of rho decoupled by exact zeros are diagonalized separately, so a
/// tiny block next to an O(1) block keeps its relative accuracy.
inline Purification purify(const Mat &rho) {
  const Eigen::Index n = rho.rows();
  require(n > 0 && rho.cols() == n, "purify: matrix must be square");
  const Mat sym = 0.5 * (rho + rho.adjoint());
  Purification p;
  p.sys_dim = std::size_t(n);
  p.env_dim = std::size_t(n);
  p.state = Vec::Zero(n * n);
  Eigen::Index env = 0;
  for (const auto &c : detail::decoupled_components(sym)) {
    const auto &idx = c.rows;
    if (idx.empty()) continue;
    const Eigen::Index m = Eigen::Index(idx.size());
    Mat sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = sym(idx[std::size_t(i)], idx[std::size_t(j)]);
    const double scale = sub.cwiseAbs().maxCoeff();
    if (scale == 0) {
      env += m;
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(sub / scale);
    for (Eigen::Index i = 0; i < m; ++i, ++env) {
      const double w = es.eigenvalues()(i) * scale;
      if (w < -linalg::kPsdClamp) throw ValidationError("purify: matrix is not PSD");
      if (w <= 0) continue;
      for (Eigen::Index r = 0; r < m; ++r) p.state(idx[std::size_t(r)] * n + env) = std::sqrt(w) * es.eigenvectors()(r, i);
    }
  }
  return p;
}

/// Encodes rho = Tr_env |Phi><Phi| with alpha = 1.
inline BlockEncoding purified_density_encode(const Purification &pur, std::uint64_t prep_queries = 1) {
  require(std::size_t(pur.state.size()) == pur.sys_dim * pur.env_dim, "purified_density_encode: dimension mismatch");
  require(std::abs(pur.state.norm() - 1.0) <= 1e-10, "purified_density_encode: preparation is not norm-preserving");
  Mat rho = pur.reduced();
  BlockEncoding be = dilate(0.5 * (rho + rho.adjoint()), 0.0, "purified_density");
  be.queries = prep_queries;
  return be;
}

/// Same, from an explicit preparation unitary on system (x) environment.
inline BlockEncoding purified_density_encode(const Mat &prep, std::size_t sys_dim, std::size_t env_dim,
                                             std::uint64_t prep_queries = 1) {
  require(std::size_t(prep.rows()) == sys_dim * env_dim && prep.rows() == prep.cols(),
          "purified_density_encode: preparation has the wrong shape");
  require(linalg::unitarity_defect(prep) <= 1e-10, "purified_density_encode: preparation is not unitary");
  return purified_density_encode(Purification{prep.col(0), sys_dim, env_dim}, prep_queries);
}

/// Accuracy charged for a transform of degree d on an (alpha, eps) input.
inline double poly_transform_eps(std::size_t d, double eps, double alpha) {
  return eps <= 0 ? 0.0 : 4.0 * double(d) * std::sqrt(eps / alpha);
}

/// Singular-value transform: B = sum sigma u v^+  ->  sum P(sigma) u v^+ over
/// the nonzero singular values, then re-dilated. Requires |P| <= 1/2 on the
/// test grid; the result has alpha = P.qsvt_scale.
inline BlockEncoding poly_transform(const BlockEncoding &be, const ChebyshevPolynomial &p) {
  require(p.grid_sup() <= 0.5 + 1e-12, "poly_transform: |P| exceeds 1/2 on the test grid");
  const Mat b = be.block();
  Mat out = Mat::Zero(b.rows(), b.cols());
  for (const auto &c : detail::decoupled_components(b)) {
    if (c.rows.empty() || c.cols.empty()) continue;
    Mat sub(static_cast<Eigen::Index>(c.rows.size()), static_cast<Eigen::Index>(c.cols.size()));
    for (std::size_t i = 0; i < c.rows.size(); ++i)
      for (std::size_t j = 0; j < c.cols.size(); ++j) sub(Eigen::Index(i), Eigen::Index(j)) = b(c.rows[i], c.cols[j]);
    const double scale = sub.cwiseAbs().maxCoeff();
    if (scale == 0) continue;
    Eigen::JacobiSVD<Mat> svd(sub / scale, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    Mat t = Mat::Zero(sub.rows(), sub.cols());
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) <= 1e-13 * sv(0)) continue;
      t += p(sv(k) * scale) * svd.matrixU().col(k) * svd.matrixV().col(k).adjoint();
    }
    for (std::size_t i = 0; i < c.rows.size(); ++i)
      for (std::size_t j = 0; j < c.cols.size(); ++j) out(c.rows[i], c.cols[j]) = t(Eigen::Index(i), Eigen::Index(j));
  }
  BlockEncoding r = dilate(out);
  r.alpha = p.qsvt_scale;
  r.eps = poly_transform_eps(p.degree(), be.eps, be.alpha);
  r.queries = sat_mul(std::max<std::uint64_t>(1, p.degree()), be.queries);
  r.provenance = be.provenance;
  r.provenance.push_back("poly_transform(d=" + std::to_string(p.degree()) + ")");
  return r;
}

/// Removes a known factor from the subnormalization: alpha -> alpha/factor.
inline BlockEncoding preamplify(const BlockEncoding &be, double factor) {
  require(factor >= 1.0, "preamplify: factor must be at least 1");
  if (factor == 1.0) return be;
  const Mat b = be.block() * factor;
  require(linalg::op_norm(b) <= 1.0 + 1e-12, "preamplify: amplified block would exceed norm 1");
  BlockEncoding r = dilate(b);
  r.alpha = be.alpha / factor;
  r.eps = be.eps;
  const double f = std::ceil(factor - 1e-12);
  r.queries = f >= 1.8e19 ? UINT64_MAX : sat_mul(std::uint64_t(f), be.queries);
  r.provenance = be.provenance;
  r.provenance.push_back("preamplify(" + std::to_string(factor) + ")");
  return r;
}

/// Conjugates the unitary by (I_anc (x) V^+) ... (I_anc (x) V) on the system.
inline BlockEncoding conjugate_system(const BlockEncoding &be, const Mat &v) {
  require(std::size_t(v.rows()) == be.sys_dim, "conjugate_system: dimension mismatch");
  const Mat big = linalg::kron(linalg::identity(be.anc_dim), v);
  BlockEncoding out = be;
  out.unitary = big.adjoint() * be.unitary * big;
  return out;
}

}  // namespace blockenc
}  // namespace qsvt_forge

#endif
