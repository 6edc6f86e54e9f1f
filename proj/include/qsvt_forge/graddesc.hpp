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

#ifndef QSVT_FORGE_GRADDESC_HPP
#define QSVT_FORGE_GRADDESC_HPP

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsvt_forge/block_encoding.hpp"
#include "qsvt_forge/density.hpp"
#include "qsvt_forge/estimation.hpp"

namespace qsvt_forge::grad {

/// f(x) = 1/2 <x|^{(x)p} A |x>^{(x)p}, with A either a sum of K Kronecker
/// products of p real n x n factors or given directly as an n^p x n^p matrix.
struct TensorPolynomial {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::vector<RMat>> terms;
  RMat direct;

  bool has_factors() const { return !terms.empty(); }

  static TensorPolynomial from_factors(std::vector<std::vector<RMat>> terms) {
    require(!terms.empty(), "TensorPolynomial: no terms");
    TensorPolynomial t;
    t.p = terms[0].size();
    require(t.p >= 1, "TensorPolynomial: p must be at least 1");
    t.n = std::size_t(terms[0][0].rows());
    for (const auto &term : terms) {
      require(term.size() == t.p, "TensorPolynomial: every term needs p factors");
      for (const auto &f : term) {
        require(std::size_t(f.rows()) == t.n && std::size_t(f.cols()) == t.n, "TensorPolynomial: factor shape");
        require((f - f.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "TensorPolynomial: factors must be symmetric");
      }
    }
    t.terms = std::move(terms);
    t.check_norm();
    return t;
  }

  static TensorPolynomial from_matrix(std::size_t n, std::size_t p, RMat a) {
    require(n >= 1 && p >= 1, "TensorPolynomial: n and p must be positive");
    const std::size_t dim = linalg::product(std::vector<std::size_t>(p, n));
    require(std::size_t(a.rows()) == dim && std::size_t(a.cols()) == dim, "TensorPolynomial: A must be n^p x n^p");
    require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "TensorPolynomial: A must be symmetric");
    TensorPolynomial t;
    t.n = n;
    t.p = p;
    t.direct = std::move(a);
    t.check_norm();
    return t;
  }

  RMat dense() const {
    if (!has_factors()) return direct;
    const Eigen::Index dim = Eigen::Index(linalg::product(std::vector<std::size_t>(p, n)));
    RMat a = RMat::Zero(dim, dim);
    for (const auto &term : terms) {
      RMat k = term[0];
      for (std::size_t i = 1; i < term.size(); ++i) k = Eigen::kroneckerProduct(k, term[i]).eval();
      a += k;
    }
    return a;
  }

  /// Maximum nonzeros in a row of A.
  std::size_t sparsity() const { return SparseHermitianMatrix::row_sparsity(Mat(dense().cast<cplx>())); }

  std::vector<std::size_t> dims() const { return std::vector<std::size_t>(p, n); }

 private:
  void check_norm() const {
    const double nrm = linalg::op_norm(Mat(dense().cast<cplx>()));
    if (nrm >= 1.0) throw ValidationError("TensorPolynomial: ||A|| must be below 1 (got " + std::to_string(nrm) + ")");
  }
};

namespace detail {

inline RVec kron_power(const RVec &x, std::size_t p) {
  RVec v = x;
  for (std::size_t i = 1; i < p; ++i) v = Eigen::kroneckerProduct(v, x).eval();
  return v;
}

inline RMat kron_power(const RMat &m, std::size_t p) {
  if (p == 0) return RMat::Ones(1, 1);
  RMat v = m;
  for (std::size_t i = 1; i < p; ++i) v = Eigen::kroneckerProduct(v, m).eval();
  return v;
}

inline Mat to_c(const RMat &m) { return m.cast<cplx>(); }

}  // namespace detail

inline double eval_f(const TensorPolynomial &prob, const RVec &x) {
  require(std::size_t(x.size()) == prob.n, "eval_f: dimension mismatch");
  const RVec xp = detail::kron_power(x, prob.p);
  return 0.5 * xp.dot(prob.dense() * xp);
}

struct MdBuild {
  RMat md;
  /// Block M_D / (p s), alpha s.
  BlockEncoding be;
  std::size_t s = 0;
};

/// M_D = sum_j Q_j A Q_j where Q_j swaps register j with the last register.
inline MdBuild build_MD(const TensorPolynomial &prob) {
  const RMat a = prob.dense();
  const auto dims = prob.dims();
  MdBuild out;
  out.s = prob.sparsity();
  out.md = RMat::Zero(a.rows(), a.cols());
  std::vector<BlockEncoding> parts;
  for (std::size_t j = 0; j < prob.p; ++j) {
    RMat conj = a;
    if (j + 1 != prob.p) {
      const RMat q = linalg::swap_operator(dims, j, prob.p - 1).real();
      conj = q * a * q;
    }
    out.md += conj;
    parts.push_back(blockenc::sparse_oracle_encode(SparseHermitianMatrix(detail::to_c(conj), out.s)));
  }
  out.be = blockenc::linear_combination(parts, std::vector<int>(prob.p, +1));
  out.be.provenance.push_back("M_D");
  return out;
}

/// D(x) from the factor form: sum_a sum_m (prod_{l != m} <x|A_l|x>) A_m.
inline RMat D_direct(const TensorPolynomial &prob, const RVec &x) {
  require(prob.has_factors(), "D_direct: needs the factor form");
  require(std::size_t(x.size()) == prob.n, "D_direct: dimension mismatch");
  RMat d = RMat::Zero(Eigen::Index(prob.n), Eigen::Index(prob.n));
  for (const auto &term : prob.terms) {
    std::vector<double> ev(prob.p);
    for (std::size_t m = 0; m < prob.p; ++m) ev[m] = x.dot(term[m] * x);
    for (std::size_t m = 0; m < prob.p; ++m) {
      double c = 1;
      for (std::size_t l = 0; l < prob.p; ++l)
        if (l != m) c *= ev[l];
      d += c * term[m];
    }
  }
  return d;
}

/// D(x) = tr_{1..p-1}[((x x^T)^{(x)p-1} (x) I) M_D].
inline RMat D_partial_trace(const TensorPolynomial &prob, const RVec &x, const RMat &md) {
  require(std::size_t(x.size()) == prob.n, "D_partial_trace: dimension mismatch");
  const RMat rho = x * x.transpose();
  const RMat left =
      Eigen::kroneckerProduct(detail::kron_power(rho, prob.p - 1), RMat::Identity(Eigen::Index(prob.n), Eigen::Index(prob.n)))
          .eval();
  std::vector<std::size_t> keep{prob.p - 1};
  return linalg::partial_trace(detail::to_c(RMat(left * md)), prob.dims(), keep).real();
}

inline RMat gradient_operator_D(const TensorPolynomial &prob, const RVec &x) {
  if (prob.has_factors()) return D_direct(prob, x);
  return D_partial_trace(prob, x, build_MD(prob).md);
}

struct SandwichCheck {
  RMat two_sided_lhs, two_sided_rhs;
  RMat one_sided_lhs, one_sided_rhs;
};

/// Both sandwich identities for rho = x x^T; the caller asserts the sides agree.
inline SandwichCheck md_sandwich_identity_check(const TensorPolynomial &prob, const RMat &rho) {
  require(std::size_t(rho.rows()) == prob.n && rho.cols() == rho.rows(), "sandwich: rho has the wrong shape");
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (rho + rho.transpose()));
  const Eigen::Index n = rho.rows();
  const double top = es.eigenvalues()(n - 1);
  require(top > 0, "sandwich: rho must be nonzero");
  if (n > 1 && std::abs(es.eigenvalues()(n - 2)) > 1e-12 * top) throw ValidationError("sandwich: rho is not rank-1");
  const RVec x = es.eigenvectors().col(n - 1) * std::sqrt(top);
  const MdBuild mb = build_MD(prob);
  const double ps = double(prob.p * mb.s);
  const RMat d = gradient_operator_D(prob, x);
  const RMat r = x * x.transpose();
  const RMat id = RMat::Identity(n, n);
  const RMat rp1 = detail::kron_power(r, prob.p - 1);
  const RMat left = Eigen::kroneckerProduct(rp1, id).eval();
  SandwichCheck c;
  c.two_sided_lhs = left * (mb.md / ps) * left;
  c.two_sided_rhs = Eigen::kroneckerProduct(rp1, RMat(d / ps)).eval();
  c.one_sided_lhs = left * mb.md * detail::kron_power(r, prob.p);
  c.one_sided_rhs = Eigen::kroneckerProduct(rp1, RMat(d * r)).eval();
  return c;
}

struct Extraction {
  /// Block beta^{p-1} D / (p s), before amplification.
  BlockEncoding raw;
  /// Block D / (p s), alpha p s.
  BlockEncoding amplified;
  double beta = 0;
  double beta_measured = 0;
};

/// Conjugates the sandwich encoding by I (x) U^{+(x)p-1} (x) I and reads the
/// first p-1 system registers as extra ancillas. The overlap beta =
/// <a|x x^T|a>, |a> = U|0>, is measured with a Hadamard test and removed by
/// preamplification.
inline Extraction extract_D_encoding(const BlockEncoding &be_sandwich, const Mat &u, const RVec &x, std::size_t p,
                                     std::size_t s, const EstimatorMode &mode = EstimatorMode::exact(),
                                     QueryLedger *ledger = nullptr) {
  const std::size_t n = std::size_t(x.size());
  require(std::size_t(u.rows()) == n && u.cols() == u.rows(), "extract_D: U has the wrong shape");
  require(linalg::unitarity_defect(u) <= 1e-10, "extract_D: U is not unitary");
  const std::size_t rest = linalg::product(std::vector<std::size_t>(p - 1, n));
  require(be_sandwich.sys_dim == rest * n, "extract_D: sandwich dimension mismatch");
  Mat up = Mat::Identity(1, 1);
  for (std::size_t i = 0; i + 1 < p; ++i) up = linalg::kron(up, u);
  const Mat big = linalg::kron(linalg::kron(linalg::identity(be_sandwich.anc_dim), up), linalg::identity(n));
  Extraction ex;
  ex.raw = be_sandwich;
  ex.raw.unitary = big.adjoint() * be_sandwich.unitary * big;
  ex.raw.anc_dim = be_sandwich.anc_dim * rest;
  ex.raw.sys_dim = n;
  ex.raw.provenance.push_back("extract_D");

  const Vec a = u.col(0);
  const double nx = x.norm();
  ex.beta = std::norm(a.dot(x.cast<cplx>()));
  QueryLedger scratch;
  const double ov = nx > 0 ? estimation::hadamard_overlap(a, Vec(x.cast<cplx>() / nx), 1e-6, mode, ledger ? *ledger : scratch)
                           : 0.0;
  ex.beta_measured = ov * ov * nx * nx;
  if (ex.beta_measured < 1e-4)
    throw DegeneracyError("extract_D: overlap beta = " + std::to_string(ex.beta_measured) +
                          " is below 1e-4; resample U or reduce eta");
  ex.amplified = blockenc::preamplify(ex.raw, std::pow(ex.beta_measured, -double(p - 1)));
  ex.amplified.alpha = double(p * s);
  return ex;
}

struct EtaBound {
  double literal = 0;
  bool degenerate = false;
  /// The operational bound 1/(2p).
  double operational = 0;
};

/// The overlap-guarantee bound (1/p)(1 - 8 (1/8)^{1/t}), reported as written
/// (clamped at 0, flagged when non-positive) next to the bound 1/(2p).
inline EtaBound eta_bound_for_beta(std::size_t p, std::size_t t) {
  require(p >= 1 && t >= 1, "eta_bound_for_beta: p and t must be positive");
  const double raw = (1.0 / double(p)) * (1.0 - 8.0 * std::pow(1.0 / 8.0, 1.0 / double(t)));
  EtaBound b;
  b.degenerate = raw <= 0;
  b.literal = std::max(0.0, raw);
  b.operational = 1.0 / (2.0 * double(p));
  return b;
}

struct InitState {
  RVec x0;
  std::size_t t_prime = 0;
  double norm_sq = 0;
};

/// Uniform superposition over 4^{T'} basis states, T' = T + ceil(log2(n)/2),
/// truncated to its first n amplitudes: ||x0||^2 = n / 4^{T'} <= 1/4^T.
/// The seed picks the amplitude signs (seed 0: all positive).
inline InitState bounded_init_state(std::size_t T, std::size_t n, std::uint64_t seed = 0) {
  require(T >= 1 && n >= 1, "bounded_init_state: T and n must be positive");
  InitState s;
  s.t_prime = T + std::size_t(std::ceil(std::log2(double(n)) / 2.0 - 1e-12));
  const double amp = std::pow(0.5, double(s.t_prime));  // 1/sqrt(4^{T'})
  s.x0 = RVec::Constant(Eigen::Index(n), amp);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (Eigen::Index i = 0; i < s.x0.size(); ++i)
      if (rng() & 1) s.x0(i) = -amp;
  }
  s.norm_sq = s.x0.squaredNorm();
  return s;
}

inline void check_eta(double eta, std::size_t p) {
  if (!(eta > 0 && eta < 1.0 / (2.0 * double(p))))
    throw ValidationError("eta must lie in (0, 1/(2p)) = (0, " + std::to_string(1.0 / (2.0 * double(p))) + ")");
}

/// Scale factors of one first-scheme step.
struct ScaleRecord {
  /// Factor divided out by the four-term combination.
  double lcu = 4;
  double ps = 1;
  double beta = 0;
  /// Amplification applied to the extracted gradient block, beta^{-(p-1)}.
  double extract_gain = 1;
  bool quarter_removed = false;
};

struct StepV1 {
  /// Block x_{t+1} x_{t+1}^T / 4 (alpha 4).
  BlockEncoding raw;
  /// Block x_{t+1} x_{t+1}^T (alpha 1) when the quarter was removed, else raw.
  BlockEncoding next;
  ScaleRecord scale;
  RMat D;
};

namespace detail {

inline RVec top_vector(const Mat &block) {
  const RMat h = 0.5 * (block.real() + block.real().transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  const Eigen::Index n = h.rows();
  return es.eigenvectors().col(n - 1) * std::sqrt(std::max(0.0, es.eigenvalues()(n - 1)));
}

inline BlockEncoding amp_unit(const BlockEncoding &be, double factor) {
  BlockEncoding out = factor > 1.0 ? blockenc::preamplify(be, factor) : be;
  return blockenc::relabel_alpha(out, 1.0);
}

}  // namespace detail

/// One step of the first scheme on an encoding of x_t x_t^T (alpha 1).
/// `u_prep` is the unitary whose first column is the overlap reference |a>.
inline StepV1 gd_step_v1(const BlockEncoding &be_xx, const TensorPolynomial &prob, double eta, const Mat &u_prep,
                         bool remove_quarter = true, const EstimatorMode &mode = EstimatorMode::exact(),
                         QueryLedger *ledger = nullptr) {
  check_eta(eta, prob.p);
  const std::size_t n = prob.n, p = prob.p;
  require(be_xx.sys_dim == n, "gd_step_v1: encoding dimension mismatch");
  const BlockEncoding xx = blockenc::relabel_alpha(be_xx, 1.0);
  const RVec x = detail::top_vector(xx.block());

  const MdBuild mb = build_MD(prob);
  const double ps = double(p * mb.s);
  std::vector<BlockEncoding> side;
  for (std::size_t i = 0; i + 1 < p; ++i) side.push_back(xx);
  side.push_back(blockenc::identity_encoding(n));
  const BlockEncoding left = blockenc::tensor(side);
  const BlockEncoding sandwich =
      blockenc::product(blockenc::product(left, blockenc::relabel_alpha(mb.be, 1.0)), left);
  const Extraction ex = extract_D_encoding(sandwich, u_prep, x, p, mb.s, mode, ledger);

  StepV1 st;
  st.scale.ps = ps;
  st.scale.beta = ex.beta_measured;
  st.scale.extract_gain = std::pow(ex.beta_measured, -double(p - 1));
  st.D = gradient_operator_D(prob, x);

  const BlockEncoding d_unit = blockenc::relabel_alpha(ex.amplified, 1.0);  // block D/(ps)
  const BlockEncoding eta_d = blockenc::scale_down(d_unit, 1.0 / eta);      // block eta D/(ps)
  const BlockEncoding u1 = detail::amp_unit(ps > 1 ? blockenc::scale_down(xx, ps) : xx, ps);
  const BlockEncoding u2 = detail::amp_unit(blockenc::product(eta_d, xx), ps);
  const BlockEncoding u3 = detail::amp_unit(blockenc::product(xx, eta_d), ps);
  const BlockEncoding u4 = detail::amp_unit(blockenc::product(blockenc::product(eta_d, xx), eta_d), ps * ps);
  st.raw = blockenc::relabel_alpha(blockenc::linear_combination({u1, u2, u3, u4}, {+1, -1, -1, +1}), 4.0);
  st.raw.provenance.push_back("gd_step_v1");
  if (remove_quarter) {
    st.next = blockenc::preamplify(st.raw, 4.0);
    st.scale.quarter_removed = true;
  } else {
    st.next = st.raw;
  }
  return st;
}

struct GdStep {
  std::size_t t = 0;
  /// Second scheme: the state. First scheme: dominant eigenvector of the block.
  Vec x;
  /// First scheme: the encoded matrix (x_t x_t^T after scale correction).
  Mat encoded;
  double norm_sq = 0;
  double f = 0;
  double success_prob = 1;
  double raw_prob = 1;
  double c_sq = 0;
  double c_sq_bound = 0;
  double floor = 0;
  std::uint64_t copies = 0;
  std::string status = "ok";
  ScaleRecord scale;
};

struct GdTrajectory {
  std::vector<GdStep> steps;
  BlockEncoding final_encoding;
  Vec final_state;
  QueryLedger ledger;
  /// prod_t 1/success_prob_t.
  double repetitions = 1;
  std::string status = "ok";
};

struct GdConfigV1 {
  TensorPolynomial problem;
  std::size_t T = 1;
  double eta = 0;
  std::uint64_t seed = 0;
  bool remove_quarter = true;
  /// Empty: the preparation unitary of x0.
  Mat u_prep;
  EstimatorMode mode;
};

inline GdTrajectory run_gd_v1(const GdConfigV1 &cfg) {
  const auto &prob = cfg.problem;
  check_eta(cfg.eta, prob.p);
  const InitState init = bounded_init_state(std::max<std::size_t>(cfg.T, 1), prob.n, cfg.seed);
  const Mat u = cfg.u_prep.size() ? cfg.u_prep
                                  : linalg::unitary_with_first_column(Vec(init.x0.cast<cplx>() / init.x0.norm()));
  BlockEncoding be = blockenc::dilate(detail::to_c(RMat(init.x0 * init.x0.transpose())), 0.0, "x0x0");
  be.queries = 1;
  GdTrajectory tr;
  auto record = [&](std::size_t t, const BlockEncoding &b, const ScaleRecord &sc) {
    GdStep s;
    s.t = t;
    s.encoded = blockenc::encoded_block(b);
    s.norm_sq = s.encoded.trace().real();
    const RVec v = detail::top_vector(s.encoded);
    s.x = v.cast<cplx>();
    s.f = eval_f(prob, v);
    s.scale = sc;
    tr.steps.push_back(s);
  };
  record(0, be, ScaleRecord{});
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    const StepV1 st = gd_step_v1(be, prob, cfg.eta, u, cfg.remove_quarter, cfg.mode, &tr.ledger);
    be = st.next;
    record(t, be, st.scale);
    if (!cfg.remove_quarter) {
      // The next step needs the block x x^T itself; the unamplified chain
      // stops here.
      if (t < cfg.T) tr.status = "quarter kept: stopped after one step";
      break;
    }
  }
  tr.final_encoding = be;
  tr.ledger.oracle_queries = sat_add(tr.ledger.oracle_queries, be.queries);
  tr.ledger.be_applications += 1;
  return tr;
}

struct PostSelected {
  Vec state;
  double prob = 0;
};

/// Keeps the first `flag_prefix` amplitudes (flag register in |0...0>) and
/// renormalizes.
inline PostSelected post_select(const Vec &state, std::size_t flag_prefix) {
  require(flag_prefix >= 1 && flag_prefix <= std::size_t(state.size()), "post_select: bad flag register size");
  PostSelected ps;
  const Vec head = state.head(Eigen::Index(flag_prefix));
  ps.prob = head.squaredNorm();
  if (!(ps.prob > 0)) throw DegeneracyError("post_select: flagged branch has zero probability");
  ps.state = head / std::sqrt(ps.prob);
  return ps;
}

/// Copies consumed by one second-scheme step: 2p-1 encodings of pi rho/4,
/// each needing log_unitary_charge(eps) density exponentiations of
/// ceil(1/eps) copies.
inline std::uint64_t v2_copy_requirement(std::size_t p, double eps) {
  return std::uint64_t(2 * p - 1) * blockenc::log_unitary_charge(eps) * blockenc::dme_copy_count(1.0, eps);
}

/// (I - eta M_D)/(p s) as an encoding with alpha 1.
inline BlockEncoding descent_operator_encode(const TensorPolynomial &prob, double eta) {
  check_eta(eta, prob.p);
  const MdBuild mb = build_MD(prob);
  const double ps = double(prob.p * mb.s);
  if (ps < 2) throw ValidationError("descent operator: p s must be at least 2");
  const std::size_t dim = linalg::product(prob.dims());
  const BlockEncoding id = blockenc::diag_encode(2.0 / ps, dim);
  const BlockEncoding md = blockenc::scale_down(blockenc::relabel_alpha(mb.be, 1.0), 1.0 / (2.0 * eta));
  BlockEncoding out = blockenc::linear_combination({id, md}, {+1, -1});
  out.provenance.push_back("I-etaM_D");
  return out;
}

struct StepV2 {
  Vec x_next;
  /// Amplitude of the flagged branch (post-selection probability after
  /// amplitude amplification).
  double success_prob = 0;
  /// Squared norm of the flagged branch.
  double raw_prob = 0;
  double c_sq = 0;
  double c_sq_bound = 0;
  double floor = 0;
  std::uint64_t copies_used = 0;
  QueryLedger ledger;
  std::string status = "ok";
};

inline StepV2 gd_step_v2(const Vec &x_t, const TensorPolynomial &prob, double eta, double eps, std::uint64_t copies,
                         const EstimatorMode &mode = EstimatorMode::exact(), std::uint64_t noise_seed = 0) {
  const std::size_t n = prob.n, p = prob.p;
  require(std::size_t(x_t.size()) == n, "gd_step_v2: dimension mismatch");
  require(std::abs(x_t.norm() - 1.0) <= 1e-10, "gd_step_v2: x_t must be a unit vector");
  require(eps > 0 && eps < 1, "gd_step_v2: eps must lie in (0, 1)");
  check_eta(eta, p);
  StepV2 out;
  const std::uint64_t need = v2_copy_requirement(p, eps);
  if (copies < need)
    throw ValidationError("gd_step_v2: " + std::to_string(need) + " copies required, " + std::to_string(copies) +
                          " supplied");
  out.copies_used = need;
  out.ledger.copies_consumed += need;

  const Mat rho = x_t * x_t.adjoint();
  const bool exact = mode.kind == EstimatorMode::Kind::exact;
  Mat v;
  if (exact) {
    v = blockenc::exact_exponential(rho, 1.0);
  } else {
    v = blockenc::density_exponentiation({rho, blockenc::dme_copy_count(1.0, eps)}, 1.0, eps).unitary;
  }
  const BlockEncoding be_r = exact ? blockenc::log_unitary(v, eps) : blockenc::log_unitary(v, eps, noise_seed);

  std::vector<BlockEncoding> full(p, be_r), side(p - 1, be_r);
  side.push_back(blockenc::identity_encoding(n));
  const BlockEncoding right = blockenc::tensor(full);
  const BlockEncoding left = blockenc::tensor(side);
  const BlockEncoding mid = descent_operator_encode(prob, eta);
  const BlockEncoding pt = blockenc::product(blockenc::product(left, mid), right);

  Vec xp = x_t;
  for (std::size_t i = 1; i < p; ++i) xp = linalg::kron(xp, x_t);
  const Vec full_out = blockenc::apply_full(pt, xp);
  out.ledger.be_applications += 1;
  out.ledger.oracle_queries = sat_add(out.ledger.oracle_queries, pt.queries);
  const std::size_t sysd = pt.sys_dim;
  const double amp = estimation::amplitude_estimate(full_out, sysd, eps, mode, out.ledger, pt.queries);
  const PostSelected sel = post_select(full_out, sysd);
  if (sel.prob < 1e-14) throw DegeneracyError("gd_step_v2: post-selection probability below 1e-14");
  out.raw_prob = amp * amp;
  out.success_prob = amp;

  // Last register of the post-selected state; global phase fixed by <x_t|x_next> > 0.
  std::vector<std::size_t> keep{p - 1};
  const Mat red = linalg::partial_trace(Mat(sel.state * sel.state.adjoint()), prob.dims(), keep);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (red + red.adjoint()));
  Vec nx = es.eigenvectors().col(Eigen::Index(n) - 1);
  const cplx ov = x_t.dot(nx);
  if (std::abs(ov) > 0) nx *= std::conj(ov) / std::abs(ov);
  out.x_next = nx / nx.norm();

  const MdBuild mb = build_MD(prob);
  const double ps = double(p * mb.s);
  const double scale = std::pow(std::numbers::pi / 4.0, double(4 * p - 2));
  out.c_sq = out.raw_prob * ps * ps / scale;
  const RMat d = gradient_operator_D(prob, x_t.real());
  const double dd = std::sqrt(std::max(0.0, x_t.real().dot(d * d * x_t.real())));
  out.c_sq_bound = std::pow(std::max(0.0, 1.0 - eta * dd), 2);
  out.floor = std::pow(std::numbers::pi / 4.0, double(2 * p - 1)) / (4.0 * ps);
  if ((out.x_next - x_t).norm() < 1e-12) out.status = "stationary direction";
  return out;
}

struct GdConfigV2 {
  TensorPolynomial problem;
  std::size_t T = 1;
  double eta = 0;
  /// Copies available per step; 0 means "exactly the requirement".
  std::uint64_t copies_per_step = 0;
  double eps = 1e-3;
  std::uint64_t seed = 0;
  EstimatorMode mode;
  /// Empty: a seeded random unit vector.
  Vec x0;
};

inline Vec random_unit(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
  return v / v.norm();
}

inline GdTrajectory run_gd_v2(const GdConfigV2 &cfg) {
  const auto &prob = cfg.problem;
  check_eta(cfg.eta, prob.p);
  Vec x = cfg.x0.size() ? Vec(cfg.x0 / cfg.x0.norm()) : random_unit(prob.n, cfg.seed);
  GdTrajectory tr;
  GdStep s0;
  s0.x = x;
  s0.norm_sq = 1;
  s0.f = eval_f(prob, x.real());
  tr.steps.push_back(s0);
  const std::uint64_t budget = cfg.copies_per_step ? cfg.copies_per_step : v2_copy_requirement(prob.p, cfg.eps);
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    const StepV2 st = gd_step_v2(x, prob, cfg.eta, cfg.eps, budget, cfg.mode, cfg.seed * 7919 + t);
    tr.ledger += st.ledger;
    tr.repetitions /= st.success_prob;
    GdStep s;
    s.t = t;
    s.x = st.x_next;
    s.norm_sq = st.x_next.squaredNorm();
    s.f = eval_f(prob, st.x_next.real());
    s.success_prob = st.success_prob;
    s.raw_prob = st.raw_prob;
    s.c_sq = st.c_sq;
    s.c_sq_bound = st.c_sq_bound;
    s.floor = st.floor;
    s.copies = st.copies_used;
    s.status = st.status;
    tr.steps.push_back(s);
    x = st.x_next;
    if (st.status != "ok") {
      tr.status = st.status;
      break;
    }
  }
  tr.final_state = x;
  return tr;
}

/// Sampled restart count: product over steps of geometric attempt counts.
inline double simulate_repetitions(const std::vector<double> &success, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double total = 1;
  for (double p : success) {
    require(p > 0 && p <= 1, "simulate_repetitions: probabilities must lie in (0, 1]");
    std::geometric_distribution<std::uint64_t> g(p);
    total *= double(g(rng) + 1);
  }
  return total;
}

struct CostRow {
  int p = 0;
  double p5 = 0;
  double p3c = 0;
  double ratio = 0;
  bool below = false;
};

/// Rows (p, p^5, p^3 (4/pi)^{2p-1}, ratio) for p in [pmin, pmax].
inline std::vector<CostRow> cost_model_compare(int pmin, int pmax) {
  require(pmin >= 1 && pmax >= pmin, "cost_model_compare: need 1 <= pmin <= pmax");
  std::vector<CostRow> rows;
  for (int p = pmin; p <= pmax; ++p) {
    CostRow r;
    r.p = p;
    const long double lp = p;
    r.p5 = double(lp * lp * lp * lp * lp);
    r.p3c = double(lp * lp * lp * std::pow(4.0L / std::numbers::pi_v<long double>, 2.0L * lp - 1.0L));
    r.ratio = r.p3c / r.p5;
    r.below = r.p3c < r.p5;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qsvt_forge::grad

#endif
