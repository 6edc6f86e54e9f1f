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

#ifndef QSVT_FORGE_POWER_EIG_HPP
#define QSVT_FORGE_POWER_EIG_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "qsvt_forge/block_encoding.hpp"
#include "qsvt_forge/estimation.hpp"

namespace qsvt_forge::power {

/// Readout witnesses. Their diagonals are (1/2, 1/2) and (1/2, -1/2), which
/// gives the readout matrix [[c^2, 1], [c^2, -1]] / 2: squared Frobenius norm
/// (1 + c^4)/2 and condition number 1/c^2.
inline Mat default_M1() { return linalg::ry(2 * std::numbers::pi / 3); }
inline Mat default_M2() { return linalg::pauli_z() * linalg::ry(2 * std::numbers::pi / 3); }

struct PowerConfig {
  SparseHermitianMatrix matrix;
  Vec x0;
  /// Witness state; empty means "draw from the seeded product-state family".
  Vec phi;
  std::size_t k = 1;
  double beta = 0.01;
  Mat M1 = default_M1();
  Mat M2 = default_M2();
  /// Accuracy of each entry of the readout system.
  double eps = 1e-3;
  double delta = 0.05;
  EstimatorMode mode;
  /// Accuracy of the exponential approximant, independent of eps.
  double poly_eps = 1e-6;
  std::uint64_t phi_seed = 0;
  /// Build the k-fold product unitary explicitly instead of propagating the
  /// reduced state channel. Only feasible for small n and k.
  bool dense_product = false;
};

struct PowerRunRecord {
  std::size_t k = 0;
  double p_k = 0;
  cplx overlap = 0;
  /// Physical flagged amplitude after the transform, and its estimate.
  double c = 0;
  double c_est = 0;
  Eigen::Matrix2d system = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  double kappa = 0;
  double frob_sq = 0;
  /// Ideal values Tr(A x_k x_k^+) and the garbage trace.
  double lambda = 0;
  double gamma = 0;
  /// Solved values.
  double lambda_est = 0;
  double gamma_est = 0;
  double lambda_max_est = 0;
  /// C kappa eps for the measured system.
  double error_bound = 0;
  std::size_t poly_degree = 0;
  std::uint64_t phi_seed = 0;
  QueryLedger ledger;
};

/// Dense power iteration: (lambda_k, |<E_1, x_k>|).
struct ClassicalPower {
  double lambda_k = 0;
  double cos_theta_k = 0;
};

inline ClassicalPower classical_power_reference(const Mat &a, const Vec &x0, std::size_t k) {
  require(a.rows() == a.cols() && a.rows() == x0.size(), "classical_power_reference: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()));
  Eigen::Index top = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(top))) top = i;
  const Vec e1 = es.eigenvectors().col(top);
  Vec x = x0 / x0.norm();
  if (std::abs(e1.dot(x)) < 1e-14) throw DegeneracyError("classical_power_reference: x0 has zero overlap with E_1");
  for (std::size_t i = 0; i < k; ++i) {
    x = a * x;
    const double n = x.norm();
    if (n == 0) throw DegeneracyError("classical_power_reference: iterate vanished");
    x /= n;
  }
  return {x.dot(a * x).real(), std::abs(e1.dot(x))};
}

/// k = ceil((lambda2 / (2 Delta)) ln(2 / (delta cos^2 theta0))), at least 1.
inline std::size_t iteration_count(double gap, double delta, double cos2_theta0, double lambda2) {
  require(gap > 0, "iteration_count: Delta must be positive");
  require(delta > 0, "iteration_count: delta must be positive");
  require(cos2_theta0 > 0 && cos2_theta0 <= 1, "iteration_count: cos^2 theta0 must lie in (0, 1]");
  const double k = std::abs(lambda2) / (2 * gap) * std::log(2.0 / (delta * cos2_theta0));
  return std::max<std::size_t>(1, std::size_t(std::ceil(k - 1e-12)));
}

/// Largest k for which r^{2k} stays above 1e-280, r the spectral radius of
/// A/s. Beyond it p_k underflows in double precision and the simulated
/// flagged branch is lost, so iteration counts are capped here.
inline std::size_t representable_k(double radius) {
  require(radius > 0, "representable_k: spectral radius must be positive");
  if (radius >= 1) return std::numeric_limits<std::size_t>::max();
  return std::max<std::size_t>(1, std::size_t(std::floor(std::log(1e-280) / (2.0 * std::log(radius)))));
}

/// Member of the witness family: a product of single-qubit R_Y rotations on
/// ceil(log2 n) qubits, truncated to n amplitudes.
inline Vec witness_state(std::size_t n, std::uint64_t seed) {
  const std::size_t q = std::max<std::size_t>(1, linalg::ceil_log2(n));
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 17);
  std::uniform_real_distribution<double> u(0.15 * std::numbers::pi, 0.85 * std::numbers::pi);
  Vec v = Vec::Ones(1);
  for (std::size_t i = 0; i < q; ++i) {
    const double th = u(rng);
    Vec qb(2);
    qb << std::cos(th / 2), std::sin(th / 2);
    v = linalg::kron(v, qb);
  }
  Vec out = v.head(Eigen::Index(n));
  return out / out.norm();
}

struct RhoK {
  Mat rho_k;
  Purification purification;
  double p_k = 0;
  Vec x_k;
  cplx overlap = 0;
  double c = 0;
  double c_est = 0;
  std::size_t poly_degree = 0;
  std::uint64_t prep_queries = 0;
  QueryLedger ledger;
};

/// Accuracy for the amplitude estimate such that |c~^2 - c^2| * m <= eps.
inline double amplitude_accuracy(double eps, double m) {
  const double mm = std::max(m, 1e-300);
  return std::sqrt(1.0 + eps / mm) - 1.0;
}

namespace detail {

inline std::vector<Mat> kraus_of(const BlockEncoding &be) {
  std::vector<Mat> ks;
  const Eigen::Index n = Eigen::Index(be.sys_dim);
  for (std::size_t j = 0; j < be.anc_dim; ++j) ks.push_back(be.unitary.block(Eigen::Index(j) * n, 0, n, n));
  return ks;
}

}  // namespace detail

/// Power-method pipeline on an arbitrary encoding `be` of a Hermitian matrix
/// (block = M / alpha). `amp_eps` is the accuracy of the amplitude estimate.
inline RhoK build_rho_k_on(const BlockEncoding &be, const Vec &x0, const Vec &phi, std::size_t k, double beta,
                           double poly_eps, double amp_eps, const EstimatorMode &mode, bool dense_product = false) {
  const std::size_t n = be.sys_dim;
  const Eigen::Index ni = Eigen::Index(n);
  require(std::size_t(x0.size()) == n && std::size_t(phi.size()) == n, "build_rho_k: state dimension mismatch");
  require(k >= 1, "build_rho_k: k must be at least 1");
  require(beta > 0, "build_rho_k: beta must be positive");
  RhoK r;
  const Vec x0n = x0 / x0.norm();
  const Vec phin = phi / phi.norm();

  // U_{A_k}|0>|x0> = |0>(A/s)^k|x0> + garbage; flag the branches and trace
  // out the ancillas. The reduced state is propagated through the channel
  // of the ancilla-traced encoding, which equals the k-fold product exactly.
  Vec v;
  Mat total;
  if (dense_product) {
    BlockEncoding bek = be;
    for (std::size_t i = 1; i < k; ++i) bek = blockenc::product(bek, be);
    const Vec out = blockenc::apply_full(bek, x0n);
    v = out.head(ni);
    total = Mat::Zero(ni, ni);
    for (std::size_t j = 0; j < bek.anc_dim; ++j) {
      const Vec g = out.segment(Eigen::Index(j) * ni, ni);
      total += g * g.adjoint();
    }
  } else {
    const auto ks = detail::kraus_of(be);
    v = x0n;
    total = x0n * x0n.adjoint();
    for (std::size_t i = 0; i < k; ++i) {
      v = ks[0] * v;
      Mat next = Mat::Zero(ni, ni);
      for (const auto &kk : ks) next += kk * total * kk.adjoint();
      total = next;
    }
  }
  r.p_k = v.squaredNorm();
  if (!(r.p_k > 0)) throw DegeneracyError("build_rho_k: (A/s)^k x0 vanished");
  r.x_k = v / std::sqrt(r.p_k);

  Mat rho1 = Mat::Zero(2 * ni, 2 * ni);
  rho1.topLeftCorner(ni, ni) = v * v.adjoint();
  rho1.bottomRightCorner(ni, ni) = total - v * v.adjoint();

  // Its encoding, with the flag read as one more ancilla, encodes p_k|x_k><x_k|.
  const std::uint64_t chain_queries = std::uint64_t(k) * be.queries;
  BlockEncoding be_rho = blockenc::purified_density_encode(blockenc::purify(rho1), chain_queries);
  be_rho.anc_dim *= 2;
  be_rho.sys_dim = n;

  BlockEncoding be_phi = blockenc::purified_density_encode(blockenc::purify(phin * phin.adjoint()), 0);
  const BlockEncoding be_prod = blockenc::product(be_rho, be_phi);

  r.overlap = r.x_k.dot(phin);
  if (std::abs(r.overlap) < 1e-6) throw DegeneracyError("build_rho_k: <x_k, phi> vanishes; resample phi");

  const ChebyshevPolynomial poly = exp_poly(beta, poly_eps).for_qsvt();
  r.poly_degree = poly.degree();
  BlockEncoding be_p = blockenc::poly_transform(be_prod, poly);
  // Undo the 1/2 headroom of the transform, capped so the block stays a
  // contraction (the interpolant may overshoot 1 by its sup error).
  const double top = std::max(1.0, poly.qsvt_scale * poly.grid_sup(10000, 0.0, 1.0));
  be_p = blockenc::preamplify(be_p, poly.qsvt_scale / top);

  const Vec out = blockenc::apply_full(be_p, phin);
  r.c = out.head(ni).norm();
  r.prep_queries = be_p.queries;
  r.c_est = estimation::amplitude_estimate(out, n, amp_eps, mode, r.ledger, be_p.queries);

  // Flag the all-zero branch again and trace out the ancillas.
  r.rho_k = Mat::Zero(2 * ni, 2 * ni);
  r.rho_k.topLeftCorner(ni, ni) = out.head(ni) * out.head(ni).adjoint();
  for (std::size_t j = 1; j < be_p.anc_dim; ++j) {
    const Vec g = out.segment(Eigen::Index(j) * ni, ni);
    r.rho_k.bottomRightCorner(ni, ni) += g * g.adjoint();
  }
  r.purification = blockenc::purify(r.rho_k);
  return r;
}

struct Readout {
  Eigen::Matrix2d system;
  Eigen::Vector2d rhs;
  double lambda = 0, gamma = 0, kappa = 0;
};

inline double condition_number(const Eigen::Matrix2d &m) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
  const auto &s = svd.singularValues();
  return s(1) > 0 ? s(0) / s(1) : INFINITY;
}

/// Forms a_i1 = c~^2 (M_i)_00, a_i2 = (M_i)_11, b_i = alpha Tr((M_i (x) A/alpha) rho_k)
/// and solves for (lambda, gamma).
inline Readout solve_readout_system(const RhoK &rk, double c_est, const BlockEncoding &be, const Mat &M1, const Mat &M2,
                                    double eps, const EstimatorMode &mode, QueryLedger &ledger) {
  require(M1.rows() == 2 && M1.cols() == 2 && M2.rows() == 2 && M2.cols() == 2, "readout: witnesses must be 2x2");
  require(linalg::unitarity_defect(M1) <= 1e-10 && linalg::unitarity_defect(M2) <= 1e-10,
          "readout: witnesses must be unitary");
  Readout r;
  const Mat *ms[2] = {&M1, &M2};
  for (int i = 0; i < 2; ++i) {
    const Mat &m = *ms[i];
    r.system(i, 0) = c_est * c_est * m(0, 0).real();
    r.system(i, 1) = m(1, 1).real();
    const BlockEncoding be_m = blockenc::tensor({blockenc::from_unitary(m, 1, 2, 1.0, "witness"), be});
    r.rhs(i) = be.alpha * estimation::trace_estimate(be_m, rk.purification, eps, mode, ledger, rk.prep_queries);
  }
  const double det = r.system.determinant();
  if (std::abs(det) < 1e-12) throw DegeneracyError("readout: system matrix is singular; choose other witnesses");
  const Eigen::Vector2d x = r.system.partialPivLu().solve(r.rhs);
  r.lambda = x(0);
  r.gamma = x(1);
  r.kappa = condition_number(r.system);
  return r;
}

/// Right-hand side of the perturbed-system bound on ||x~ - x||/||x||.
inline double stability_bound(const Eigen::Matrix2d &a_tilde, const Eigen::Matrix2d &a, const Eigen::Vector2d &b_tilde,
                              const Eigen::Vector2d &b) {
  const double da = (a_tilde - a).operatorNorm();
  const double inv = a_tilde.inverse().operatorNorm();
  require(da <= 1.0 / inv + 1e-15, "stability_bound: perturbation exceeds 1/||A~^-1||");
  const double na = a.operatorNorm();
  const double kappa = condition_number(a);
  const double denom = 1.0 - kappa * da / na;
  require(denom > 0, "stability_bound: kappa ||dA|| / ||A|| >= 1");
  const double db = (b_tilde - b).norm();
  return kappa / denom * (db / b.norm() + da / na);
}

/// C = 2 sqrt2 (s ||A~^-1|| + 2): the constant of |lambda~ - lambda| <= C kappa eps.
inline double stability_constant(const Eigen::Matrix2d &a_tilde, double s) {
  return 2 * std::sqrt(2.0) * (s * a_tilde.inverse().operatorNorm() + 2);
}

namespace detail {

inline double max_abs_diag00(const Mat &a, const Mat &b) { return std::max(std::abs(a(0, 0)), std::abs(b(0, 0))); }

/// Replaces M2 by Z R_Y(theta) over a sweep of angles until kappa <= 10.
inline Mat resample_M2(double c2, const Mat &M1) {
  for (int step = 1; step < 64; ++step) {
    const double th = std::numbers::pi * step / 64.0;
    const Mat m2 = linalg::pauli_z() * linalg::ry(th);
    Eigen::Matrix2d s;
    s << c2 * M1(0, 0).real(), M1(1, 1).real(), c2 * m2(0, 0).real(), m2(1, 1).real();
    if (condition_number(s) <= 10) return m2;
  }
  throw DegeneracyError("readout: no witness angle brings kappa below 10");
}

}  // namespace detail

/// Full pipeline on an encoding: build rho_k, read out, solve.
inline PowerRunRecord run_power_on(const BlockEncoding &be, const Vec &x0, const Vec &phi_in, std::size_t k,
                                   double beta, double poly_eps, double eps, Mat M1, Mat M2, const EstimatorMode &mode,
                                   std::uint64_t phi_seed = 0, bool dense_product = false) {
  require(eps > 0, "run_power_method: eps must be positive");
  const std::size_t n = be.sys_dim;
  PowerRunRecord rec;
  rec.k = k;
  RhoK rk;
  const double amp_eps = amplitude_accuracy(eps, detail::max_abs_diag00(M1, M2));
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Vec phi = phi_in.size() > 0 ? phi_in : witness_state(n, phi_seed + attempt);
    try {
      rk = build_rho_k_on(be, x0, phi, k, beta, poly_eps, amp_eps, mode, dense_product);
      rec.phi_seed = phi_seed + attempt;
      break;
    } catch (const DegeneracyError &) {
      if (phi_in.size() > 0 || attempt >= 32) throw;
    }
  }
  rec.p_k = rk.p_k;
  rec.overlap = rk.overlap;
  rec.c = rk.c;
  rec.c_est = rk.c_est;
  rec.poly_degree = rk.poly_degree;
  rec.ledger = rk.ledger;

  // Runtime guard on the witnesses.
  {
    Eigen::Matrix2d s;
    const double c2 = rk.c * rk.c;
    s << c2 * M1(0, 0).real(), M1(1, 1).real(), c2 * M2(0, 0).real(), M2(1, 1).real();
    if (condition_number(s) > 10) M2 = detail::resample_M2(c2, M1);
  }

  const Mat a = blockenc::encoded_block(be);
  const Eigen::Index ni = Eigen::Index(n);
  rec.lambda = rk.x_k.dot(a * rk.x_k).real();
  rec.gamma = (a * rk.rho_k.bottomRightCorner(ni, ni)).trace().real();

  const Readout ro = solve_readout_system(rk, rk.c_est, be, M1, M2, eps, mode, rec.ledger);
  rec.system = ro.system;
  rec.rhs = ro.rhs;
  rec.kappa = ro.kappa;
  rec.frob_sq = ro.system.squaredNorm();
  rec.lambda_est = ro.lambda;
  rec.gamma_est = ro.gamma;
  rec.lambda_max_est = ro.lambda;
  rec.error_bound = stability_constant(ro.system, be.alpha) * ro.kappa * eps;
  return rec;
}

inline Vec default_x0(std::size_t n) { return Vec::Ones(Eigen::Index(n)) / std::sqrt(double(n)); }

/// build_rho_k for a configuration (sparse-oracle encoding of the matrix).
inline RhoK build_rho_k(const PowerConfig &cfg) {
  const BlockEncoding be = blockenc::sparse_oracle_encode(cfg.matrix);
  const std::size_t n = cfg.matrix.dim();
  const Vec x0 = cfg.x0.size() ? cfg.x0 : default_x0(n);
  const Vec phi = cfg.phi.size() ? cfg.phi : witness_state(n, cfg.phi_seed);
  return build_rho_k_on(be, x0, phi, cfg.k, cfg.beta, cfg.poly_eps,
                        amplitude_accuracy(cfg.eps, detail::max_abs_diag00(cfg.M1, cfg.M2)), cfg.mode,
                        cfg.dense_product);
}

inline PowerRunRecord run_power_method(const PowerConfig &cfg) {
  const BlockEncoding be = blockenc::sparse_oracle_encode(cfg.matrix);
  const Vec x0 = cfg.x0.size() ? cfg.x0 : default_x0(cfg.matrix.dim());
  return run_power_on(be, x0, cfg.phi, cfg.k, cfg.beta, cfg.poly_eps, cfg.eps, cfg.M1, cfg.M2, cfg.mode,
                      cfg.phi_seed, cfg.dense_product);
}

struct ConditioningRow {
  std::size_t k = 0;
  double p_k = 0;
  double kappa = 0;
  double det = 0;
};

/// kappa and det of the readout matrix across k, with or without the
/// exponential amplification (without it, a_i1 = p_k (M_i)_00).
inline std::vector<ConditioningRow> conditioning_experiment(const PowerConfig &cfg, bool with_exp,
                                                            std::size_t k_min, std::size_t k_max) {
  const BlockEncoding be = blockenc::sparse_oracle_encode(cfg.matrix);
  const std::size_t n = cfg.matrix.dim();
  const Vec x0 = cfg.x0.size() ? cfg.x0 : default_x0(n);
  const Vec phi = cfg.phi.size() ? cfg.phi : witness_state(n, cfg.phi_seed);
  const auto ks = detail::kraus_of(be);
  std::vector<ConditioningRow> rows;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    ConditioningRow row;
    row.k = k;
    double coeff;
    if (k == 0 || !with_exp) {
      Vec v = x0 / x0.norm();
      for (std::size_t i = 0; i < k; ++i) v = ks[0] * v;
      row.p_k = v.squaredNorm();
      coeff = row.p_k;
    } else {
      const RhoK rk = build_rho_k_on(be, x0, phi, k, cfg.beta, cfg.poly_eps, 1e-3, EstimatorMode::exact());
      row.p_k = rk.p_k;
      coeff = rk.c * rk.c;
    }
    Eigen::Matrix2d s;
    s << coeff * cfg.M1(0, 0).real(), cfg.M1(1, 1).real(), coeff * cfg.M2(0, 0).real(), cfg.M2(1, 1).real();
    row.det = s.determinant();
    row.kappa = condition_number(s);
    rows.push_back(row);
  }
  return rows;
}

/// Encodes ((lambda_n + shift) I - A)/s from an encoding of A/s.
inline BlockEncoding spectrum_shift_encode(const BlockEncoding &be_as, double lambda_n, double shift, double s) {
  require(lambda_n + shift <= 1.0 + 1e-12, "spectrum_shift_encode: lambda_n + shift must not exceed 1");
  require(lambda_n + shift > 0, "spectrum_shift_encode: lambda_n + shift must be positive");
  require(s >= 1, "spectrum_shift_encode: s must be at least 1");
  const BlockEncoding id = blockenc::diag_encode(std::min(1.0, (lambda_n + shift) / s), be_as.sys_dim);
  const BlockEncoding a = blockenc::relabel_alpha(be_as, 1.0);
  BlockEncoding half = blockenc::linear_combination({id, a}, {+1, -1});
  if (linalg::op_norm(half.block()) > 0.5 + 1e-12)
    throw ValidationError("spectrum_shift_encode: shifted matrix exceeds norm s");
  BlockEncoding out = blockenc::preamplify(half, 2.0);
  out = blockenc::relabel_alpha(out, s);
  out.provenance.push_back("spectrum_shift");
  return out;
}

struct ExtremesConfig {
  PowerConfig base;
  double shift = 0.05;
  /// Iterations for the shifted run; 0 means "same as base.k".
  std::size_t k_shift = 0;
};

struct Extremes {
  double lambda_max = 0;
  double lambda_min = 0;
  PowerRunRecord max_run;
  PowerRunRecord shifted_run;
};

inline Extremes extract_extremes(const ExtremesConfig &cfg) {
  Extremes out;
  out.max_run = run_power_method(cfg.base);
  out.lambda_max = out.max_run.lambda_max_est;
  const BlockEncoding be = blockenc::sparse_oracle_encode(cfg.base.matrix);
  const double s = double(cfg.base.matrix.sparsity());
  const BlockEncoding shifted = spectrum_shift_encode(be, out.lambda_max, cfg.shift, s);
  const Vec x0 = cfg.base.x0.size() ? cfg.base.x0 : default_x0(cfg.base.matrix.dim());
  out.shifted_run = run_power_on(shifted, x0, cfg.base.phi, cfg.k_shift ? cfg.k_shift : cfg.base.k, cfg.base.beta,
                                 cfg.base.poly_eps, cfg.base.eps, cfg.base.M1, cfg.base.M2, cfg.base.mode,
                                 cfg.base.phi_seed + 1000);
  out.lambda_min = out.lambda_max + cfg.shift - out.shifted_run.lambda_max_est;
  return out;
}

/// Experimental: repeats the shift-and-maximize step `levels` times on the
/// previously shifted operator. Every level after the first returns (up to
/// power-method error) the shift itself, because the previous maximum sits at
/// the bottom of the new spectrum at distance `shift`; the values are
/// returned as computed so the discrepancy stays visible.
inline std::vector<double> extract_recursive(const ExtremesConfig &cfg, std::size_t levels) {
  std::vector<double> values;
  const BlockEncoding be0 = blockenc::sparse_oracle_encode(cfg.base.matrix);
  const double s = double(cfg.base.matrix.sparsity());
  const Vec x0 = cfg.base.x0.size() ? cfg.base.x0 : default_x0(cfg.base.matrix.dim());
  BlockEncoding cur = be0;
  double top = run_power_on(cur, x0, cfg.base.phi, cfg.base.k, cfg.base.beta, cfg.base.poly_eps, cfg.base.eps,
                            cfg.base.M1, cfg.base.M2, cfg.base.mode, cfg.base.phi_seed)
                   .lambda_max_est;
  values.push_back(top);
  for (std::size_t l = 0; l < levels; ++l) {
    cur = spectrum_shift_encode(blockenc::relabel_alpha(cur, s), top / 1.0, cfg.shift, s);
    const double mu = run_power_on(cur, x0, cfg.base.phi, cfg.k_shift ? cfg.k_shift : cfg.base.k, cfg.base.beta,
                                   cfg.base.poly_eps, cfg.base.eps, cfg.base.M1, cfg.base.M2, cfg.base.mode,
                                   cfg.base.phi_seed + 1000 * (l + 1))
                          .lambda_max_est;
    values.push_back(top + cfg.shift - mu);
    top = mu;
  }
  return values;
}

}  // namespace qsvt_forge::power

#endif
