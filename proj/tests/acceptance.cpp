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

// Acceptance run: one PASS/FAIL line per criterion, followed by the worst
// oracle comparison behind it. Exit status is nonzero if anything fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qsvt_forge/oracles.hpp"
#include "qsvt_forge/qsvt_forge.hpp"

using namespace qsvt_forge;
namespace oc = qsvt_forge::oracle;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<oc::OracleReport> reports;

  // Records a comparison and fails the criterion when abs_err > tol.
  void check(const std::string &name, double oracle_value, double pipeline_value, double tol) {
    auto r = oc::report(name, oracle_value, pipeline_value);
    if (!(r.abs_err <= tol)) {
      pass = false;
      std::printf("    mismatch %s: oracle %.6g pipeline %.6g err %.3g > %.3g\n", name.c_str(), oracle_value,
                  pipeline_value, r.abs_err, tol);
    }
    reports.push_back(r);
  }
  void require_that(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      std::printf("    violated: %s\n", what.c_str());
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Least-squares line y = a + b x; returns {a, b, r2}.
std::array<double, 3> fit_line(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double a = (sy - b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ss_res += std::pow(y[i] - (a + b * x[i]), 2);
    ss_tot += std::pow(y[i] - sy / n, 2);
  }
  return {a, b, ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

Mat random_contraction(Eigen::Index d, double norm, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m * (norm / oc::opnorm(m));
}

gen::Instance hermitian(std::size_t dim, std::size_t s, double gap, std::uint64_t seed) {
  gen::InstanceSpec spec;
  spec.dim = dim;
  spec.sparsity = s;
  spec.gap = gap;
  spec.seed = seed;
  return gen::generate_instance(spec);
}

// Stopping-rule k from the dense spectrum of `a`, capped.
std::size_t k_from_spectrum(const Mat &a, const Vec &x0, double delta, std::size_t cap) {
  const oc::Eig e = oc::dense_eig(a);
  const double gap = std::abs(e.values(0)) - std::abs(e.values(1));
  const double cos2 = std::norm(e.vectors.col(0).dot(x0) / x0.norm());
  return std::min(power::iteration_count(gap, delta, cos2, std::abs(e.values(1))), cap);
}

// 1. Composition algebra on random encodings.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(2, 64);
  std::uniform_real_distribution<double> al(1.0, 3.0), nm(0.2, 0.9);
  double worst_unit = 0;
  std::size_t checks = 0;
  auto unitary = [&](const BlockEncoding &b, const char *what) {
    const double d = linalg::unitarity_defect(b.unitary);
    worst_unit = std::max(worst_unit, d);
    o.require_that(d <= 1e-10, std::string(what) + " is not unitary");
  };
  auto block = [&](const BlockEncoding &b, const Mat &want, const std::string &what) {
    const double err = (blockenc::encoded_block(b) - want).cwiseAbs().maxCoeff();
    o.check(what, 0.0, err, b.eps + 1e-10);
    ++checks;
  };
  for (int inst = 0; inst < 200; ++inst) {
    const Eigen::Index d = dim(rng);
    const Mat a1 = random_contraction(d, nm(rng), rng), a2 = random_contraction(d, nm(rng), rng);
    const double al1 = al(rng), al2 = al(rng);
    const BlockEncoding e1 = blockenc::relabel_alpha(blockenc::dilate(a1), al1);
    const BlockEncoding e2 = blockenc::relabel_alpha(blockenc::dilate(a2), al2);
    const Mat t1 = al1 * a1, t2 = al2 * a2;
    unitary(e1, "dilation");

    const BlockEncoding pr = blockenc::product(e1, e2);
    unitary(pr, "product");
    block(pr, t1 * t2, "product block");
    o.require_that(pr.alpha == al1 * al2, "product alpha is not alpha1 * alpha2");

    const BlockEncoding lc = blockenc::linear_combination({e1, e2}, {+1, -1});
    unitary(lc, "linear combination");
    block(lc, (t1 - t2) / 2.0, "lcu block");

    const BlockEncoding sd = blockenc::scale_down(e1, 2.5);
    unitary(sd, "scale_down");
    block(sd, t1 / 2.5, "scale_down block");

    const double f = 0.95 / oc::opnorm(a1);
    const BlockEncoding pa = blockenc::preamplify(e1, f);
    unitary(pa, "preamplify");
    block(pa, t1, "preamplify block");

    if (d <= 8) {
      const BlockEncoding te = blockenc::tensor({e1, e2});
      unitary(te, "tensor");
      block(te, oc::kron(t1, t2), "tensor block");
    }
  }
  const double secs = seconds_since(t0);
  o.require_that(secs < 60, "runtime over 60 s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "200 instances, %zu block checks, worst unitarity defect %.2e, %.1f s", checks,
                worst_unit, secs);
  o.summary = buf;
  return o;
}

// 2. Exponential approximant.
Outcome criterion2() {
  Outcome o;
  const double beta = 0.01;
  const std::vector<double> epss{1e-2, 1e-4, 1e-6};
  std::vector<double> logs, degrees;
  std::string degs;
  for (double eps : epss) {
    const ChebyshevPolynomial p = exp_poly(beta, eps);
    const std::size_t grid = 100000;
    double err = 0, min01 = 1e300;
    for (std::size_t i = 0; i < grid; ++i) {
      const double x = -1.0 + 2.0 * double(i) / double(grid - 1);
      err = std::max(err, std::abs(p(x) - std::exp(-beta * (1.0 - x))));
      if (x >= 0) min01 = std::min(min01, p(x));
    }
    o.check("sup error eps=" + std::to_string(eps), 0.0, err, eps);
    o.require_that(min01 >= 0.5 - eps, "P < 0.5 somewhere on [0, 1]");
    logs.push_back(std::log(1.0 / eps));
    degrees.push_back(double(p.degree()));
    degs += (degs.empty() ? "" : ",") + std::to_string(p.degree());
  }
  // One constant for all three, least squares through the origin; each
  // degree may exceed c log(1/eps) by at most the integer rounding of one.
  double num = 0, den = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    num += logs[i] * degrees[i];
    den += logs[i] * logs[i];
  }
  const double c = num / den;
  for (std::size_t i = 0; i < logs.size(); ++i)
    o.require_that(degrees[i] <= c * logs[i] + 1.0, "degree exceeds c log(1/eps) at eps = " + std::to_string(epss[i]));
  char buf[160];
  std::snprintf(buf, sizeof buf, "degrees %s, fitted c = %.3f", degs.c_str(), c);
  o.summary = buf;
  return o;
}

// 3. Power method identity and convergence.
Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int within = 0;
  std::size_t kmax = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const gen::Instance inst = hermitian(64, 3, 0.1, 300 + seed);
    const SparseHermitianMatrix sm(inst.matrix, 3);
    const Vec x0 = power::default_x0(64);
    power::PowerConfig cfg{sm};
    cfg.x0 = x0;
    cfg.k = k_from_spectrum(inst.matrix, x0, 0.05, 500);
    cfg.phi_seed = seed;
    kmax = std::max(kmax, cfg.k);
    const auto rec = power::run_power_method(cfg);
    // Independent x_k: plain repeated multiplication.
    const Vec xk = oc::classical_power(inst.matrix, x0, cfg.k);
    const double rq = xk.dot(inst.matrix * xk).real();
    o.check("identity seed " + std::to_string(seed), rq, rec.lambda_est, 1e-10);
    const double top = oc::lambda_max(inst.matrix);
    if (std::abs(rec.lambda_est - top) <= 0.05) ++within;
  }
  const double secs = seconds_since(t0);
  o.require_that(within >= 19, "fewer than 19 of 20 instances within delta");
  o.require_that(secs < 300, "runtime over 5 min");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/20 within delta = 0.05, k up to %zu, %.1f s", within, kmax, secs);
  o.summary = buf;
  return o;
}

// 4. Stability in adversarial perturbed mode.
Outcome criterion4() {
  Outcome o;
  std::size_t trials = 0;
  double worst = 0, fmin = 1e300, fmax = 0;
  for (std::uint64_t inst_seed = 0; inst_seed < 4; ++inst_seed) {
    const gen::Instance inst = hermitian(16, 3, 0.1, 400 + inst_seed);
    const SparseHermitianMatrix sm(inst.matrix, 3);
    power::PowerConfig base{sm};
    base.k = k_from_spectrum(inst.matrix, power::default_x0(16), 0.05, 500);
    const auto exact = power::run_power_method(base);
    const double eps_max = 1.0 / (2.0 * std::sqrt(2.0) * exact.kappa);
    for (double eps : {1e-4, 1e-3, 1e-2}) {
      if (eps > eps_max) continue;
      for (std::uint64_t s = 0; s < 5; ++s) {
        power::PowerConfig cfg = base;
        cfg.eps = eps;
        cfg.mode = EstimatorMode::perturbed(0, s);
        const auto rec = power::run_power_method(cfg);
        const double c = rec.error_bound / (rec.kappa * eps);
        o.check("|lambda~ - lambda|", rec.lambda, rec.lambda_est, c * rec.kappa * eps);
        worst = std::max(worst, std::abs(rec.lambda_est - rec.lambda) / rec.error_bound);
        fmin = std::min(fmin, rec.frob_sq);
        fmax = std::max(fmax, rec.frob_sq);
        // The witness diagonals are cos(pi/3) in floating point, so frob_sq
        // can exceed 1 by a few ulps when c~ is clamped to 1.
        o.require_that(rec.frob_sq >= 0.5 - 1e-12 && rec.frob_sq <= 1.0 + 1e-12, "frob_sq outside [0.5, 1]");
        ++trials;
      }
    }
  }
  o.require_that(trials > 0, "no trial satisfied the eps condition");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu trials, worst err / bound = %.3f, frob_sq in [%.4f, %.4f]", trials, worst, fmin,
                fmax);
  o.summary = buf;
  return o;
}

// 5. Conditioning with and without the exponential amplification.
Outcome criterion5() {
  Outcome o;
  const gen::Instance inst = hermitian(16, 3, 0.1, 5);
  power::PowerConfig cfg{SparseHermitianMatrix(inst.matrix, 3)};
  const auto amp = power::conditioning_experiment(cfg, true, 1, 20);
  double kmax = 0;
  for (const auto &r : amp) {
    kmax = std::max(kmax, r.kappa);
    o.require_that(r.kappa <= 10, "amplified kappa above 10 at k = " + std::to_string(r.k));
  }
  const auto raw = power::conditioning_experiment(cfg, false, 1, 20);
  double rmin = 1e300, rmax = 0;
  for (const auto &r : raw) {
    const double q = std::abs(r.det) / r.p_k;
    rmin = std::min(rmin, q);
    rmax = std::max(rmax, q);
  }
  o.require_that(rmax <= 10 * rmin, "det / p_k varies by more than a factor 10");
  o.require_that(raw.back().kappa > 100 * raw.front().kappa, "raw kappa does not grow");
  char buf[200];
  std::snprintf(buf, sizeof buf, "amplified kappa <= %.3f; raw det/p_k in [%.4f, %.4f], raw kappa %.3g -> %.3g", kmax,
                rmin, rmax, raw.front().kappa, raw.back().kappa);
  o.summary = buf;
  return o;
}

// 6. Gradient operator identities.
Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst_rel = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t p = 2 + std::size_t(i % 2);
    const std::size_t n = 2 + std::size_t((i / 2) % 3);
    const auto prob = gen::tensor_problem(n, p, 2, 600 + std::uint64_t(i));
    RVec x(static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = g(rng);
    x *= 0.8 / x.norm();
    const RMat a = prob.dense();
    const grad::MdBuild mb = grad::build_MD(prob);
    const RMat d1 = grad::D_direct(prob, x), d2 = grad::D_partial_trace(prob, x, mb.md);
    o.check("D paths", 0.0, (d1 - d2).cwiseAbs().maxCoeff(), 1e-12);
    const RVec fd = oc::fd_gradient([&](const RVec &y) { return oc::monomial_eval(a, n, p, y); }, x);
    const double rel = (d1 * x - fd).norm() / std::max(fd.norm(), 1e-300);
    worst_rel = std::max(worst_rel, rel);
    o.check("D(x)x vs finite differences (relative)", 0.0, rel, 1e-5);
    const auto sw = grad::md_sandwich_identity_check(prob, x * x.transpose());
    o.check("two-sided sandwich", 0.0, (sw.two_sided_lhs - sw.two_sided_rhs).cwiseAbs().maxCoeff(), 1e-12);
    o.check("one-sided sandwich", 0.0, (sw.one_sided_lhs - sw.one_sided_rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "50 instances, worst finite-difference relative error %.2e", worst_rel);
  o.summary = buf;
  return o;
}

// 7. Second scheme, single step.
Outcome criterion7() {
  Outcome o;
  const double eta = 1.0 / 8;
  double worst = 0, min_margin = 1e300;
  int trials = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto prob = gen::tensor_problem(2, 2, 1 + seed % 3, 700 + seed);
    if (grad::build_MD(prob).s > 4) continue;
    const Vec x = grad::random_unit(2, 70 + seed);
    const auto st = grad::gd_step_v2(x, prob, eta, 1e-2, grad::v2_copy_requirement(2, 1e-2));
    const RVec xr = x.real();
    RVec want = xr - eta * oc::monomial_gradient(prob.dense(), 2, 2, xr);
    want /= want.norm();
    const double err = (st.x_next.real() - want).norm() + st.x_next.imag().norm();
    worst = std::max(worst, err);
    o.check("normalized update", 0.0, err, 1e-8);
    o.require_that(st.c_sq >= st.c_sq_bound - 1e-12, "C^2 bound violated");
    o.require_that(st.success_prob >= st.floor, "success probability below the floor");
    min_margin = std::min(min_margin, st.success_prob / st.floor);
    ++trials;
  }
  o.require_that(trials >= 8, "too few instances with s <= 4");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d trials, worst state error %.2e, min success/floor %.2f", trials, worst,
                min_margin);
  o.summary = buf;
  return o;
}

// 8. First scheme, T <= 3.
Outcome criterion8() {
  Outcome o;
  double worst = 0;
  int steps = 0;
  for (std::size_t T = 1; T <= 3; ++T)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const std::size_t n = 2 + seed % 2;
      const auto prob = gen::tensor_problem(n, 2, 2, 800 + seed);
      const double eta = 0.2;
      const auto tr = grad::run_gd_v1(grad::GdConfigV1{prob, T, eta});
      const RVec x0 = grad::bounded_init_state(T, n).x0;
      const auto cl = oc::classical_gd_recursion(prob.dense(), n, 2, x0, eta, T, false);
      for (const auto &s : tr.steps) {
        const RMat want = cl[s.t] * cl[s.t].transpose();
        const double err = (s.encoded - want.cast<cplx>()).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        o.check("density recursion", 0.0, err, 1e-8);
        const double bound = std::pow(4.0, double(s.t)) * x0.squaredNorm();
        o.require_that(cl[s.t].squaredNorm() <= bound && s.norm_sq <= bound * (1 + 1e-12), "norm growth bound");
        ++steps;
      }
    }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d steps, worst block error %.2e", steps, worst);
  o.summary = buf;
  return o;
}

// 9. Newton inversion.
Outcome criterion9() {
  Outcome o;
  double worst_c = 0, worst_inv = 0;
  auto run = [&](const Mat &a, double alpha0, const std::string &name) {
    const auto res = matinv::newton_inverse({a, alpha0, 8});
    const Mat id = Mat::Identity(a.rows(), a.cols());
    for (std::size_t t = 0; t + 1 < res.iterates.size(); ++t) {
      const Mat r = id - a * res.iterates[t];
      const double e = (id - a * res.iterates[t + 1] - r * r).cwiseAbs().maxCoeff();
      worst_c = std::max(worst_c, e);
      o.check(name + " contraction", 0.0, e, 1e-12);
    }
    const double e = oc::opnorm(res.iterates.back() - oc::dense_inverse(a));
    worst_inv = std::max(worst_inv, e);
    o.check(name + " inverse", 0.0, e, 1e-6);
  };
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = 0.25;
  run(d, 1.0, "diag");
  for (std::uint64_t s = 0; s < 10; ++s) run(gen::newton_instance(16, 900 + s), 0.0, "random " + std::to_string(s));
  char buf[120];
  std::snprintf(buf, sizeof buf, "11 matrices, worst contraction %.2e, worst ||X_8 - A^-1|| %.2e", worst_c,
                worst_inv);
  o.summary = buf;
  return o;
}

// 10. Extreme eigenvalues through the spectral shift.
Outcome criterion10() {
  Outcome o;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const gen::Instance inst = hermitian(32, 3, 0.1, 1000 + seed);
    const Vec x0 = power::default_x0(32);
    const double lmax = oc::lambda_max(inst.matrix), lmin = oc::lambda_min(inst.matrix);
    o.require_that(lmin > 0, "instance is not positive definite");
    power::ExtremesConfig cfg{power::PowerConfig{SparseHermitianMatrix(inst.matrix, 3)}};
    cfg.base.x0 = x0;
    // At least 60 / 120 iterations, more when the stopping rule asks for it,
    // but never past the point where p_k underflows.
    cfg.base.k = std::min(std::max<std::size_t>(60, k_from_spectrum(inst.matrix, x0, 0.05, 500)),
                          power::representable_k(lmax / 3.0));
    const Mat shifted = (lmax + cfg.shift) * Mat::Identity(32, 32) - inst.matrix;
    cfg.k_shift = std::min(std::max<std::size_t>(120, k_from_spectrum(shifted, x0, 0.05, 500)),
                           power::representable_k((lmax + cfg.shift - lmin) / 3.0));
    cfg.base.phi_seed = seed;
    const auto ex = power::extract_extremes(cfg);
    o.check("lambda_max", lmax, ex.lambda_max, 0.05);
    o.check("lambda_min", lmin, ex.lambda_min, 0.05);
    worst = std::max({worst, std::abs(lmax - ex.lambda_max), std::abs(lmin - ex.lambda_min)});
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "5 instances, worst error %.2e", worst);
  o.summary = buf;
  return o;
}

// 11. Cost table.
Outcome criterion11() {
  Outcome o;
  const auto rows = grad::cost_model_compare(2, 11);
  double min_margin = 1e300;
  for (const auto &r : rows) {
    // Compare logarithms: (2p - 1) ln(4/pi) against 2 ln p.
    const long double lhs = (2.0L * r.p - 1.0L) * std::log(4.0L / std::numbers::pi_v<long double>);
    const long double rhs = 2.0L * std::log((long double)r.p);
    const bool below = lhs < rhs;
    min_margin = std::min(min_margin, double(std::abs(lhs - rhs)));
    o.require_that(below == r.below, "table disagrees at p = " + std::to_string(r.p));
    o.require_that(below == (r.p <= 10), "inequality pattern wrong at p = " + std::to_string(r.p));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "below for p = 2..10, flips at 11; smallest log margin %.3e", min_margin);
  o.summary = buf;
  return o;
}

// 12. Ledger growth.
Outcome criterion12() {
  Outcome o;
  const gen::Instance inst = hermitian(16, 3, 0.1, 12);
  const SparseHermitianMatrix sm(inst.matrix, 3);
  auto queries = [&](std::size_t k, double eps) {
    power::PowerConfig cfg{sm};
    cfg.k = k;
    cfg.eps = eps;
    return double(power::run_power_method(cfg).ledger.oracle_queries);
  };
  std::vector<double> ks, qk;
  for (std::size_t k = 2; k <= 20; ++k) {
    ks.push_back(double(k));
    qk.push_back(queries(k, 1e-3));
  }
  const auto fk = fit_line(ks, qk);
  o.require_that(fk[2] >= 0.99, "queries not linear in k");
  std::vector<double> inv, qe;
  for (double eps : {4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4}) {
    inv.push_back(1.0 / eps);
    qe.push_back(queries(10, eps));
  }
  const auto fe = fit_line(inv, qe);
  o.require_that(fe[2] >= 0.99, "queries not linear in 1/eps");

  // Copies consumed by a second-scheme step against (1/eps) log(1/eps).
  const auto prob = gen::tensor_problem(2, 2, 1, 12);
  std::vector<double> shape, copies;
  for (double eps : {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001}) {
    grad::GdConfigV2 cfg{prob, 1, 0.125};
    cfg.eps = eps;
    shape.push_back(std::log(1.0 / eps) / eps);
    copies.push_back(double(grad::run_gd_v2(cfg).ledger.copies_consumed));
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    num += shape[i] * copies[i];
    den += shape[i] * shape[i];
  }
  const double c = num / den;
  double worst = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) worst = std::max(worst, std::abs(copies[i] / (c * shape[i]) - 1));
  o.require_that(worst <= 0.25, "copies deviate from c (1/eps) log(1/eps) by more than 25%");
  char buf[200];
  std::snprintf(buf, sizeof buf, "R^2 in k %.5f, R^2 in 1/eps %.5f, copies = %.2f (1/eps) ln(1/eps) within %.1f%%",
                fk[2], fe[2], c, 100 * worst);
  o.summary = buf;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                       criterion5, criterion6, criterion7,  criterion8,
                                                       criterion9, criterion10, criterion11, criterion12};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception &e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.summary.c_str());
    if (!o.reports.empty()) {
      const auto worst = std::max_element(o.reports.begin(), o.reports.end(),
                                          [](const auto &a, const auto &b) { return a.abs_err < b.abs_err; });
      std::printf("    worst: %s oracle=%.10g pipeline=%.10g abs_err=%.3e rel_err=%.3e (%zu comparisons)\n",
                  worst->name.c_str(), worst->oracle, worst->pipeline, worst->abs_err, worst->rel_err,
                  o.reports.size());
    }
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
