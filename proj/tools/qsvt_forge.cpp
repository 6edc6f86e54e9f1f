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

// Batch experiment runner. Exit codes: 0 ok, 2 invalid input, 3 numerical
// degeneracy, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qsvt_forge/oracles.hpp"
#include "qsvt_forge/qsvt_forge.hpp"

namespace qf = qsvt_forge;
using qf::cplx;
using qf::Mat;
using qf::Vec;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string manifest;
  std::string config;
  std::string mode = "exact";
  double mode_eps = 0;
  std::uint64_t shots = 1000;
  std::size_t trials = 1;

  // Instance source.
  std::string matrix;
  std::size_t dim = 16;
  std::size_t sparsity = 3;
  double gap = 0.1;
  double kappa = 10;

  // Power method.
  std::string k = "auto";
  double delta = 0.05;
  double beta = 0.01;
  double eps = 0;  // 0: subcommand default
  double poly_eps = 1e-6;
  double shift = 0.05;
  std::string k_shift = "auto";
  std::size_t max_k = 500;

  // Gradient descent.
  std::string problem;
  std::size_t n = 3;
  std::size_t p = 2;
  std::size_t terms = 2;
  std::size_t T = 0;  // 0: subcommand default
  std::string eta = "auto";
  bool keep_quarter = false;
  std::uint64_t copies = 0;

  int pmin = 1;
  int pmax = 12;

  std::string alpha = "auto";
  std::string kind = "hermitian";
};

using Setter = std::function<void(const std::string &)>;

class Registry {
 public:
  template <typename T>
  void add(CLI::App *app, const std::string &name, T &var, const std::string &desc) {
    app->add_option("--" + name, var, desc)->capture_default_str();
    remember(name, var);
  }
  void flag(CLI::App *app, const std::string &name, bool &var, const std::string &desc) {
    app->add_flag("--" + name, var, desc);
    remember(name, var);
  }

  /// Config values win over command-line flags.
  void apply(const std::map<std::string, std::string> &kv) const {
    for (const auto &[key, value] : kv) {
      const auto it = setters_.find(key);
      if (it == setters_.end()) throw qf::ValidationError("config: unknown key '" + key + "'");
      it->second(value);
    }
  }

 private:
  template <typename T>
  void remember(const std::string &name, T &var) {
    setters_[name] = [&var, name](const std::string &v) {
      T tmp{};
      if (!CLI::detail::lexical_cast(v, tmp)) throw qf::ValidationError("config: bad value '" + v + "' for " + name);
      var = tmp;
    };
  }
  std::map<std::string, Setter> setters_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(std::size_t v, int) { return std::to_string(v); }

std::string join(const std::vector<std::string> &cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s;
}

const std::vector<std::string> kLedgerColumns = {"oracle_queries", "be_applications", "copies_consumed",
                                                 "estimator_calls"};

void append_ledger(std::vector<std::string> &row, const qf::QueryLedger &l) {
  row.push_back(fmt(l.oracle_queries));
  row.push_back(fmt(l.be_applications));
  row.push_back(fmt(l.copies_consumed));
  row.push_back(fmt(l.estimator_calls));
}

struct TrialOutput {
  std::vector<std::vector<std::string>> rows;
  qf::QueryLedger ledger;
};

struct Table {
  std::vector<std::string> header;
  std::vector<TrialOutput> trials;
};

std::size_t worker_count(std::size_t trials) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("QSVT_FORGE_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw qf::ValidationError("QSVT_FORGE_THREADS must be a positive integer");
    cap = std::size_t(v);
  }
  return std::max<std::size_t>(1, std::min(cap, trials));
}

/// Runs trials on a small pool; results are indexed by trial so the output
/// order never depends on scheduling. The first failure (by trial index) is
/// rethrown.
std::vector<TrialOutput> run_trials(std::size_t trials, const std::function<TrialOutput(std::size_t)> &body) {
  std::vector<TrialOutput> out(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::size_t next = 0;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= trials) return;
        i = next++;
      }
      try {
        out[i] = body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t w = worker_count(trials);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

qf::EstimatorMode make_mode(const Options &o, std::uint64_t seed) {
  if (o.mode == "exact") return qf::EstimatorMode::exact();
  if (o.mode == "perturbed") return qf::EstimatorMode::perturbed(o.mode_eps, seed);
  if (o.mode == "sampled") return qf::EstimatorMode::sampled(o.shots, seed);
  throw qf::ValidationError("--mode must be exact, perturbed or sampled (got '" + o.mode + "')");
}

Mat hermitian_instance(const Options &o, std::uint64_t seed) {
  if (!o.matrix.empty()) return qf::io::read_matrix(o.matrix);
  qf::gen::InstanceSpec spec;
  spec.dim = o.dim;
  spec.sparsity = o.sparsity;
  spec.gap = o.gap;
  spec.kappa = o.kappa;
  spec.seed = seed;
  return qf::gen::generate_instance(spec).matrix;
}

struct Spectrum {
  std::vector<double> by_magnitude;  // descending |lambda|
  Vec top;
};

Spectrum spectrum_of(const Mat &a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()));
  std::vector<Eigen::Index> idx(std::size_t(a.rows()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = Eigen::Index(i);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(j));
  });
  Spectrum s;
  for (auto i : idx) s.by_magnitude.push_back(es.eigenvalues()(i));
  s.top = es.eigenvectors().col(idx[0]);
  return s;
}

/// k from the stopping rule, using the dense spectrum of `a` for the gap and
/// the initial overlap; capped where p_k would underflow.
std::size_t auto_k(const Mat &a, const Vec &x0, double delta, std::size_t cap, std::size_t sparsity) {
  if (a.rows() == 1) return 1;
  const Spectrum s = spectrum_of(a);
  const double gap = std::abs(s.by_magnitude[0]) - std::abs(s.by_magnitude[1]);
  if (!(gap > 1e-12)) throw qf::ValidationError("--k auto: the top eigenvalue is degenerate in magnitude");
  const double cos2 = std::norm(s.top.dot(x0) / x0.norm());
  const std::size_t k = qf::power::iteration_count(gap, delta, cos2, s.by_magnitude[1]);
  const double radius = std::abs(s.by_magnitude[0]) / double(sparsity);
  return std::min({k, cap, qf::power::representable_k(radius)});
}

std::size_t parse_count(const std::string &v, const std::string &what) {
  std::size_t k = 0;
  if (!CLI::detail::lexical_cast(v, k) || k == 0) throw qf::ValidationError(what + " must be 'auto' or a positive integer");
  return k;
}

void check_norm_below_one(const Mat &a) {
  const double nrm = qf::linalg::op_norm(a);
  if (!(nrm < 1.0)) throw qf::ValidationError("matrix norm " + fmt(nrm) + " is not below 1");
}

Table cmd_eig(const Options &o) {
  Table t;
  t.header = {"schema_version", "trial",     "seed",     "n",          "s",         "k",
              "p_k",            "c",         "kappa",    "frob_sq",    "lambda_xk", "lambda_est",
              "lambda_dense",   "abs_err",   "err_dense", "error_bound", "poly_degree"};
  const double eps = o.eps > 0 ? o.eps : 1e-3;
  t.trials = run_trials(o.trials, [&](std::size_t trial) {
    const std::uint64_t seed = o.seed + trial;
    const Mat a = hermitian_instance(o, seed);
    qf::SparseHermitianMatrix sm(a);
    check_norm_below_one(sm.dense());
    const Vec x0 = qf::power::default_x0(sm.dim());
    const std::size_t k = o.k == "auto" ? auto_k(sm.dense(), x0, o.delta, o.max_k, sm.sparsity()) : parse_count(o.k, "--k");
    qf::power::PowerConfig cfg{sm};
    cfg.x0 = x0;
    cfg.k = k;
    cfg.beta = o.beta;
    cfg.eps = eps;
    cfg.delta = o.delta;
    cfg.poly_eps = o.poly_eps;
    cfg.mode = make_mode(o, seed);
    cfg.phi_seed = seed;
    const auto rec = qf::power::run_power_method(cfg);
    const double dense = spectrum_of(sm.dense()).by_magnitude[0];
    std::vector<std::string> row = {std::to_string(kSchemaVersion),
                                    fmt(trial, 0),
                                    fmt(seed),
                                    fmt(sm.dim(), 0),
                                    fmt(sm.sparsity(), 0),
                                    fmt(k, 0),
                                    fmt(rec.p_k),
                                    fmt(rec.c),
                                    fmt(rec.kappa),
                                    fmt(rec.frob_sq),
                                    fmt(rec.lambda),
                                    fmt(rec.lambda_est),
                                    fmt(dense),
                                    fmt(std::abs(rec.lambda_est - rec.lambda)),
                                    fmt(std::abs(rec.lambda_est - dense)),
                                    fmt(rec.error_bound),
                                    fmt(rec.poly_degree, 0)};
    append_ledger(row, rec.ledger);
    return TrialOutput{{row}, rec.ledger};
  });
  return t;
}

Table cmd_spectrum(const Options &o) {
  Table t;
  t.header = {"schema_version", "trial",      "seed",       "n",         "s",       "k",       "k_shift", "shift",
              "lambda_max_est", "lambda_min_est", "lambda_max_dense", "lambda_min_dense", "err_max", "err_min"};
  const double eps = o.eps > 0 ? o.eps : 1e-3;
  t.trials = run_trials(o.trials, [&](std::size_t trial) {
    const std::uint64_t seed = o.seed + trial;
    const Mat a = hermitian_instance(o, seed);
    qf::SparseHermitianMatrix sm(a);
    check_norm_below_one(sm.dense());
    Eigen::SelfAdjointEigenSolver<Mat> es(sm.dense());
    const double lmin = es.eigenvalues()(0), lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
    if (!(lmin > 0)) throw qf::ValidationError("spectrum: the matrix must be positive definite");
    const Vec x0 = qf::power::default_x0(sm.dim());
    const std::size_t k = o.k == "auto" ? auto_k(sm.dense(), x0, o.delta, o.max_k, sm.sparsity()) : parse_count(o.k, "--k");
    std::size_t ks = k;
    if (o.k_shift == "auto") {
      const Mat shifted = (lmax + o.shift) * Mat::Identity(a.rows(), a.cols()) - sm.dense();
      ks = auto_k(shifted, x0, o.delta, o.max_k, sm.sparsity());
    } else {
      ks = parse_count(o.k_shift, "--k-shift");
    }
    qf::power::ExtremesConfig cfg{qf::power::PowerConfig{sm}};
    cfg.base.x0 = x0;
    cfg.base.k = k;
    cfg.base.beta = o.beta;
    cfg.base.eps = eps;
    cfg.base.delta = o.delta;
    cfg.base.poly_eps = o.poly_eps;
    cfg.base.mode = make_mode(o, seed);
    cfg.base.phi_seed = seed;
    cfg.shift = o.shift;
    cfg.k_shift = ks;
    const auto ex = qf::power::extract_extremes(cfg);
    qf::QueryLedger led = ex.max_run.ledger;
    led += ex.shifted_run.ledger;
    std::vector<std::string> row = {std::to_string(kSchemaVersion),
                                    fmt(trial, 0),
                                    fmt(seed),
                                    fmt(sm.dim(), 0),
                                    fmt(sm.sparsity(), 0),
                                    fmt(k, 0),
                                    fmt(ks, 0),
                                    fmt(o.shift),
                                    fmt(ex.lambda_max),
                                    fmt(ex.lambda_min),
                                    fmt(lmax),
                                    fmt(lmin),
                                    fmt(std::abs(ex.lambda_max - lmax)),
                                    fmt(std::abs(ex.lambda_min - lmin))};
    append_ledger(row, led);
    return TrialOutput{{row}, led};
  });
  return t;
}

qf::grad::TensorPolynomial tensor_instance(const Options &o, std::uint64_t seed) {
  if (!o.problem.empty()) return qf::io::read_tensor(o.problem);
  return qf::gen::tensor_problem(o.n, o.p, o.terms, seed);
}

double parse_eta(const Options &o, std::size_t p) {
  if (o.eta == "auto") return 1.0 / (4.0 * double(p));
  double v = 0;
  if (!CLI::detail::lexical_cast(o.eta, v)) throw qf::ValidationError("--eta must be 'auto' or a number");
  return v;
}

Table cmd_grad1(const Options &o) {
  Table t;
  t.header = {"schema_version", "trial", "seed", "n", "p", "eta", "t", "norm_sq", "norm_sq_bound", "f", "beta",
              "extract_gain", "block_err_classical", "status"};
  const std::size_t T = o.T ? o.T : 3;
  t.trials = run_trials(o.trials, [&](std::size_t trial) {
    const std::uint64_t seed = o.seed + trial;
    const auto prob = tensor_instance(o, seed);
    const double eta = parse_eta(o, prob.p);
    qf::grad::GdConfigV1 cfg{prob, T, eta, seed, !o.keep_quarter, Mat(), make_mode(o, seed)};
    const auto tr = qf::grad::run_gd_v1(cfg);
    const qf::RVec x0 = qf::grad::bounded_init_state(T, prob.n, seed).x0;
    const auto cl = qsvt_forge::oracle::classical_gd_recursion(prob.dense(), prob.n, prob.p, x0, eta, T, false);
    TrialOutput out;
    out.ledger = tr.ledger;
    for (const auto &st : tr.steps) {
      const qf::RMat ref = cl[st.t] * cl[st.t].transpose();
      const double err = (st.encoded.real() - ref).cwiseAbs().maxCoeff() + st.encoded.imag().cwiseAbs().maxCoeff();
      std::vector<std::string> row = {std::to_string(kSchemaVersion),
                                      fmt(trial, 0),
                                      fmt(seed),
                                      fmt(prob.n, 0),
                                      fmt(prob.p, 0),
                                      fmt(eta),
                                      fmt(st.t, 0),
                                      fmt(st.norm_sq),
                                      fmt(std::pow(4.0, double(st.t)) * tr.steps[0].norm_sq),
                                      fmt(st.f),
                                      fmt(st.scale.beta),
                                      fmt(st.scale.extract_gain),
                                      fmt(err),
                                      st.t + 1 == tr.steps.size() ? tr.status : std::string("ok")};
      append_ledger(row, tr.ledger);
      out.rows.push_back(row);
    }
    return out;
  });
  return t;
}

Table cmd_grad2(const Options &o) {
  Table t;
  t.header = {"schema_version", "trial", "seed", "n", "p", "eta", "eps", "t", "f", "success_prob", "raw_prob", "c_sq",
              "c_sq_bound", "floor", "copies", "err_classical", "status"};
  const std::size_t T = o.T ? o.T : 3;
  const double eps = o.eps > 0 ? o.eps : 1e-2;
  t.trials = run_trials(o.trials, [&](std::size_t trial) {
    const std::uint64_t seed = o.seed + trial;
    const auto prob = tensor_instance(o, seed);
    const double eta = parse_eta(o, prob.p);
    qf::grad::GdConfigV2 cfg{prob, T, eta, o.copies, eps, seed, make_mode(o, seed), Vec()};
    const auto tr = qf::grad::run_gd_v2(cfg);
    const qf::RVec x0 = tr.steps[0].x.real();
    const auto cl = qsvt_forge::oracle::classical_gd_recursion(prob.dense(), prob.n, prob.p, x0, eta, T, true);
    TrialOutput out;
    out.ledger = tr.ledger;
    for (const auto &st : tr.steps) {
      const double err = (st.x - cl[st.t].cast<cplx>()).norm();
      std::vector<std::string> row = {std::to_string(kSchemaVersion),
                                      fmt(trial, 0),
                                      fmt(seed),
                                      fmt(prob.n, 0),
                                      fmt(prob.p, 0),
                                      fmt(eta),
                                      fmt(eps),
                                      fmt(st.t, 0),
                                      fmt(st.f),
                                      fmt(st.success_prob),
                                      fmt(st.raw_prob),
                                      fmt(st.c_sq),
                                      fmt(st.c_sq_bound),
                                      fmt(st.floor),
                                      fmt(st.copies),
                                      fmt(err),
                                      st.status};
      append_ledger(row, tr.ledger);
      out.rows.push_back(row);
    }
    return out;
  });
  return t;
}

Table cmd_gradcost(const Options &o) {
  Table t;
  t.header = {"schema_version", "p", "p5", "p3c", "ratio", "below", "crossover"};
  TrialOutput out;
  const auto rows = qf::grad::cost_model_compare(o.pmin, o.pmax);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto &r = rows[i];
    const bool cross = i > 0 && rows[i - 1].below && !r.below;
    std::vector<std::string> row = {std::to_string(kSchemaVersion), std::to_string(r.p), fmt(r.p5), fmt(r.p3c),
                                    fmt(r.ratio), r.below ? "1" : "0", cross ? "1" : "0"};
    append_ledger(row, out.ledger);
    out.rows.push_back(row);
  }
  t.trials.push_back(out);
  return t;
}

Table cmd_newton(const Options &o) {
  Table t;
  t.header = {"schema_version", "trial", "seed", "n", "alpha0", "t", "residual", "block_error_vs_dense",
              "dev_classical"};
  const std::size_t T = o.T ? o.T : 8;
  t.trials = run_trials(o.trials, [&](std::size_t trial) {
    const std::uint64_t seed = o.seed + trial;
    const Mat a = o.matrix.empty() ? qf::gen::newton_instance(o.dim, seed) : qf::io::read_matrix(o.matrix);
    qf::matinv::NewtonConfig cfg{a, 0.0, T, 0.0};
    if (o.alpha != "auto" && !CLI::detail::lexical_cast(o.alpha, cfg.alpha0))
      throw qf::ValidationError("--alpha must be 'auto' or a number");
    const auto res = qf::matinv::newton_inverse(cfg);
    const Mat inv = qsvt_forge::oracle::dense_inverse(a);
    const auto cl = qsvt_forge::oracle::classical_newton(a, res.alpha0, T);
    TrialOutput out;
    out.ledger.oracle_queries = res.x.queries;
    out.ledger.be_applications = 1;
    for (std::size_t i = 0; i < res.iterates.size(); ++i) {
      std::vector<std::string> row = {std::to_string(kSchemaVersion),
                                      fmt(trial, 0),
                                      fmt(seed),
                                      std::to_string(a.rows()),
                                      fmt(res.alpha0),
                                      fmt(i, 0),
                                      fmt(res.residual[i]),
                                      fmt(qsvt_forge::oracle::opnorm(res.iterates[i] - inv)),
                                      fmt(qsvt_forge::oracle::opnorm(res.iterates[i] - cl[i]))};
      append_ledger(row, out.ledger);
      out.rows.push_back(row);
    }
    return out;
  });
  return t;
}

std::string cmd_gen(const Options &o) {
  if (o.kind == "hermitian") {
    qf::gen::InstanceSpec spec;
    spec.dim = o.dim;
    spec.sparsity = o.sparsity;
    spec.gap = o.gap;
    spec.kappa = o.kappa;
    spec.seed = o.seed;
    return qf::io::format_matrix(qf::gen::generate_instance(spec).matrix);
  }
  if (o.kind == "newton") return qf::io::format_matrix(qf::gen::newton_instance(o.dim, o.seed));
  if (o.kind == "tensor") return qf::io::format_tensor(qf::gen::tensor_problem(o.n, o.p, o.terms, o.seed));
  throw qf::ValidationError("--kind must be hermitian, newton or tensor (got '" + o.kind + "')");
}

void write_text(const std::string &path, const std::string &text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qf::ValidationError("cannot write '" + path + "'");
  f << text;
}

std::string render(const Table &t) {
  std::vector<std::string> header = t.header;
  header.insert(header.end(), kLedgerColumns.begin(), kLedgerColumns.end());
  std::string s = join(header) + "\n";
  for (const auto &tr : t.trials)
    for (const auto &row : tr.rows) s += join(row) + "\n";
  return s;
}

void write_manifest(const std::string &path, const std::string &sub, const Options &o,
                    const std::map<std::string, std::string> &config, const std::vector<std::string> &args,
                    const Table *t, std::size_t rows) {
  nlohmann::ordered_json j;
  j["tool"] = "qsvt_forge";
  j["version"] = QSVT_FORGE_VERSION;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = sub;
  j["args"] = args;
  j["config"] = config;
  j["seed"] = o.seed;
  j["trials"] = o.trials;
  j["mode"] = o.mode;
  j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  j["compiler"] = __VERSION__;
  qf::QueryLedger total;
  if (t)
    for (const auto &tr : t->trials) total += tr.ledger;
  j["ledger"] = {{"oracle_queries", total.oracle_queries},
                 {"be_applications", total.be_applications},
                 {"copies_consumed", total.copies_consumed},
                 {"estimator_calls", total.estimator_calls}};
  j["output"] = {{"path", o.out.empty() ? "-" : o.out}, {"rows", rows}};
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qf::ValidationError("cannot write manifest '" + path + "'");
  f << j.dump(2) << "\n";
}

int run(int argc, char **argv) {
  CLI::App app{"qsvt_forge: simulated block-encoding pipelines for eigenvalues, gradient descent and inversion"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(QSVT_FORGE_VERSION));
  Options o;
  Registry reg;
  reg.add(&app, "seed", o.seed, "base seed; trial i uses seed + i");
  reg.add(&app, "out", o.out, "output file (stdout when empty)");
  reg.add(&app, "manifest", o.manifest, "run manifest path (default: <out>.manifest.json)");
  app.add_option("--config", o.config, "key = value file; its values override command-line flags");
  reg.add(&app, "mode", o.mode, "estimator mode: exact, perturbed or sampled");
  reg.add(&app, "mode-eps", o.mode_eps, "perturbation magnitude (0: accuracy requested by each call)");
  reg.add(&app, "shots", o.shots, "repetitions per estimate in sampled mode");
  reg.add(&app, "trials", o.trials, "number of seeded trials");

  auto *eig = app.add_subcommand("eig", "largest eigenvalue by the block-encoded power method");
  auto *spec = app.add_subcommand("spectrum", "largest and smallest eigenvalue via a spectral shift");
  auto *g1 = app.add_subcommand("grad1", "gradient descent, density-matrix scheme");
  auto *g2 = app.add_subcommand("grad2", "gradient descent, normalized-state scheme");
  auto *gc = app.add_subcommand("gradcost", "cost-model comparison table");
  auto *nt = app.add_subcommand("newton", "Newton-Schulz inversion on block encodings");
  auto *gn = app.add_subcommand("gen", "write a seeded instance file");

  for (auto *sc : {eig, spec, nt}) reg.add(sc, "matrix", o.matrix, "matrix file (otherwise a generated instance)");
  for (auto *sc : {eig, spec, nt, gn}) reg.add(sc, "dim", o.dim, "generated instance dimension");
  for (auto *sc : {eig, spec, gn}) {
    reg.add(sc, "sparsity", o.sparsity, "generated instance row sparsity");
    reg.add(sc, "gap", o.gap, "generated instance top gap");
    reg.add(sc, "kappa", o.kappa, "generated eigenvalues lie in (1/kappa, 0.95)");
  }
  for (auto *sc : {eig, spec}) {
    reg.add(sc, "k", o.k, "power iterations, or 'auto'");
    reg.add(sc, "delta", o.delta, "target accuracy for --k auto");
    reg.add(sc, "beta", o.beta, "exponent of the amplifying exponential");
    reg.add(sc, "eps", o.eps, "estimate accuracy (default 1e-3)");
    reg.add(sc, "poly-eps", o.poly_eps, "accuracy of the polynomial approximant");
    reg.add(sc, "max-k", o.max_k, "cap on --k auto");
  }
  reg.add(spec, "shift", o.shift, "spectral shift");
  reg.add(spec, "k-shift", o.k_shift, "iterations for the shifted run, or 'auto'");
  for (auto *sc : {g1, g2, gn}) {
    reg.add(sc, "n", o.n, "generated problem: variables");
    reg.add(sc, "p", o.p, "generated problem: half degree");
    reg.add(sc, "terms", o.terms, "generated problem: tensor-product terms");
  }
  for (auto *sc : {g1, g2}) {
    reg.add(sc, "problem", o.problem, "tensor problem file (otherwise generated)");
    reg.add(sc, "eta", o.eta, "step size, or 'auto' = 1/(4p)");
  }
  for (auto *sc : {g1, g2, nt}) reg.add(sc, "T", o.T, "steps (default 3 for grad1/grad2, 8 for newton)");
  reg.flag(g1, "keep-quarter", o.keep_quarter, "do not amplify away the factor 1/4 (single step only)");
  reg.add(g2, "eps", o.eps, "per-step accuracy (default 1e-2)");
  reg.add(g2, "copies", o.copies, "copies per step (0: exactly the requirement)");
  reg.add(gc, "pmin", o.pmin, "smallest p");
  reg.add(gc, "pmax", o.pmax, "largest p");
  reg.add(nt, "alpha", o.alpha, "X0 = alpha A^+, or 'auto' = 1/(||A||_1 ||A||_inf)");
  reg.add(gn, "kind", o.kind, "hermitian, newton or tensor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::map<std::string, std::string> config;
  if (!o.config.empty()) {
    config = qf::io::read_kv_config(o.config);
    reg.apply(config);
  }
  if (o.trials < 1) throw qf::ValidationError("--trials must be at least 1");

  std::vector<std::string> args(argv + 1, argv + argc);
  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "gen") {
    const std::string text = cmd_gen(o);
    write_text(o.out, text);
    if (!o.manifest.empty()) write_manifest(o.manifest, sub, o, config, args, nullptr, 1);
    return 0;
  }
  Table t;
  if (sub == "eig") t = cmd_eig(o);
  else if (sub == "spectrum") t = cmd_spectrum(o);
  else if (sub == "grad1") t = cmd_grad1(o);
  else if (sub == "grad2") t = cmd_grad2(o);
  else if (sub == "gradcost") t = cmd_gradcost(o);
  else if (sub == "newton") t = cmd_newton(o);
  else throw qf::ValidationError("unknown subcommand '" + sub + "'");

  write_text(o.out, render(t));
  std::size_t rows = 0;
  for (const auto &tr : t.trials) rows += tr.rows.size();
  const std::string mpath = !o.manifest.empty() ? o.manifest : (o.out.empty() ? "" : o.out + ".manifest.json");
  if (!mpath.empty()) write_manifest(mpath, sub, o, config, args, &t, rows);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const qf::DegeneracyError &e) {
    std::cerr << "qsvt_forge: numerical degeneracy: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument &e) {
    std::cerr << "qsvt_forge: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "qsvt_forge: error: " << e.what() << "\n";
    return 1;
  }
}
