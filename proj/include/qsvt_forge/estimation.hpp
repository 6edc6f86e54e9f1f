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

#ifndef QSVT_FORGE_ESTIMATION_HPP
#define QSVT_FORGE_ESTIMATION_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "qsvt_forge/block_encoding.hpp"

namespace qsvt_forge {

/// Fidelity mode of every simulated measurement.
///
/// perturbed: the exact value is shifted by min(eps, call accuracy) with a
/// sign that alternates from call to call, starting at +1 for even seeds and
/// -1 for odd seeds (then clamped to the quantity's physical range). eps = 0
/// means "the accuracy requested by each call".
/// sampled: binomial sampling with `shots` repetitions.
struct EstimatorMode {
  enum class Kind { exact, perturbed, sampled };
  Kind kind = Kind::exact;
  double eps = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static EstimatorMode exact() { return {}; }
  static EstimatorMode perturbed(double eps, std::uint64_t seed) {
    require(eps >= 0, "perturbed mode: eps must be non-negative");
    return {Kind::perturbed, eps, 0, seed};
  }
  static EstimatorMode sampled(std::uint64_t shots, std::uint64_t seed) {
    require(shots >= 1, "sampled mode: shots must be at least 1");
    return {Kind::sampled, 0, shots, seed};
  }
  std::string name() const {
    switch (kind) {
      case Kind::exact: return "exact";
      case Kind::perturbed: return "perturbed";
      case Kind::sampled: return "sampled";
    }
    return "?";
  }
};

/// Per-run counters. Everything only ever increases.
struct QueryLedger {
  std::uint64_t oracle_queries = 0;
  std::uint64_t be_applications = 0;
  std::uint64_t copies_consumed = 0;
  std::uint64_t estimator_calls = 0;

  QueryLedger &operator+=(const QueryLedger &o) {
    oracle_queries += o.oracle_queries;
    be_applications += o.be_applications;
    copies_consumed += o.copies_consumed;
    estimator_calls += o.estimator_calls;
    return *this;
  }
};

namespace estimation {

/// Constant c in the ceil(c/eps) charge of one amplitude or trace estimate.
inline constexpr double kAmplitudeConstant = std::numbers::pi;

inline std::uint64_t ae_uses(double eps) { return std::uint64_t(std::ceil(kAmplitudeConstant / eps - 1e-9)); }

namespace detail {

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Applies the estimator mode to a value known to lie in [lo, hi]. For
/// sampled mode, `prob` maps the value to a Bernoulli probability and `back`
/// maps the empirical frequency back.
template <typename ToProb, typename Back>
double realize(double exact, double eps_target, const EstimatorMode &mode, QueryLedger &ledger, double lo, double hi,
               ToProb prob, Back back) {
  const std::uint64_t call = ledger.estimator_calls++;
  switch (mode.kind) {
    case EstimatorMode::Kind::exact: return exact;
    case EstimatorMode::Kind::perturbed: {
      const double mag = mode.eps > 0 ? std::min(mode.eps, eps_target) : eps_target;
      const double sign = ((mode.seed + call) % 2 == 0) ? 1.0 : -1.0;
      return std::clamp(exact + sign * mag, lo, hi);
    }
    case EstimatorMode::Kind::sampled: {
      std::mt19937_64 rng(mix(mode.seed, call));
      std::binomial_distribution<std::uint64_t> b(mode.shots, std::clamp(prob(exact), 0.0, 1.0));
      return back(double(b(rng)) / double(mode.shots));
    }
  }
  return exact;
}

}  // namespace detail

/// Magnitude of the amplitude of `state` inside the flag projector, which
/// projects onto the first `flagged_prefix` basis states (the all-zero
/// ancilla block in ancilla-major layout). Charges ceil(pi/eps) uses of the
/// preparing unitary, whose cost is `prep_queries` oracle queries.
inline double amplitude_estimate(const Vec &state, std::size_t flagged_prefix, double eps, const EstimatorMode &mode,
                                 QueryLedger &ledger, std::uint64_t prep_queries = 1) {
  require(eps > 0, "amplitude_estimate: eps must be positive");
  require(flagged_prefix <= std::size_t(state.size()), "amplitude_estimate: flag projector larger than the state");
  const double a = state.head(Eigen::Index(flagged_prefix)).norm();
  const std::uint64_t uses = mode.kind == EstimatorMode::Kind::sampled ? mode.shots : ae_uses(eps);
  ledger.be_applications += uses;
  ledger.oracle_queries += uses * prep_queries;
  return detail::realize(
      a, eps, mode, ledger, 0.0, 1.0, [](double x) { return x * x; }, [](double f) { return std::sqrt(f); });
}

/// Tr(B rho) for the encoded block B of `be_a` (||B|| <= 1) and rho the
/// reduced state of `pur`; Hadamard-test style estimate of the real part.
inline double trace_estimate(const BlockEncoding &be_a, const Purification &pur, double eps, const EstimatorMode &mode,
                             QueryLedger &ledger, std::uint64_t prep_queries = 1) {
  require(eps > 0, "trace_estimate: eps must be positive");
  require(be_a.sys_dim == pur.sys_dim, "trace_estimate: dimension mismatch");
  const Mat rho = pur.reduced();
  const double v = (be_a.block() * rho).trace().real();
  const std::uint64_t uses = mode.kind == EstimatorMode::Kind::sampled ? mode.shots : ae_uses(eps);
  ledger.be_applications += uses;
  ledger.oracle_queries += uses * (be_a.queries + prep_queries);
  return detail::realize(
      v, eps, mode, ledger, -1.0, 1.0, [](double x) { return 0.5 * (1 + x); }, [](double f) { return 2 * f - 1; });
}

/// Re <psi|phi> via the Hadamard test.
inline double hadamard_overlap(const Vec &psi, const Vec &phi, double eps, const EstimatorMode &mode,
                               QueryLedger &ledger) {
  require(eps > 0, "hadamard_overlap: eps must be positive");
  require(psi.size() == phi.size(), "hadamard_overlap: dimension mismatch");
  const double v = psi.dot(phi).real();  // Eigen's dot conjugates the left operand
  const std::uint64_t uses = mode.kind == EstimatorMode::Kind::sampled ? mode.shots : ae_uses(eps);
  ledger.be_applications += uses;
  return detail::realize(
      v, eps, mode, ledger, -1.0, 1.0, [](double x) { return 0.5 * (1 + x); }, [](double f) { return 2 * f - 1; });
}

}  // namespace estimation
}  // namespace qsvt_forge

#endif
