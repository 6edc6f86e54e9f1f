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

// Block-encoding algebra, estimators, polynomials and density exponentiation.

#include <gtest/gtest.h>

#include <random>

#include "qsvt_forge/block_encoding.hpp"
#include "qsvt_forge/density.hpp"
#include "qsvt_forge/estimation.hpp"
#include "qsvt_forge/oracles.hpp"
#include "qsvt_forge/polynomial.hpp"

using namespace qsvt_forge;
namespace oc = qsvt_forge::oracle;

namespace {

Mat random_matrix(Eigen::Index n, std::mt19937_64 &rng, double norm = 0.9) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m * (norm / oc::opnorm(m));
}

Mat random_hermitian(Eigen::Index n, std::mt19937_64 &rng, double norm = 0.9) {
  Mat m = random_matrix(n, rng, 1.0);
  m = (0.5 * (m + m.adjoint())).eval();
  return m * (norm / oc::opnorm(m));
}

Mat random_density(Eigen::Index n, std::mt19937_64 &rng) {
  Mat m = random_matrix(n, rng, 1.0);
  Mat r = m * m.adjoint();
  return r / r.trace().real();
}

double unitarity(const BlockEncoding &be) { return linalg::unitarity_defect(be.unitary); }

}  // namespace

TEST(Dilation, IsUnitaryWithRequestedBlock) {
  std::mt19937_64 rng(1);
  for (int n : {1, 2, 5, 8}) {
    const Mat a = random_matrix(n, rng);
    const BlockEncoding be = blockenc::dilate(a);
    EXPECT_LE(unitarity(be), 1e-12);
    EXPECT_LE((be.block() - a).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(be.anc_dim, 2u);
    EXPECT_EQ(be.sys_dim, std::size_t(n));
  }
}

TEST(Dilation, RejectsNormAboveOne) {
  Mat a = Mat::Identity(2, 2) * 1.01;
  EXPECT_THROW(blockenc::dilate(a), ValidationError);
}

TEST(FromUnitary, RejectsNonUnitaryAndBadShape) {
  Mat m = Mat::Identity(4, 4);
  m(0, 0) = 2;
  EXPECT_THROW(blockenc::from_unitary(m, 2, 2), ValidationError);
  EXPECT_THROW(blockenc::from_unitary(Mat::Identity(4, 4), 3, 2), ValidationError);
}

TEST(Product, BlockAlphaAndErrorPropagation) {
  std::mt19937_64 rng(2);
  const Mat a = random_matrix(4, rng), b = random_matrix(4, rng);
  BlockEncoding ea = blockenc::relabel_alpha(blockenc::dilate(a), 3.0);
  BlockEncoding eb = blockenc::relabel_alpha(blockenc::dilate(b), 2.5);
  ea.eps = 0.01;
  eb.eps = 0.02;
  const BlockEncoding p = blockenc::product(ea, eb);
  EXPECT_EQ(p.alpha, 3.0 * 2.5);
  EXPECT_LE(unitarity(p), 1e-12);
  EXPECT_LE((blockenc::encoded_block(p) - (3.0 * a) * (2.5 * b)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(p.eps, 3.0 * 0.02 + 2.5 * 0.01, 1e-15);
  EXPECT_EQ(p.queries, 2u);
}

TEST(Product, RejectsDimensionMismatch) {
  EXPECT_THROW(blockenc::product(blockenc::dilate(Mat::Identity(2, 2) * 0.5), blockenc::dilate(Mat::Identity(3, 3) * 0.5)),
               ValidationError);
}

TEST(LinearCombination, EncodesSignedMean) {
  std::mt19937_64 rng(3);
  const Mat a = random_matrix(3, rng), b = random_matrix(3, rng), c = random_matrix(3, rng);
  const BlockEncoding ea = blockenc::dilate(a);
  const BlockEncoding eb = blockenc::relabel_alpha(blockenc::dilate(b), 2.0);
  const BlockEncoding ec = blockenc::dilate(c);
  const BlockEncoding l = blockenc::linear_combination({ea, eb, ec}, {+1, -1, +1});
  EXPECT_LE(unitarity(l), 1e-12);
  EXPECT_EQ(l.alpha, 2.0);
  const Mat want = (a - 2.0 * b + c) / 3.0;
  EXPECT_LE((blockenc::encoded_block(l) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LinearCombination, RejectsBadSigns) {
  const BlockEncoding e = blockenc::dilate(Mat::Identity(2, 2) * 0.3);
  EXPECT_THROW(blockenc::linear_combination({e, e}, {1, 2}), ValidationError);
  EXPECT_THROW(blockenc::linear_combination({e, e}, {1}), ValidationError);
  EXPECT_THROW(blockenc::linear_combination({}, {}), ValidationError);
}

TEST(Tensor, MatchesKroneckerProduct) {
  std::mt19937_64 rng(4);
  const Mat a = random_matrix(2, rng), b = random_matrix(3, rng);
  const BlockEncoding t =
      blockenc::tensor({blockenc::relabel_alpha(blockenc::dilate(a), 2.0), blockenc::dilate(b)});
  EXPECT_LE(unitarity(t), 1e-12);
  EXPECT_EQ(t.sys_dim, 6u);
  EXPECT_EQ(t.alpha, 2.0);
  EXPECT_LE((blockenc::encoded_block(t) - oc::kron(2.0 * a, b)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ScaleDown, DividesBlockKeepsAlpha) {
  std::mt19937_64 rng(5);
  const Mat a = random_matrix(3, rng);
  const BlockEncoding s = blockenc::scale_down(blockenc::dilate(a), 4.0);
  EXPECT_LE(unitarity(s), 1e-12);
  EXPECT_LE((s.block() - a / 4.0).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(blockenc::scale_down(blockenc::dilate(a), 1.0), ValidationError);
}

TEST(DiagEncode, EncodesScalarIdentity) {
  const BlockEncoding d = blockenc::diag_encode(0.3, 4);
  EXPECT_LE((d.block() - 0.3 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(blockenc::diag_encode(1.5, 2), ValidationError);
}

TEST(PadAncilla, KeepsBlockAndUnitarity) {
  std::mt19937_64 rng(6);
  const Mat a = random_matrix(2, rng);
  const BlockEncoding p = blockenc::pad_ancilla(blockenc::dilate(a), 5);
  EXPECT_EQ(p.anc_dim, 5u);
  EXPECT_LE(unitarity(p), 1e-12);
  EXPECT_LE((p.block() - a).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Queries, SaturateInsteadOfWrapping) {
  EXPECT_EQ(sat_add(UINT64_MAX - 1, 5), UINT64_MAX);
  EXPECT_EQ(sat_mul(std::uint64_t(1) << 40, std::uint64_t(1) << 40), UINT64_MAX);
  EXPECT_EQ(sat_mul(0, UINT64_MAX), 0u);
  EXPECT_EQ(sat_add(2, 3), 5u);
}

TEST(Preamplify, RemovesFactor) {
  const Mat a = Mat::Identity(2, 2) * 0.2;
  const BlockEncoding b = blockenc::relabel_alpha(blockenc::dilate(a), 4.0);
  const BlockEncoding amp = blockenc::preamplify(b, 3.0);
  EXPECT_NEAR(amp.alpha, 4.0 / 3.0, 1e-15);
  EXPECT_LE((blockenc::encoded_block(amp) - blockenc::encoded_block(b)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(amp.queries, 3u);
  EXPECT_THROW(blockenc::preamplify(b, 6.0), ValidationError);
  EXPECT_THROW(blockenc::preamplify(b, 0.5), ValidationError);
}

TEST(PolyTransform, AppliesPolynomialToPsdSpectrum) {
  std::mt19937_64 rng(7);
  Mat h = random_density(4, rng);
  const ChebyshevPolynomial p = exp_poly(0.5, 1e-8).for_qsvt();
  const BlockEncoding t = blockenc::poly_transform(blockenc::dilate(h), p);
  EXPECT_LE(unitarity(t), 1e-10);
  const oc::Eig e = oc::dense_eig(h);
  Mat want = Mat::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    want += std::exp(-0.5 * (1 - e.values(i))) * e.vectors.col(i) * e.vectors.col(i).adjoint();
  EXPECT_LE((blockenc::encoded_block(t) - want).cwiseAbs().maxCoeff(), 1e-7);
  EXPECT_EQ(t.queries, p.degree());
}

TEST(PolyTransform, ZeroBlockStaysZero) {
  const BlockEncoding z = blockenc::dilate(Mat::Zero(3, 3));
  const BlockEncoding t = blockenc::poly_transform(z, exp_poly(0.1, 1e-6).for_qsvt());
  EXPECT_LE(t.block().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Purify, ReducedStateReproducesDensity) {
  std::mt19937_64 rng(8);
  const Mat rho = random_density(5, rng);
  const Purification pur = blockenc::purify(rho);
  EXPECT_NEAR(pur.state.norm(), 1.0, 1e-12);
  EXPECT_LE((pur.reduced() - rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Purify, KeepsTinyDecoupledComponent) {
  // A block of weight 1e-30 must survive: it is exactly decoupled from the rest.
  Mat rho = Mat::Zero(4, 4);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  rho(2, 2) = 6e-31;
  rho(3, 3) = 4e-31;
  rho(2, 3) = rho(3, 2) = 1e-31;
  const Purification pur = blockenc::purify(rho);
  const Mat red = pur.reduced();
  EXPECT_NEAR(red(2, 2).real() / 6e-31, 1.0, 1e-10);
  EXPECT_NEAR(red(2, 3).real() / 1e-31, 1.0, 1e-9);
}

TEST(PurifiedDensityEncode, EncodesRho) {
  std::mt19937_64 rng(9);
  const Mat rho = random_density(3, rng);
  const BlockEncoding be = blockenc::purified_density_encode(blockenc::purify(rho), 7);
  EXPECT_LE((be.block() - rho).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(be.queries, 7u);
}

TEST(ConjugateSystem, RotatesBlock) {
  std::mt19937_64 rng(10);
  const Mat a = random_matrix(3, rng);
  const Vec w = Vec::Ones(3) / std::sqrt(3.0);
  const Mat v = linalg::unitary_with_first_column(w);
  const BlockEncoding c = blockenc::conjugate_system(blockenc::dilate(a), v);
  EXPECT_LE((c.block() - v.adjoint() * a * v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AmplitudeEstimate, ExactModeAndLedger) {
  Vec s = Vec::Zero(4);
  s(0) = 0.6;
  s(3) = 0.8;
  QueryLedger led;
  const double a = estimation::amplitude_estimate(s, 2, 1e-2, EstimatorMode::exact(), led, 5);
  EXPECT_NEAR(a, 0.6, 1e-15);
  EXPECT_EQ(led.be_applications, 315u);  // ceil(pi / 0.01)
  EXPECT_EQ(led.oracle_queries, 315u * 5u);
  EXPECT_EQ(led.estimator_calls, 1u);
}

TEST(AmplitudeEstimate, PerturbedModeAlternatesAndClamps) {
  Vec s = Vec::Zero(2);
  s(0) = 0.5;
  s(1) = std::sqrt(0.75);
  QueryLedger led;
  const EstimatorMode m = EstimatorMode::perturbed(0.01, 0);
  const double a1 = estimation::amplitude_estimate(s, 1, 0.05, m, led);
  const double a2 = estimation::amplitude_estimate(s, 1, 0.05, m, led);
  EXPECT_NEAR(a1, 0.51, 1e-15);
  EXPECT_NEAR(a2, 0.49, 1e-15);
  Vec t = Vec::Zero(1);
  t(0) = 1.0;
  EXPECT_LE(estimation::amplitude_estimate(t, 1, 0.05, m, led), 1.0);
}

TEST(AmplitudeEstimate, SampledModeIsSeededAndConsistent) {
  Vec s = Vec::Zero(2);
  s(0) = std::sqrt(0.3);
  s(1) = std::sqrt(0.7);
  QueryLedger l1, l2;
  const EstimatorMode m = EstimatorMode::sampled(200000, 42);
  const double a1 = estimation::amplitude_estimate(s, 1, 0.01, m, l1);
  const double a2 = estimation::amplitude_estimate(s, 1, 0.01, m, l2);
  EXPECT_EQ(a1, a2);
  EXPECT_NEAR(a1 * a1, 0.3, 5e-3);
  EXPECT_EQ(l1.be_applications, 200000u);
}

TEST(TraceEstimate, MatchesTraceOfBlockTimesRho) {
  std::mt19937_64 rng(11);
  const Mat a = random_hermitian(3, rng);
  const Mat rho = random_density(3, rng);
  QueryLedger led;
  const double v = estimation::trace_estimate(blockenc::dilate(a), blockenc::purify(rho), 1e-3, EstimatorMode::exact(), led);
  EXPECT_NEAR(v, (a * rho).trace().real(), 1e-12);
  EXPECT_THROW(estimation::trace_estimate(blockenc::dilate(a), blockenc::purify(rho), 0, EstimatorMode::exact(), led),
               ValidationError);
}

TEST(HadamardOverlap, RealPartOfInnerProduct) {
  Vec a(2), b(2);
  a << cplx(1, 0), cplx(0, 0);
  b << cplx(0.6, 0.3), cplx(0, std::sqrt(1 - 0.45));
  QueryLedger led;
  EXPECT_NEAR(estimation::hadamard_overlap(a, b, 1e-3, EstimatorMode::exact(), led), 0.6, 1e-15);
}

TEST(Chebyshev, ClenshawMatchesMonomialForm) {
  const ChebyshevPolynomial p = ChebyshevPolynomial::from_monomial({0.5, -1.0, 0.0, 2.0});
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) EXPECT_NEAR(p(x), 0.5 - x + 2 * x * x * x, 1e-14);
  EXPECT_EQ(p.degree(), 3u);
}

TEST(Chebyshev, ForQsvtHalvesUntilBounded) {
  const ChebyshevPolynomial p = ChebyshevPolynomial::from_monomial({0.0, 1.0});
  const ChebyshevPolynomial q = p.for_qsvt();
  EXPECT_EQ(q.qsvt_scale, 2.0);
  EXPECT_NEAR(q(0.8) * q.qsvt_scale, 0.8, 1e-15);
}

TEST(ExpPoly, ErrorWithinRequestedAccuracy) {
  for (double eps : {1e-2, 1e-5, 1e-9}) {
    const ChebyshevPolynomial p = exp_poly(0.3, eps);
    double worst = 0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = -1 + 2.0 * i / 4000;
      worst = std::max(worst, std::abs(p(x) - std::exp(-0.3 * (1 - x))));
    }
    EXPECT_LE(worst, eps);
  }
  EXPECT_THROW(exp_poly(-1, 1e-3), ValidationError);
  EXPECT_THROW(exp_poly(0.1, 0.7), ValidationError);
}

TEST(ExactExponential, MatchesMatrixExponential) {
  std::mt19937_64 rng(12);
  const Mat rho = random_density(3, rng);
  const Mat want = oc::expm(cplx(0, -0.7) * rho);
  EXPECT_LE((blockenc::exact_exponential(rho, 0.7) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DensityExponentiation, ConvergesToUnitaryWithinEps) {
  std::mt19937_64 rng(13);
  const Mat rho = random_density(2, rng);
  const double eps = 0.02;
  const DmeResult r = blockenc::density_exponentiation({rho, 1000}, 1.0, eps);
  EXPECT_EQ(r.copies_used, blockenc::dme_copy_count(1.0, eps));
  EXPECT_EQ(r.copies_used, 50u);
  EXPECT_LE(linalg::unitarity_defect(r.unitary), 1e-10);
  EXPECT_LE(oc::opnorm(r.unitary - oc::expm(cplx(0, -1.0) * rho)), 2 * eps);
}

TEST(DensityExponentiation, InsufficientCopiesIsAValidationError) {
  const Mat rho = Mat::Identity(2, 2) * 0.5;
  EXPECT_THROW(blockenc::density_exponentiation({rho, 3}, 1.0, 0.01), ValidationError);
}

TEST(LogUnitary, RecoversScaledDensity) {
  std::mt19937_64 rng(14);
  const Mat rho = random_density(3, rng);
  const BlockEncoding be = blockenc::log_unitary(oc::expm(cplx(0, -1.0) * rho), 1e-3);
  EXPECT_LE((be.block() - (std::numbers::pi / 4) * rho).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(be.queries, blockenc::log_unitary_charge(1e-3));
  EXPECT_EQ(blockenc::log_unitary_charge(1e-3), 20u);  // ceil(2 log2 1000)
}

TEST(LogUnitary, SeededNoiseHasNormDelta) {
  const Mat rho = Mat::Identity(2, 2) * 0.5;
  const Mat v = oc::expm(cplx(0, -1.0) * rho);
  const BlockEncoding a = blockenc::log_unitary(v, 1e-2, 5);
  const BlockEncoding b = blockenc::log_unitary(v, 1e-2, 5);
  EXPECT_EQ((a.unitary - b.unitary).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(oc::opnorm(a.block() - (std::numbers::pi / 4) * rho), 1e-2, 1e-12);
}
