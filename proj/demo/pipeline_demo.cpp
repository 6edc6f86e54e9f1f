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

// Walks through the three pipelines on small seeded instances.

#include <cstdio>

#include "qsvt_forge/qsvt_forge.hpp"

using namespace qsvt_forge;

int main() {
  gen::InstanceSpec spec;
  spec.dim = 16;
  spec.sparsity = 3;
  spec.gap = 0.1;
  spec.seed = 1;
  const gen::Instance inst = gen::generate_instance(spec);

  power::PowerConfig cfg{SparseHermitianMatrix(inst.matrix, spec.sparsity)};
  cfg.k = 20;
  const power::PowerRunRecord rec = power::run_power_method(cfg);
  std::printf("power method  k=%zu  lambda_est=%.6f  planted lambda_max=%.6f  kappa=%.3f  queries=%llu\n", rec.k,
              rec.lambda_est, inst.spectrum(0), rec.kappa, (unsigned long long)rec.ledger.oracle_queries);

  const grad::TensorPolynomial prob = gen::tensor_problem(2, 2, 2, 7);
  grad::GdConfigV2 gcfg{prob, 3, 1.0 / 8};
  gcfg.eps = 1e-2;
  const grad::GdTrajectory tr = grad::run_gd_v2(gcfg);
  for (const auto &s : tr.steps)
    std::printf("descent  t=%zu  f=%.6f  success=%.4f\n", s.t, s.f, s.success_prob);

  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 0.5;
  a(1, 1) = 0.25;
  const matinv::NewtonResult nr = matinv::newton_inverse({a, 1.0, 8});
  std::printf("newton  residual after %zu steps: %.3e\n", nr.residual.size() - 1, nr.residual.back());
  return 0;
}
