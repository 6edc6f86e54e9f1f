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

#ifndef QSVT_FORGE_SPARSE_MATRIX_HPP
#define QSVT_FORGE_SPARSE_MATRIX_HPP

#include <string>

#include "qsvt_forge/linalg.hpp"

namespace qsvt_forge {

/// Hermitian matrix with a row-sparsity bound. Storage is dense: the
/// simulator is exact at desk scale and never needs sparse kernels.
class SparseHermitianMatrix {
 public:
  SparseHermitianMatrix() = default;

  /// `sparsity` = 0 means "compute from the nonzero pattern".
  explicit SparseHermitianMatrix(Mat dense, std::size_t sparsity = 0) : a_(std::move(dense)) {
    require(a_.rows() == a_.cols(), "SparseHermitianMatrix: matrix must be square");
    require(a_.rows() > 0, "SparseHermitianMatrix: empty matrix");
    require(linalg::is_hermitian(a_, 1e-12), "SparseHermitianMatrix: matrix is not Hermitian");
    a_ = 0.5 * (a_ + a_.adjoint());
    const std::size_t measured = row_sparsity(a_);
    s_ = sparsity == 0 ? std::max<std::size_t>(measured, 1) : sparsity;
    require(measured <= s_, "SparseHermitianMatrix: a row has more than s nonzeros");
  }

  static std::size_t row_sparsity(const Mat &m) {
    std::size_t best = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::size_t c = 0;
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != cplx(0.0)) ++c;
      best = std::max(best, c);
    }
    return best;
  }

  std::size_t dim() const { return std::size_t(a_.rows()); }
  std::size_t sparsity() const { return s_; }
  cplx entry(std::size_t i, std::size_t j) const { return a_(Eigen::Index(i), Eigen::Index(j)); }
  const Mat &dense() const { return a_; }
  double norm() const { return linalg::op_norm(a_); }

 private:
  Mat a_;
  std::size_t s_ = 1;
};

}  // namespace qsvt_forge

#endif
