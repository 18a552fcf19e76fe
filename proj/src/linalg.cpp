// SPDX-License-Identifier: Apache-2.0
//
// mimo-aging: achievable-rate and power-scaling simulator for massive MIMO
// under channel aging, channel prediction and pilot-based MMSE estimation.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mimo/linalg.hpp"

#include <cmath>

namespace mimo {

ComplexMatrix sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                                      double variance, Rng& rng) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("sample_complex_gaussian: negative dimension");
  }
  if (variance < 0.0 || !std::isfinite(variance)) {
    throw std::invalid_argument("sample_complex_gaussian: variance must be finite and >= 0");
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      out(i, j) = rng.complex_gauss(variance);
    }
  }
  return out;
}

namespace {

template <typename Matrix>
Matrix cholesky_solve(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  if (a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw not_positive_definite_error(std::string(who) +
                                      ": Cholesky factorization failed, matrix is not positive definite");
  }
  return llt.solve(b);
}

}  // namespace

ComplexMatrix hermitian_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  return cholesky_solve(a, b, "hermitian_solve");
}

RealMatrix hermitian_solve(const RealMatrix& a, const RealMatrix& b) {
  return cholesky_solve(a, b, "hermitian_solve");
}

double inv_norm_expectation(int m, double sigma2) {
  if (m < 2) {
    throw std::invalid_argument("inv_norm_expectation: requires m >= 2 (diverges otherwise)");
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("inv_norm_expectation: sigma2 must be finite and > 0");
  }
  return 1.0 / ((m - 1) * sigma2);
}

double wishart_inv_diag_expectation(int m, int k, double sigma2) {
  if (k < 1 || m <= k) {
    throw std::invalid_argument("wishart_inv_diag_expectation: requires m > k >= 1");
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("wishart_inv_diag_expectation: sigma2 must be finite and > 0");
  }
  return 1.0 / ((m - k) * sigma2);
}

}  // namespace mimo
