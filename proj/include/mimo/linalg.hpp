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

#ifndef MIMO_AGING_LINALG_H
#define MIMO_AGING_LINALG_H

#include <Eigen/Dense>
#include <stdexcept>

#include "mimo/rng.hpp"

namespace mimo {

// All matrix state is double precision, column-major.
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when a Cholesky factorization meets a matrix that is not
/// (numerically) Hermitian positive definite.
class not_positive_definite_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// rows x cols matrix of i.i.d. CN(0, variance) entries.
ComplexMatrix sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                                      double variance, Rng& rng);

/// Solves A X = B for Hermitian positive definite A via Cholesky.
ComplexMatrix hermitian_solve(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix hermitian_solve(const RealMatrix& a, const RealMatrix& b);

/// E{ 1 / ||g||^2 } for an m-vector g with i.i.d. CN(0, sigma2) entries:
/// 1 / ((m - 1) sigma2). Requires m >= 2; the expectation diverges at m = 1.
double inv_norm_expectation(int m, double sigma2);

/// E{ [(G^H G)^{-1}]_kk } for an m x k matrix G whose k-th column has
/// i.i.d. CN(0, sigma2) entries: 1 / ((m - k) sigma2). Requires m > k >= 1.
double wishart_inv_diag_expectation(int m, int k, double sigma2);

}  // namespace mimo

#endif
