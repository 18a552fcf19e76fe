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

#ifndef MIMO_AGING_PREDICTOR_H
#define MIMO_AGING_PREDICTOR_H

#include <vector>

#include "mimo/linalg.hpp"

namespace mimo {

/// State of the order-p Wiener channel predictor for one user.
///
/// The optimal predictor acts identically on every antenna, so the filter
/// collapses to p+1 real per-lag coefficients; `theta` is the per-entry
/// second moment of the predictable channel part (the predicted column has
/// per-entry variance alpha^2 * theta) and mse_per_entry = beta - alpha^2 * theta.
struct PredictorState {
  int order = 0;
  RealVector weights;  // one coefficient per lag, most recent first
  double theta = 0.0;
  double mse_per_entry = 0.0;
};

/// Solves the (p+1)-dimensional Wiener normal equations
///   (beta * C + I / p_p) x = d,   C_ij = alpha^|i-j|,  d_j = alpha^j,
/// giving weights = alpha * beta * x and theta = beta^2 * d.x.
PredictorState wiener_coefficients(int order, double alpha, double beta,
                                   double pilot_power);

/// Applies per-user predictors to a history of p+1 pilot observations
/// (lags 0..p, most recent first); column k of the result is the predicted
/// next channel of user k.
ComplexMatrix predict_channel(const std::vector<ComplexMatrix>& history,
                              const std::vector<PredictorState>& states);

/// Total mean-square prediction error over num_antennas entries.
double prediction_mse(const PredictorState& state, int num_antennas);

}  // namespace mimo

#endif
