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

#include "mimo/predictor.hpp"

#include <cmath>

namespace mimo {

PredictorState wiener_coefficients(int order, double alpha, double beta,
                                   double pilot_power) {
  if (order < 0) {
    throw std::invalid_argument("wiener_coefficients: order must be >= 0");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("wiener_coefficients: beta must be finite and > 0");
  }
  if (!(pilot_power > 0.0) || !std::isfinite(pilot_power)) {
    throw std::invalid_argument("wiener_coefficients: pilot_power must be finite and > 0");
  }
  const int n = order + 1;
  RealVector lag_corr(n);  // d_j = alpha^j
  for (int j = 0; j < n; ++j) {
    lag_corr(j) = std::pow(alpha, j);
  }
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = beta * std::pow(alpha, std::abs(i - j));
    }
    a(i, i) += 1.0 / pilot_power;
  }

  RealMatrix x;
  try {
    x = hermitian_solve(a, RealMatrix(lag_corr));
  } catch (const not_positive_definite_error&) {
    throw std::runtime_error(
        "wiener_coefficients: normal equations are singular (cannot occur for finite pilot power)");
  }

  PredictorState state;
  state.order = order;
  state.weights = alpha * beta * x.col(0);
  state.theta = beta * beta * lag_corr.dot(x.col(0));
  state.mse_per_entry = beta - alpha * alpha * state.theta;
  return state;
}

ComplexMatrix predict_channel(const std::vector<ComplexMatrix>& history,
                              const std::vector<PredictorState>& states) {
  if (history.empty()) {
    throw std::invalid_argument("predict_channel: empty observation history");
  }
  const int num_users = static_cast<int>(states.size());
  const Eigen::Index rows = history.front().rows();
  for (const auto& obs : history) {
    if (obs.rows() != rows || obs.cols() != num_users) {
      throw std::invalid_argument("predict_channel: inconsistent history dimensions");
    }
  }
  for (const auto& state : states) {
    if (state.weights.size() != static_cast<Eigen::Index>(history.size()) ||
        state.order + 1 != static_cast<int>(history.size())) {
      throw std::invalid_argument(
          "predict_channel: history length must equal predictor order + 1");
    }
  }
  ComplexMatrix predicted = ComplexMatrix::Zero(rows, num_users);
  for (int k = 0; k < num_users; ++k) {
    for (std::size_t lag = 0; lag < history.size(); ++lag) {
      predicted.col(k) += states[k].weights(static_cast<Eigen::Index>(lag)) *
                          history[lag].col(k);
    }
  }
  return predicted;
}

double prediction_mse(const PredictorState& state, int num_antennas) {
  return num_antennas * state.mse_per_entry;
}

}  // namespace mimo
