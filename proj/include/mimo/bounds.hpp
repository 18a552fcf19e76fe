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

#ifndef MIMO_AGING_BOUNDS_H
#define MIMO_AGING_BOUNDS_H

#include <optional>
#include <vector>

#include "mimo/channel.hpp"

namespace mimo {

/// Scenario knobs for the single-cell uplink. Powers are linear; the pilot
/// power is always training_len * user_power and never stored separately.
struct SystemConfig {
  int num_antennas = 128;      // M
  int num_users = 10;          // K
  int training_len = 10;       // pilot sequence length, >= num_users
  double user_power = 1.0;     // per-user transmit power p_u
  double norm_doppler = 0.1;   // f_D T_s
  int pred_order = 0;
  double scaling_exponent = 0.5;  // gamma in p_u = E_u / M^gamma
  double power_budget = 1.0;      // E_u
  std::optional<int> frame_len;   // T; empty = no training overhead applied

  double pilot_power() const { return training_len * user_power; }
  void validate(bool zero_forcing = false) const;
};

/// Closed-form lower bound on the uplink rate of user k for an MRC receiver
/// acting on aged CSI. Requires num_antennas >= 2.
double mrc_bound_aged(const SystemConfig& config, const FadingProfile& profile,
                      int k);

/// Same bound for a ZF receiver. Requires num_antennas > num_users.
double zf_bound_aged(const SystemConfig& config, const FadingProfile& profile,
                     int k);

/// Closed-form lower bound with predicted CSI; thetas come from
/// wiener_coefficients at pilot power training_len * user_power.
double mrc_bound_predicted(const SystemConfig& config,
                           const FadingProfile& profile,
                           const std::vector<double>& thetas, int k);
double zf_bound_predicted(const SystemConfig& config,
                          const FadingProfile& profile,
                          const std::vector<double>& thetas, int k);

/// Finite-M value of the asymptotic rate expression under the power scaling
/// p_u = E_u / M^gamma (identical for MRC and ZF):
/// log2(1 + alpha^2 [sum_{j=0..p} alpha^2j] tau E_u^2 beta_k^2 / M^(2 gamma - 1)),
/// with the bracket present only for predicted CSI.
double asymptotic_rate(double gamma, double num_antennas, double power_budget,
                       int training_len, double alpha, double beta_k,
                       int pred_order, bool predicted);

/// Large-M limits at the critical scaling p_u = E_u / sqrt(M).
double scaling_limit_aged(double alpha, int training_len, double power_budget,
                          double beta_k);
double scaling_limit_predicted(double alpha, int training_len,
                               double power_budget, double beta_k,
                               int pred_order);
/// Infinite-order predictor limit; requires |alpha| < 1.
double scaling_limit_predicted_inf(double alpha, int training_len,
                                   double power_budget, double beta_k);

}  // namespace mimo

#endif
