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

#ifndef MIMO_AGING_DOWNLINK_H
#define MIMO_AGING_DOWNLINK_H

#include <cstdint>
#include <vector>

#include "mimo/linalg.hpp"

namespace mimo {

/// Single-cell downlink with MRT precoding on aged CSI. bs_scaling_exponent
/// is the exponent on M in bs_power = bs_power_budget / M^exponent (named
/// apart from the large-scale fading betas).
struct DownlinkConfig {
  int num_antennas = 64;   // M
  int num_users = 10;      // K
  double bs_power = 10.0;  // p_b, linear
  double pilot_power = 10.0;
  double alpha = 1.0;
  std::vector<double> betas;
  double bs_power_budget = 10.0;     // E_b
  double bs_scaling_exponent = 0.5;  // exponent on M for the BS power

  /// Per-entry variance of the MMSE estimate for user k.
  double sigma2(int k) const;
  void validate() const;
};

/// MRT normalization so that the long-term transmit power is one:
/// lambda = sqrt(1 / (M alpha^2 sum_k sigma_k^2)).
double mrt_lambda(const DownlinkConfig& config);

/// Closed-form achievable downlink rate of user k:
/// log2(1 + alpha^2 M sigma_k^4 / ((beta_k + 1/p_b) sum_i sigma_i^2)).
double downlink_rate_closed_form(const DownlinkConfig& config, int k);

/// Large-M limit of the downlink rate when the BS power scales as
/// E_b / M^exponent and the pilot power as tau E_u / sqrt(M).
double downlink_scaling_limit(double bs_power_budget, double power_budget,
                              int training_len, double alpha,
                              const std::vector<double>& betas,
                              double bs_scaling_exponent, double num_antennas,
                              int k);

/// Monte Carlo estimates of the three moments behind the downlink rate for
/// user k: the mean effective gain g_k^T conj(csi_k), its variance, and the
/// per-interferer second moments |g_k^T conj(csi_i)|^2. Batch-resolved
/// copies support assembling derived statistics with error bars.
struct DownlinkMoments {
  double mean_gain = 0.0;  // real part; the imaginary part averages to zero
  double mean_gain_se = 0.0;
  double gain_variance = 0.0;
  double gain_variance_se = 0.0;
  std::vector<double> interference;
  std::vector<double> interference_se;
  long trials = 0;
  std::vector<std::complex<double>> batch_mean;
  std::vector<double> batch_second_moment;
  std::vector<std::vector<double>> batch_interference;  // [batch][i]
};

DownlinkMoments downlink_moment_oracle(const DownlinkConfig& config,
                                       long trials, std::uint64_t seed,
                                       int user_index = 0, int threads = 1,
                                       int batches = 100);

}  // namespace mimo

#endif
