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

#ifndef MIMO_AGING_CHANNEL_H
#define MIMO_AGING_CHANNEL_H

#include <string>
#include <vector>

#include "mimo/linalg.hpp"
#include "mimo/rng.hpp"

namespace mimo {

/// Circular cell with a guard ring around the base station: users fall
/// between guard_m and radius_m, path loss follows (r / guard_m)^(-exponent)
/// and shadowing is log-normal with shadow_std_db standard deviation.
struct CellGeometry {
  double radius_m = 1000.0;
  double guard_m = 100.0;
  double pathloss_exp = 3.8;
  double shadow_std_db = 8.0;

  void validate() const;
};

/// Per-user large-scale fading: beta[k] = shadow[k] / (distance[k]/guard)^exp.
struct FadingProfile {
  std::vector<double> betas;
  std::vector<double> distances_m;
  std::vector<double> shadow_draws;

  int num_users() const { return static_cast<int>(betas.size()); }

  /// Homogeneous profile with the given betas (distance pinned to the guard
  /// radius so the large-scale relation still holds).
  static FadingProfile from_betas(const std::vector<double>& betas,
                                  double guard_m = 100.0);

  /// Plain-text tabular persistence (one row per user: distance, shadow,
  /// beta), so a user drop can be pinned across runs.
  void save(const std::string& path) const;
  static FadingProfile load(const std::string& path);
};

struct AgingParams {
  double alpha = 1.0;
  double fd_ts = 0.0;  // normalized Doppler, f_D * T_s
};

/// Temporal correlation under the Jakes spectrum: alpha = J0(2 pi fd_ts).
AgingParams jakes_alpha(double fd_ts);

/// Drops num_users users area-uniformly on the cell annulus and draws
/// log-normal shadowing; consumes one uniform + one gaussian per user.
FadingProfile drop_users(int num_users, const CellGeometry& geometry, Rng& rng);

/// M x K channel matrix; column k is i.i.d. CN(0, beta_k).
ComplexMatrix generate_channel(const FadingProfile& profile, int num_antennas,
                               Rng& rng);

/// Per-entry variance of the MMSE channel estimate:
/// sigma^2 = p_p beta^2 / (1 + p_p beta).
double mmse_estimate_variance(double beta, double pilot_power);

/// One coherence snapshot: true channel, post-correlation pilot observation,
/// MMSE estimate and estimation error (true == estimate + error exactly).
struct ChannelRealization {
  ComplexMatrix true_channel;
  ComplexMatrix observation;
  ComplexMatrix estimate;
  ComplexMatrix est_error;
};

/// Pilot observation y_k = g_k + b_k / sqrt(p_p) with b_k i.i.d. CN(0,1),
/// followed by the per-user MMSE shrinkage beta_k / (beta_k + 1/p_p).
ChannelRealization observe_and_estimate(const ComplexMatrix& true_channel,
                                        const FadingProfile& profile,
                                        double pilot_power, Rng& rng);

/// One AR(1) step: alpha * current + innovation with per-entry variance
/// (1 - alpha^2) beta_k, preserving the stationary marginal.
ComplexMatrix age_channel(const ComplexMatrix& current,
                          const AgingParams& aging,
                          const FadingProfile& profile, Rng& rng);

/// CSI the receiver acts on one step after estimation: alpha * estimate.
ComplexMatrix aged_csi(const ComplexMatrix& estimate, const AgingParams& aging);

}  // namespace mimo

#endif
