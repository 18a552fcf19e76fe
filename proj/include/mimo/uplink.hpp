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

#ifndef MIMO_AGING_UPLINK_H
#define MIMO_AGING_UPLINK_H

#include <cstdint>
#include <string>
#include <vector>

#include "mimo/bounds.hpp"
#include "mimo/channel.hpp"
#include "mimo/predictor.hpp"

namespace mimo {

enum class DetectorKind { Mrc, Zf };
enum class CsiMode { Aged, Predicted };

/// MRC returns the CSI matrix itself; ZF returns csi (csi^H csi)^{-1}, so
/// detector^H * csi = I. ZF requires a nonsingular Gram matrix.
ComplexMatrix build_detector(const ComplexMatrix& csi, DetectorKind kind);

/// Per-user SINR of one realization when the receiver treats the aged CSI
/// as exact and lumps estimation error, aging innovation and thermal noise
/// into an uncorrelated noise floor.
std::vector<double> instantaneous_sinr_aged(const ComplexMatrix& detector,
                                            const ComplexMatrix& csi,
                                            const FadingProfile& profile,
                                            const AgingParams& aging,
                                            double user_power,
                                            double pilot_power);

/// Same with predicted CSI; the floor uses the per-user prediction residual
/// beta_i - alpha^2 theta_i.
std::vector<double> instantaneous_sinr_predicted(
    const ComplexMatrix& detector, const ComplexMatrix& predicted_csi,
    const std::vector<double>& thetas, const FadingProfile& profile,
    const AgingParams& aging, double user_power);

/// Monte Carlo estimate of the per-user achievable rates.
struct RateReport {
  std::vector<double> per_user_rate;  // bits/symbol
  std::vector<double> std_err;
  double sum_rate = 0.0;          // overhead_factor * sum of per-user rates
  double sum_rate_std_err = 0.0;  // from per-trial sums
  double overhead_factor = 1.0;
  long trials = 0;
  CsiMode csi_mode = CsiMode::Aged;
  int pred_order = 0;
};

/// Optional per-trial dump (trials x K, row-major) for diagnostics.
struct MonteCarloDetail {
  std::vector<double> per_trial_rates;
};

/// Averages log2(1 + SINR_k) over fresh small-scale realizations; trial t
/// draws from stream (seed, t), so results are reproducible for any thread
/// count. Predicted mode evolves the channel through pred_order + 1 training
/// instants and predicts from the stacked observations.
RateReport monte_carlo_rate(const SystemConfig& config,
                            const FadingProfile& profile, DetectorKind kind,
                            CsiMode csi_mode, long trials, std::uint64_t seed,
                            int threads = 1,
                            MonteCarloDetail* detail = nullptr);

/// Training-overhead-scaled sum rate: (T - tau)/T * sum_k rate_k
/// (factor 1 when no frame length is given).
double sum_rate(const RateReport& report, std::optional<int> frame_len,
                int training_len);

/// CSV dump: a '#'-prefixed config line, then "user,rate,std_err" rows.
void write_rate_report_csv(const RateReport& report, const SystemConfig& config,
                           const std::string& path);

}  // namespace mimo

#endif
