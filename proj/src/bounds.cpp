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

#include "mimo/bounds.hpp"

#include <cmath>

#include "mimo/bessel.hpp"

namespace mimo {

namespace {

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

double alpha_of(const SystemConfig& config) {
  return jakes_alpha(config.norm_doppler).alpha;
}

void check_user_index(const FadingProfile& profile, int k, const char* who) {
  if (k < 0 || k >= profile.num_users()) {
    throw std::invalid_argument(std::string(who) + ": user index out of range");
  }
}

}  // namespace

void SystemConfig::validate(bool zero_forcing) const {
  if (num_antennas < 1 || num_users < 1) {
    throw std::invalid_argument("SystemConfig: num_antennas and num_users must be >= 1");
  }
  if (training_len < num_users) {
    throw std::invalid_argument("SystemConfig: training_len must be >= num_users");
  }
  if (!(user_power > 0.0) || !std::isfinite(user_power)) {
    throw std::invalid_argument("SystemConfig: user_power must be finite and > 0");
  }
  if (!(norm_doppler >= 0.0)) {
    throw std::invalid_argument("SystemConfig: norm_doppler must be >= 0");
  }
  if (pred_order < 0) {
    throw std::invalid_argument("SystemConfig: pred_order must be >= 0");
  }
  if (zero_forcing && num_antennas < num_users) {
    throw std::invalid_argument("SystemConfig: ZF requires num_antennas >= num_users");
  }
  if (frame_len && *frame_len <= training_len) {
    throw std::invalid_argument("SystemConfig: frame_len must exceed training_len");
  }
}

double mrc_bound_aged(const SystemConfig& config, const FadingProfile& profile,
                      int k) {
  check_user_index(profile, k, "mrc_bound_aged");
  if (config.num_antennas < 2) {
    throw std::invalid_argument("mrc_bound_aged: requires num_antennas >= 2");
  }
  const double alpha = alpha_of(config);
  const double a2 = alpha * alpha;
  const double pu = config.user_power;
  const double tau = config.training_len;
  const double beta_k = profile.betas[k];

  double interferer_sum = 0.0;
  for (int i = 0; i < profile.num_users(); ++i) {
    if (i != k) interferer_sum += profile.betas[i];
  }
  const double aging_penalty = (1.0 - a2) * tau * pu * pu * beta_k * beta_k;
  const double denom = pu * (1.0 + tau * pu * beta_k) * interferer_sum +
                       (tau + 1.0) * pu * beta_k + 1.0 + aging_penalty;
  const double numer =
      a2 * tau * pu * pu * (config.num_antennas - 1.0) * beta_k * beta_k;
  return log2_1p(numer / denom);
}

double zf_bound_aged(const SystemConfig& config, const FadingProfile& profile,
                     int k) {
  check_user_index(profile, k, "zf_bound_aged");
  if (config.num_antennas <= config.num_users) {
    throw std::invalid_argument("zf_bound_aged: requires num_antennas > num_users");
  }
  const double alpha = alpha_of(config);
  const double a2 = alpha * alpha;
  const double pu = config.user_power;
  const double tau = config.training_len;
  const double beta_k = profile.betas[k];

  double residual_sum = 0.0;   // sum_i p_u beta_i / (tau p_u beta_i + 1)
  double estimated_sum = 0.0;  // sum_i tau p_u^2 beta_i^2 / (1 + tau p_u beta_i)
  for (double beta_i : profile.betas) {
    residual_sum += pu * beta_i / (tau * pu * beta_i + 1.0);
    estimated_sum += tau * pu * pu * beta_i * beta_i / (1.0 + tau * pu * beta_i);
  }
  const double aging_penalty =
      (1.0 - a2) * (1.0 + tau * pu * beta_k) * estimated_sum;
  const double denom = (1.0 + tau * pu * beta_k) * residual_sum +
                       tau * pu * beta_k + 1.0 + aging_penalty;
  const double numer = a2 * tau * pu * pu *
                       (config.num_antennas - config.num_users) * beta_k * beta_k;
  return log2_1p(numer / denom);
}

double mrc_bound_predicted(const SystemConfig& config,
                           const FadingProfile& profile,
                           const std::vector<double>& thetas, int k) {
  check_user_index(profile, k, "mrc_bound_predicted");
  if (config.num_antennas < 2) {
    throw std::invalid_argument("mrc_bound_predicted: requires num_antennas >= 2");
  }
  if (thetas.size() != profile.betas.size()) {
    throw std::invalid_argument("mrc_bound_predicted: thetas/profile size mismatch");
  }
  const double alpha = alpha_of(config);
  const double a2 = alpha * alpha;
  const double pu = config.user_power;

  double predicted_interference = 0.0;  // sum_{i != k} alpha^2 theta_i
  double error_floor = 0.0;             // sum_i (beta_i - alpha^2 theta_i)
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (static_cast<int>(i) != k) predicted_interference += a2 * thetas[i];
    error_floor += profile.betas[i] - a2 * thetas[i];
  }
  const double numer = pu * (config.num_antennas - 1.0) * a2 * thetas[k];
  const double denom = pu * predicted_interference + pu * error_floor + 1.0;
  return log2_1p(numer / denom);
}

double zf_bound_predicted(const SystemConfig& config,
                          const FadingProfile& profile,
                          const std::vector<double>& thetas, int k) {
  check_user_index(profile, k, "zf_bound_predicted");
  if (config.num_antennas <= config.num_users) {
    throw std::invalid_argument("zf_bound_predicted: requires num_antennas > num_users");
  }
  if (thetas.size() != profile.betas.size()) {
    throw std::invalid_argument("zf_bound_predicted: thetas/profile size mismatch");
  }
  const double alpha = alpha_of(config);
  const double a2 = alpha * alpha;
  const double pu = config.user_power;

  double error_floor = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    error_floor += profile.betas[i] - a2 * thetas[i];
  }
  const double numer =
      pu * (config.num_antennas - config.num_users) * a2 * thetas[k];
  const double denom = pu * error_floor + 1.0;
  return log2_1p(numer / denom);
}

double asymptotic_rate(double gamma, double num_antennas, double power_budget,
                       int training_len, double alpha, double beta_k,
                       int pred_order, bool predicted) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("asymptotic_rate: gamma must be > 0");
  }
  double gain_factor = 1.0;
  if (predicted) {
    gain_factor = 0.0;
    for (int j = 0; j <= pred_order; ++j) {
      gain_factor += std::pow(alpha, 2 * j);
    }
  }
  const double scale = std::pow(num_antennas, 2.0 * gamma - 1.0);
  return log2_1p(alpha * alpha * gain_factor * training_len * power_budget *
                 power_budget * beta_k * beta_k / scale);
}

double scaling_limit_aged(double alpha, int training_len, double power_budget,
                          double beta_k) {
  return log2_1p(alpha * alpha * training_len * power_budget * power_budget *
                 beta_k * beta_k);
}

double scaling_limit_predicted(double alpha, int training_len,
                               double power_budget, double beta_k,
                               int pred_order) {
  if (pred_order < 0) {
    throw std::invalid_argument("scaling_limit_predicted: pred_order must be >= 0");
  }
  double gain_factor = 0.0;
  for (int j = 0; j <= pred_order; ++j) {
    gain_factor += std::pow(alpha, 2 * j);
  }
  return log2_1p(alpha * alpha * gain_factor * training_len * power_budget *
                 power_budget * beta_k * beta_k);
}

double scaling_limit_predicted_inf(double alpha, int training_len,
                                   double power_budget, double beta_k) {
  if (!(std::fabs(alpha) < 1.0)) {
    throw std::invalid_argument(
        "scaling_limit_predicted_inf: requires |alpha| < 1 (geometric series diverges)");
  }
  const double gain_factor = 1.0 / (1.0 - alpha * alpha);
  return log2_1p(alpha * alpha * gain_factor * training_len * power_budget *
                 power_budget * beta_k * beta_k);
}

}  // namespace mimo
