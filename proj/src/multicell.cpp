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

#include "mimo/multicell.hpp"

#include <cmath>
#include <stdexcept>

namespace mimo {

namespace {

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

double geometric_gain(double alpha, int pred_order) {
  double sum = 0.0;
  for (int j = 0; j <= pred_order; ++j) sum += std::pow(alpha, 2 * j);
  return sum;
}

}  // namespace

void MultiCellConfig::validate() const {
  if (num_cells < 1 || num_users < 1) {
    throw std::invalid_argument("MultiCellConfig: num_cells and num_users must be >= 1");
  }
  if (beta_table.empty()) {
    if (!(beta_same > 0.0) || !(beta_cross > 0.0)) {
      throw std::invalid_argument("MultiCellConfig: beta_same and beta_cross must be > 0");
    }
  } else {
    if (static_cast<int>(beta_table.size()) != num_cells) {
      throw std::invalid_argument("MultiCellConfig: beta_table must have num_cells rows");
    }
    for (const auto& row : beta_table) {
      if (static_cast<int>(row.size()) != num_users) {
        throw std::invalid_argument("MultiCellConfig: beta_table rows must have num_users entries");
      }
      for (double b : row) {
        if (!(b > 0.0)) {
          throw std::invalid_argument("MultiCellConfig: beta_table entries must be > 0");
        }
      }
    }
  }
  if (!(scaling_exponent > 0.0)) {
    throw std::invalid_argument("MultiCellConfig: scaling_exponent must be > 0");
  }
  if (!(power_budget > 0.0)) {
    throw std::invalid_argument("MultiCellConfig: power_budget must be > 0");
  }
  if (pred_order < 0) {
    throw std::invalid_argument("MultiCellConfig: pred_order must be >= 0");
  }
}

double MultiCellConfig::beta_own(int k) const {
  if (beta_table.empty()) return beta_same;
  return beta_table[0][static_cast<std::size_t>(k)];
}

double MultiCellConfig::beta_sum_except(int k) const {
  if (beta_table.empty()) {
    return (num_users - 1) * beta_same +
           static_cast<double>(num_cells - 1) * num_users * beta_cross;
  }
  double sum = 0.0;
  for (int c = 0; c < num_cells; ++c) {
    for (int i = 0; i < num_users; ++i) {
      if (c == 0 && i == k) continue;
      sum += beta_table[c][i];
    }
  }
  return sum;
}

double MultiCellConfig::contamination_sq(int k) const {
  if (beta_table.empty()) {
    return (num_cells - 1) * beta_cross * beta_cross;
  }
  double sum = 0.0;
  for (int c = 1; c < num_cells; ++c) {
    const double b = beta_table[c][static_cast<std::size_t>(k)];
    sum += b * b;
  }
  return sum;
}

double multicell_rate_aged(const MultiCellConfig& config, double num_antennas,
                           int k) {
  config.validate();
  const double a2 = config.alpha * config.alpha;
  const double eu = config.power_budget;
  const double tau = config.training_len;
  const double own = config.beta_own(k);
  const double m_gamma = std::pow(num_antennas, config.scaling_exponent);
  const double m_2g1 = std::pow(num_antennas, 2.0 * config.scaling_exponent - 1.0);

  const double numer = a2 * tau * eu * eu * own * own / m_2g1;
  const double denom = own * eu / m_gamma + 1.0 +
                       config.beta_sum_except(k) * eu / m_gamma +
                       a2 * tau * eu * eu * config.contamination_sq(k) / m_2g1;
  return log2_1p(numer / denom);
}

double multicell_rate_predicted(const MultiCellConfig& config,
                                double num_antennas, int k) {
  config.validate();
  const double a2 = config.alpha * config.alpha;
  const double gain = geometric_gain(config.alpha, config.pred_order);
  const double edge = std::pow(config.alpha, 2 * config.pred_order);
  const double eu = config.power_budget;
  const double tau = config.training_len;
  const double own = config.beta_own(k);
  const double m_gamma = std::pow(num_antennas, config.scaling_exponent);
  const double m_2g1 = std::pow(num_antennas, 2.0 * config.scaling_exponent - 1.0);

  const double numer = a2 * gain * tau * eu * eu * own * own / m_2g1;
  const double denom =
      own * eu / m_gamma + 1.0 + config.beta_sum_except(k) * eu / m_gamma +
      a2 * gain * edge * tau * eu * eu * config.contamination_sq(k) / m_2g1;
  return log2_1p(numer / denom);
}

double multicell_limit(const MultiCellConfig& config, MultiCellRegime regime,
                       MultiCellCsi mode, int k) {
  config.validate();
  const double a2 = config.alpha * config.alpha;
  const bool predicted = mode == MultiCellCsi::Predicted;
  const double gain = predicted ? geometric_gain(config.alpha, config.pred_order) : 1.0;
  const double edge = predicted ? std::pow(config.alpha, 2 * config.pred_order) : 1.0;
  const double own = config.beta_own(k);
  const double contamination = config.contamination_sq(k);

  if (regime == MultiCellRegime::GammaHalf) {
    const double tau_eu2 = config.training_len * config.power_budget * config.power_budget;
    const double numer = a2 * gain * tau_eu2 * own * own;
    const double denom = 1.0 + a2 * gain * edge * tau_eu2 * contamination;
    return log2_1p(numer / denom);
  }

  // gamma < 1/2: interference-limited SIR floor from pilot contamination.
  if (config.num_cells < 2) {
    throw std::invalid_argument(
        "multicell_limit: sub-half regime requires at least two cells (SIR is unbounded otherwise)");
  }
  return log2_1p(own * own / (edge * contamination));
}

}  // namespace mimo
