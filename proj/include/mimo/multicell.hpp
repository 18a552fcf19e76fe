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

#ifndef MIMO_AGING_MULTICELL_H
#define MIMO_AGING_MULTICELL_H

#include <vector>

namespace mimo {

/// Multi-cell uplink under power scaling p_u = E_u / M^gamma, evaluated in
/// closed form. The symmetric (beta_same, beta_cross) parameterization is
/// the default; a full per-(cell, user) beta table for the serving base
/// station can be supplied instead (row 0 = serving cell).
struct MultiCellConfig {
  int num_cells = 7;   // C
  int num_users = 10;  // K
  int training_len = 10;
  double beta_same = 1.0;
  double beta_cross = 0.32;
  double scaling_exponent = 0.5;  // gamma
  double power_budget = 1.0;      // E_u
  double alpha = 1.0;
  int pred_order = 0;
  std::vector<std::vector<double>> beta_table;  // optional, C x K

  void validate() const;
  double beta_own(int k) const;
  /// sum over every (cell, user) pair except (serving cell, k)
  double beta_sum_except(int k) const;
  /// sum over other cells of beta^2 for the pilot-sharing user k
  double contamination_sq(int k) const;
};

/// Finite-M value of the asymptotic rate of user k with aged CSI.
double multicell_rate_aged(const MultiCellConfig& config, double num_antennas,
                           int k = 0);

/// Same with predicted CSI of order pred_order.
double multicell_rate_predicted(const MultiCellConfig& config,
                                double num_antennas, int k = 0);

enum class MultiCellRegime { GammaHalf, GammaSubHalf };
enum class MultiCellCsi { Aged, Predicted };

/// Large-M limit of the rate for the given scaling regime. The sub-half
/// regime needs at least two cells; with one cell the interference-limited
/// SIR is unbounded and the call is rejected.
double multicell_limit(const MultiCellConfig& config, MultiCellRegime regime,
                       MultiCellCsi mode, int k = 0);

}  // namespace mimo

#endif
