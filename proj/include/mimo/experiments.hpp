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

#ifndef MIMO_AGING_EXPERIMENTS_H
#define MIMO_AGING_EXPERIMENTS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimo/downlink.hpp"
#include "mimo/multicell.hpp"
#include "mimo/uplink.hpp"

namespace mimo {

enum class ScenarioKind { Uplink, Downlink, Multicell };

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct UplinkScenario {
  int num_antennas = 128;  // M
  int num_users = 10;      // K
  int training_len = 10;   // tau
  double p_u_db = 10.0;
  double fd_ts = 0.1;
  std::vector<int> pred_orders;  // predicted-CSI curves; empty = aged only
  std::vector<DetectorKind> detectors = {DetectorKind::Mrc, DetectorKind::Zf};
  bool family_mc = true;
  bool family_bound = true;
  bool family_limit = false;
  bool current_csi = false;  // bound curves at alpha = 1
  bool perfect_csi = false;  // bound curves at alpha = 1 with no error floor
  std::vector<double> betas;  // explicit large-scale profile; overrides drop
  double e_u_db = 15.0;
  bool scale_power = false;  // p_u = E_u / M^gamma
  double gamma = 0.5;
  std::optional<int> frame_len;
};

struct DownlinkScenario {
  int num_antennas = 64;
  int num_users = 10;
  int training_len = 10;
  double p_p_db = 10.0;
  double p_b_db = 10.0;
  double fd_ts = 0.1;
  double e_b_db = 10.0;
  double e_u_db = 3.0;
  double beta_exp = 0.5;
  bool scale_power = false;  // p_p = tau E_u / sqrt(M), p_b = E_b / M^beta_exp
  bool family_cf = true;
  bool family_mc = false;
  bool family_limit = false;
  std::vector<double> betas;
};

struct MulticellScenario {
  int num_cells = 7;
  int num_users = 10;
  int training_len = 10;
  double beta_same = 1.0;
  double beta_cross = 0.32;
  double e_u_db = 15.0;
  double fd_ts = 0.1;
  std::vector<double> gammas = {0.5};
  std::vector<int> pred_orders;
  bool current_csi = false;
  bool family_rate = true;
  bool family_limit = false;
};

/// One experiment: a parameter sweep producing one CSV row per
/// (sweep point, curve). Identical config + seed gives a byte-identical
/// CSV for any thread count.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Uplink;
  long trials = 10000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency; not part of the result
  std::string output_path = "out.csv";
  std::string drop_file;  // pin a user drop across runs
  std::uint64_t drop_seed = 101;
  SweepSpec sweep;
  UplinkScenario uplink;
  DownlinkScenario downlink;
  MulticellScenario multicell;
};

/// Parses the flat key = value format with [uplink]/[downlink]/[multicell]
/// sections. Unknown keys, duplicate keys and invalid ranges are rejected
/// with the offending key and line named.
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin = "<inline>");
ScenarioConfig parse_config(const std::string& path);

/// Serializes a config back into the parseable format (used for the
/// metadata sidecar; the thread count is an execution detail and omitted).
std::string scenario_to_text(const ScenarioConfig& config);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);
std::string list_presets();

struct SweepRow {
  double sweep_value;
  std::string curve_id;
  double value;
  double std_err;
};

/// Runs the sweep, writes the CSV plus a ".meta" sidecar next to it, and
/// returns the rows (canonically sorted by sweep value, then curve id).
std::vector<SweepRow> run_scenario(const ScenarioConfig& config);

/// Resolves the large-scale profile a scenario will use (explicit betas,
/// pinned drop file, or a fresh seeded drop persisted to drop_file if set).
FadingProfile resolve_profile(const ScenarioConfig& config);

}  // namespace mimo

#endif
