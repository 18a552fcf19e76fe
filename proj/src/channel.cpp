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

#include "mimo/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mimo/bessel.hpp"

namespace mimo {

void CellGeometry::validate() const {
  if (!(guard_m > 0.0) || !(radius_m > guard_m)) {
    throw std::invalid_argument("CellGeometry: requires 0 < guard_m < radius_m");
  }
  if (!(pathloss_exp > 0.0)) {
    throw std::invalid_argument("CellGeometry: pathloss_exp must be > 0");
  }
  if (shadow_std_db < 0.0) {
    throw std::invalid_argument("CellGeometry: shadow_std_db must be >= 0");
  }
}

FadingProfile FadingProfile::from_betas(const std::vector<double>& betas,
                                        double guard_m) {
  for (double b : betas) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("FadingProfile: betas must be finite and > 0");
    }
  }
  FadingProfile p;
  p.betas = betas;
  p.distances_m.assign(betas.size(), guard_m);
  p.shadow_draws = betas;  // (r/guard)^exp == 1 at the guard radius
  return p;
}

void FadingProfile::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("FadingProfile::save: cannot open " + path);
  }
  out << "# distance_m shadow beta\n";
  char line[128];
  for (int k = 0; k < num_users(); ++k) {
    std::snprintf(line, sizeof(line), "%.17g %.17g %.17g\n", distances_m[k],
                  shadow_draws[k], betas[k]);
    out << line;
  }
  if (!out) {
    throw std::runtime_error("FadingProfile::save: write failed for " + path);
  }
}

FadingProfile FadingProfile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("FadingProfile::load: cannot open " + path);
  }
  FadingProfile p;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double d = 0, z = 0, b = 0;
    if (!(row >> d >> z >> b)) {
      throw std::runtime_error("FadingProfile::load: malformed row in " + path +
                               ": '" + line + "'");
    }
    p.distances_m.push_back(d);
    p.shadow_draws.push_back(z);
    p.betas.push_back(b);
  }
  if (p.betas.empty()) {
    throw std::runtime_error("FadingProfile::load: no rows in " + path);
  }
  return p;
}

AgingParams jakes_alpha(double fd_ts) {
  if (!(fd_ts >= 0.0) || !std::isfinite(fd_ts)) {
    throw std::invalid_argument("jakes_alpha: fd_ts must be finite and >= 0");
  }
  return AgingParams{bessel_j0(2.0 * M_PI * fd_ts), fd_ts};
}

FadingProfile drop_users(int num_users, const CellGeometry& geometry, Rng& rng) {
  if (num_users < 1) {
    throw std::invalid_argument("drop_users: num_users must be >= 1");
  }
  geometry.validate();
  FadingProfile p;
  p.betas.reserve(num_users);
  p.distances_m.reserve(num_users);
  p.shadow_draws.reserve(num_users);
  const double r0sq = geometry.guard_m * geometry.guard_m;
  const double rsq_span = geometry.radius_m * geometry.radius_m - r0sq;
  for (int k = 0; k < num_users; ++k) {
    // Area-uniform distance on the annulus: r^2 uniform on [r0^2, R^2].
    const double r = std::sqrt(r0sq + rng.uniform() * rsq_span);
    // 10 log10(z) ~ N(0, shadow_std_db^2)
    const double z = std::pow(10.0, geometry.shadow_std_db * rng.gauss() / 10.0);
    p.distances_m.push_back(r);
    p.shadow_draws.push_back(z);
    p.betas.push_back(z / std::pow(r / geometry.guard_m, geometry.pathloss_exp));
  }
  return p;
}

ComplexMatrix generate_channel(const FadingProfile& profile, int num_antennas,
                               Rng& rng) {
  if (num_antennas < 1) {
    throw std::invalid_argument("generate_channel: num_antennas must be >= 1");
  }
  const int k_users = profile.num_users();
  ComplexMatrix g(num_antennas, k_users);
  for (int k = 0; k < k_users; ++k) {
    const double beta = profile.betas[k];
    for (int m = 0; m < num_antennas; ++m) {
      g(m, k) = rng.complex_gauss(beta);
    }
  }
  return g;
}

double mmse_estimate_variance(double beta, double pilot_power) {
  return pilot_power * beta * beta / (1.0 + pilot_power * beta);
}

ChannelRealization observe_and_estimate(const ComplexMatrix& true_channel,
                                        const FadingProfile& profile,
                                        double pilot_power, Rng& rng) {
  if (!(pilot_power > 0.0) || !std::isfinite(pilot_power)) {
    throw std::invalid_argument("observe_and_estimate: pilot_power must be finite and > 0");
  }
  if (true_channel.cols() != profile.num_users()) {
    throw std::invalid_argument("observe_and_estimate: channel/profile user count mismatch");
  }
  ChannelRealization cr;
  cr.true_channel = true_channel;
  const double noise_scale = 1.0 / std::sqrt(pilot_power);
  cr.observation.resize(true_channel.rows(), true_channel.cols());
  for (Eigen::Index j = 0; j < true_channel.cols(); ++j) {
    for (Eigen::Index i = 0; i < true_channel.rows(); ++i) {
      cr.observation(i, j) = true_channel(i, j) + noise_scale * rng.complex_gauss(1.0);
    }
  }
  cr.estimate.resize(true_channel.rows(), true_channel.cols());
  for (Eigen::Index j = 0; j < true_channel.cols(); ++j) {
    const double beta = profile.betas[j];
    const double shrink = beta / (beta + 1.0 / pilot_power);
    cr.estimate.col(j) = cr.observation.col(j) * shrink;
  }
  cr.est_error = cr.true_channel - cr.estimate;
  return cr;
}

ComplexMatrix age_channel(const ComplexMatrix& current,
                          const AgingParams& aging,
                          const FadingProfile& profile, Rng& rng) {
  if (current.cols() != profile.num_users()) {
    throw std::invalid_argument("age_channel: channel/profile user count mismatch");
  }
  const double a = aging.alpha;
  const double innovation_factor = 1.0 - a * a;
  ComplexMatrix next(current.rows(), current.cols());
  for (Eigen::Index j = 0; j < current.cols(); ++j) {
    const double var = innovation_factor * profile.betas[j];
    for (Eigen::Index i = 0; i < current.rows(); ++i) {
      next(i, j) = a * current(i, j) + rng.complex_gauss(var);
    }
  }
  return next;
}

ComplexMatrix aged_csi(const ComplexMatrix& estimate, const AgingParams& aging) {
  return aging.alpha * estimate;
}

}  // namespace mimo
