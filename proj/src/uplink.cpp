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

#include "mimo/uplink.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mimo/parallel.hpp"

namespace mimo {

namespace {

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

std::vector<double> sinr_from_floor(const ComplexMatrix& detector,
                                    const ComplexMatrix& csi,
                                    double user_power, double noise_floor) {
  if (detector.rows() != csi.rows() || detector.cols() != csi.cols()) {
    throw std::invalid_argument("instantaneous_sinr: detector/csi dimension mismatch");
  }
  const Eigen::Index num_users = csi.cols();
  const ComplexMatrix cross = detector.adjoint() * csi;  // K x K
  std::vector<double> sinr(num_users);
  for (Eigen::Index k = 0; k < num_users; ++k) {
    const double signal = user_power * std::norm(cross(k, k));
    double interference = 0.0;
    for (Eigen::Index i = 0; i < num_users; ++i) {
      if (i != k) interference += std::norm(cross(k, i));
    }
    interference *= user_power;
    const double combiner_energy = detector.col(k).squaredNorm();
    sinr[k] = signal / (interference + combiner_energy * noise_floor);
  }
  return sinr;
}

}  // namespace

ComplexMatrix build_detector(const ComplexMatrix& csi, DetectorKind kind) {
  if (kind == DetectorKind::Mrc) {
    return csi;
  }
  if (csi.rows() < csi.cols()) {
    throw std::invalid_argument("build_detector: ZF requires at least as many antennas as users");
  }
  const ComplexMatrix gram = csi.adjoint() * csi;
  ComplexMatrix inv_gram;
  try {
    inv_gram = hermitian_solve(gram, ComplexMatrix::Identity(gram.rows(), gram.cols()));
  } catch (const not_positive_definite_error&) {
    throw not_positive_definite_error("build_detector: singular Gram matrix for ZF");
  }
  return csi * inv_gram;
}

std::vector<double> instantaneous_sinr_aged(const ComplexMatrix& detector,
                                            const ComplexMatrix& csi,
                                            const FadingProfile& profile,
                                            const AgingParams& aging,
                                            double user_power,
                                            double pilot_power) {
  if (!(user_power > 0.0) || !(pilot_power > 0.0)) {
    throw std::invalid_argument("instantaneous_sinr_aged: powers must be > 0");
  }
  const double a2 = aging.alpha * aging.alpha;
  double residual = 0.0;  // sum_i (beta_i - alpha^2 sigma_i^2)
  for (double beta : profile.betas) {
    residual += beta - a2 * mmse_estimate_variance(beta, pilot_power);
  }
  return sinr_from_floor(detector, csi, user_power,
                         user_power * residual + 1.0);
}

std::vector<double> instantaneous_sinr_predicted(
    const ComplexMatrix& detector, const ComplexMatrix& predicted_csi,
    const std::vector<double>& thetas, const FadingProfile& profile,
    const AgingParams& aging, double user_power) {
  if (thetas.size() != profile.betas.size()) {
    throw std::invalid_argument("instantaneous_sinr_predicted: thetas/profile size mismatch");
  }
  const double a2 = aging.alpha * aging.alpha;
  double residual = 0.0;  // sum_i (beta_i - alpha^2 theta_i)
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    residual += profile.betas[i] - a2 * thetas[i];
  }
  return sinr_from_floor(detector, predicted_csi, user_power,
                         user_power * residual + 1.0);
}

RateReport monte_carlo_rate(const SystemConfig& config,
                            const FadingProfile& profile, DetectorKind kind,
                            CsiMode csi_mode, long trials, std::uint64_t seed,
                            int threads, MonteCarloDetail* detail) {
  config.validate(kind == DetectorKind::Zf);
  if (profile.num_users() != config.num_users) {
    throw std::invalid_argument("monte_carlo_rate: profile/config user count mismatch");
  }
  if (trials < 1) {
    throw std::invalid_argument("monte_carlo_rate: trials must be >= 1");
  }
  const int num_users = config.num_users;
  const int num_antennas = config.num_antennas;
  const double p_p = config.pilot_power();
  const AgingParams aging = jakes_alpha(config.norm_doppler);

  std::vector<PredictorState> states;
  std::vector<double> thetas;
  const int order = csi_mode == CsiMode::Predicted ? config.pred_order : 0;
  if (csi_mode == CsiMode::Predicted) {
    states.reserve(num_users);
    for (int k = 0; k < num_users; ++k) {
      states.push_back(wiener_coefficients(order, aging.alpha,
                                           profile.betas[k], p_p));
      thetas.push_back(states.back().theta);
    }
  }

  std::vector<double> rates(static_cast<std::size_t>(trials) * num_users);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> sinr;
    if (csi_mode == CsiMode::Aged) {
      const ComplexMatrix channel = generate_channel(profile, num_antennas, rng);
      const ChannelRealization snap =
          observe_and_estimate(channel, profile, p_p, rng);
      const ComplexMatrix csi = aged_csi(snap.estimate, aging);
      const ComplexMatrix detector = build_detector(csi, kind);
      sinr = instantaneous_sinr_aged(detector, csi, profile, aging,
                                     config.user_power, p_p);
    } else {
      // Evolve the channel through order+1 training instants; lag 0 holds
      // the most recent observation.
      std::vector<ComplexMatrix> history(order + 1);
      ComplexMatrix channel = generate_channel(profile, num_antennas, rng);
      history[order] = observe_and_estimate(channel, profile, p_p, rng).observation;
      for (int lag = order - 1; lag >= 0; --lag) {
        channel = age_channel(channel, aging, profile, rng);
        history[lag] = observe_and_estimate(channel, profile, p_p, rng).observation;
      }
      const ComplexMatrix csi = predict_channel(history, states);
      const ComplexMatrix detector = build_detector(csi, kind);
      sinr = instantaneous_sinr_predicted(detector, csi, thetas, profile,
                                          aging, config.user_power);
    }
    for (int k = 0; k < num_users; ++k) {
      rates[t * num_users + k] = log2_1p(sinr[k]);
    }
  });

  RateReport report;
  report.trials = trials;
  report.csi_mode = csi_mode;
  report.pred_order = order;
  report.per_user_rate.assign(num_users, 0.0);
  report.std_err.assign(num_users, 0.0);

  for (long t = 0; t < trials; ++t) {
    for (int k = 0; k < num_users; ++k) {
      report.per_user_rate[k] += rates[t * num_users + k];
    }
  }
  for (int k = 0; k < num_users; ++k) {
    report.per_user_rate[k] /= trials;
  }
  std::vector<double> sq(num_users, 0.0);
  double sum_mean = 0.0, sum_sq = 0.0;
  for (int k = 0; k < num_users; ++k) sum_mean += report.per_user_rate[k];
  for (long t = 0; t < trials; ++t) {
    double trial_sum = 0.0;
    for (int k = 0; k < num_users; ++k) {
      const double d = rates[t * num_users + k] - report.per_user_rate[k];
      sq[k] += d * d;
      trial_sum += rates[t * num_users + k];
    }
    const double ds = trial_sum - sum_mean;
    sum_sq += ds * ds;
  }
  if (trials > 1) {
    for (int k = 0; k < num_users; ++k) {
      report.std_err[k] = std::sqrt(sq[k] / (trials - 1.0) / trials);
    }
    report.sum_rate_std_err = std::sqrt(sum_sq / (trials - 1.0) / trials);
  }

  report.overhead_factor = 1.0;
  if (config.frame_len) {
    report.overhead_factor =
        (*config.frame_len - config.training_len) /
        static_cast<double>(*config.frame_len);
  }
  report.sum_rate = report.overhead_factor * sum_mean;
  report.sum_rate_std_err *= report.overhead_factor;

  if (detail != nullptr) {
    detail->per_trial_rates = std::move(rates);
  }
  return report;
}

double sum_rate(const RateReport& report, std::optional<int> frame_len,
                int training_len) {
  double total = 0.0;
  for (double r : report.per_user_rate) total += r;
  if (!frame_len) {
    return total;
  }
  if (training_len < 1 || *frame_len <= training_len) {
    throw std::invalid_argument("sum_rate: requires frame_len > training_len >= 1");
  }
  return (*frame_len - training_len) / static_cast<double>(*frame_len) * total;
}

void write_rate_report_csv(const RateReport& report, const SystemConfig& config,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_rate_report_csv: cannot open " + path);
  }
  char line[256];
  std::snprintf(line, sizeof(line),
                "# M=%d K=%d tau=%d p_u=%.17g fd_ts=%.17g csi=%s p=%d trials=%ld\n",
                config.num_antennas, config.num_users, config.training_len,
                config.user_power, config.norm_doppler,
                report.csi_mode == CsiMode::Aged ? "aged" : "predicted",
                report.pred_order, report.trials);
  out << line << "user,rate,std_err\n";
  for (std::size_t k = 0; k < report.per_user_rate.size(); ++k) {
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", k,
                  report.per_user_rate[k], report.std_err[k]);
    out << line;
  }
  if (!out) {
    throw std::runtime_error("write_rate_report_csv: write failed for " + path);
  }
}

}  // namespace mimo
