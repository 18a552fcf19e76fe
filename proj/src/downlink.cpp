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

#include "mimo/downlink.hpp"

#include <cmath>

#include "mimo/parallel.hpp"

namespace mimo {

namespace {

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

double sample_se(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double sq = 0.0;
  for (double v : values) {
    const double d = v - mean;
    sq += d * d;
  }
  const double n = static_cast<double>(values.size());
  return std::sqrt(sq / (n - 1.0) / n);
}

}  // namespace

double DownlinkConfig::sigma2(int k) const {
  const double beta = betas.at(static_cast<std::size_t>(k));
  return pilot_power * beta * beta / (1.0 + pilot_power * beta);
}

void DownlinkConfig::validate() const {
  if (num_antennas < 1 || num_users < 1) {
    throw std::invalid_argument("DownlinkConfig: num_antennas and num_users must be >= 1");
  }
  if (static_cast<int>(betas.size()) != num_users) {
    throw std::invalid_argument("DownlinkConfig: betas size must equal num_users");
  }
  for (double b : betas) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("DownlinkConfig: betas must be finite and > 0");
    }
  }
  if (!(pilot_power > 0.0) || !(bs_power > 0.0)) {
    throw std::invalid_argument("DownlinkConfig: powers must be > 0");
  }
}

double mrt_lambda(const DownlinkConfig& config) {
  config.validate();
  double total = 0.0;
  for (int k = 0; k < config.num_users; ++k) total += config.sigma2(k);
  const double denom = config.num_antennas * config.alpha * config.alpha * total;
  if (!(denom > 0.0)) {
    throw std::invalid_argument("mrt_lambda: zero normalization (alpha or all betas vanish)");
  }
  return std::sqrt(1.0 / denom);
}

double downlink_rate_closed_form(const DownlinkConfig& config, int k) {
  config.validate();
  if (k < 0 || k >= config.num_users) {
    throw std::invalid_argument("downlink_rate_closed_form: user index out of range");
  }
  const double a2 = config.alpha * config.alpha;
  const double s2k = config.sigma2(k);
  double total = 0.0;
  for (int i = 0; i < config.num_users; ++i) total += config.sigma2(i);
  const double numer = a2 * config.num_antennas * s2k * s2k;
  const double denom = (config.betas[k] + 1.0 / config.bs_power) * total;
  return log2_1p(numer / denom);
}

double downlink_scaling_limit(double bs_power_budget, double power_budget,
                              int training_len, double alpha,
                              const std::vector<double>& betas,
                              double bs_scaling_exponent, double num_antennas,
                              int k) {
  if (!(bs_scaling_exponent > 0.0)) {
    throw std::invalid_argument("downlink_scaling_limit: exponent must be > 0");
  }
  if (k < 0 || k >= static_cast<int>(betas.size())) {
    throw std::invalid_argument("downlink_scaling_limit: user index out of range");
  }
  double beta_sq_sum = 0.0;
  for (double b : betas) beta_sq_sum += b * b;
  const double beta_k = betas[static_cast<std::size_t>(k)];
  const double numer = alpha * alpha * training_len * power_budget *
                       bs_power_budget * beta_k * beta_k * beta_k * beta_k;
  const double denom =
      std::pow(num_antennas, bs_scaling_exponent - 0.5) * beta_sq_sum;
  return log2_1p(numer / denom);
}

DownlinkMoments downlink_moment_oracle(const DownlinkConfig& config,
                                       long trials, std::uint64_t seed,
                                       int user_index, int threads,
                                       int batches) {
  config.validate();
  if (trials < 1) {
    throw std::invalid_argument("downlink_moment_oracle: trials must be >= 1");
  }
  if (user_index < 0 || user_index >= config.num_users) {
    throw std::invalid_argument("downlink_moment_oracle: user index out of range");
  }
  const int m = config.num_antennas;
  const int num_users = config.num_users;
  const double alpha = config.alpha;
  const double beta_k = config.betas[static_cast<std::size_t>(user_index)];
  const double s2k = config.sigma2(user_index);

  const std::size_t n = static_cast<std::size_t>(trials);
  std::vector<std::complex<double>> gain(n);
  std::vector<double> interf(n * std::max(num_users - 1, 1), 0.0);

  parallel_for(n, threads, [&](std::size_t t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    // Estimate, estimation error, AR(1) innovation for the target user.
    Eigen::VectorXcd est(m), err(m), innov(m);
    for (int i = 0; i < m; ++i) est(i) = rng.complex_gauss(s2k);
    for (int i = 0; i < m; ++i) err(i) = rng.complex_gauss(beta_k - s2k);
    const double innov_var = (1.0 - alpha * alpha) * beta_k;
    for (int i = 0; i < m; ++i) innov(i) = rng.complex_gauss(innov_var);

    const Eigen::VectorXcd true_next = alpha * (est + err) + innov;
    const Eigen::VectorXcd csi_k = alpha * est;
    gain[t] = (true_next.transpose() * csi_k.conjugate())(0);

    int slot = 0;
    for (int i = 0; i < num_users; ++i) {
      if (i == user_index) continue;
      const double s2i = config.sigma2(i);
      Eigen::VectorXcd est_i(m);
      for (int r = 0; r < m; ++r) est_i(r) = rng.complex_gauss(s2i);
      const Eigen::VectorXcd csi_i = alpha * est_i;
      const std::complex<double> cross =
          (true_next.transpose() * csi_i.conjugate())(0);
      interf[t * (num_users - 1) + slot] = std::norm(cross);
      ++slot;
    }
  });

  DownlinkMoments out;
  out.trials = trials;
  const int b_count = static_cast<int>(
      std::min<long>(batches, std::max<long>(1, trials / 2)));
  out.batch_mean.assign(b_count, {0.0, 0.0});
  out.batch_second_moment.assign(b_count, 0.0);
  out.batch_interference.assign(b_count,
                                std::vector<double>(std::max(num_users - 1, 0), 0.0));

  std::complex<double> mean{0.0, 0.0};
  double second = 0.0;
  std::vector<double> counts(b_count, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const int b = static_cast<int>(t * b_count / n);
    mean += gain[t];
    second += std::norm(gain[t]);
    out.batch_mean[b] += gain[t];
    out.batch_second_moment[b] += std::norm(gain[t]);
    counts[b] += 1.0;
  }
  mean /= static_cast<double>(n);
  second /= static_cast<double>(n);
  for (int b = 0; b < b_count; ++b) {
    out.batch_mean[b] /= counts[b];
    out.batch_second_moment[b] /= counts[b];
  }

  out.mean_gain = mean.real();
  {
    std::vector<double> re(n);
    for (std::size_t t = 0; t < n; ++t) re[t] = gain[t].real();
    out.mean_gain_se = sample_se(re, out.mean_gain);
  }
  out.gain_variance = second - std::norm(mean);
  {
    std::vector<double> batch_var(b_count);
    for (int b = 0; b < b_count; ++b) {
      batch_var[b] = out.batch_second_moment[b] - std::norm(out.batch_mean[b]);
    }
    double bv_mean = 0.0;
    for (double v : batch_var) bv_mean += v;
    bv_mean /= b_count;
    out.gain_variance_se = sample_se(batch_var, bv_mean);
  }

  const int n_interf = num_users - 1;
  out.interference.assign(std::max(n_interf, 0), 0.0);
  out.interference_se.assign(std::max(n_interf, 0), 0.0);
  for (int i = 0; i < n_interf; ++i) {
    std::vector<double> vals(n);
    for (std::size_t t = 0; t < n; ++t) vals[t] = interf[t * n_interf + i];
    double m_i = 0.0;
    for (double v : vals) m_i += v;
    m_i /= static_cast<double>(n);
    out.interference[i] = m_i;
    out.interference_se[i] = sample_se(vals, m_i);
    for (std::size_t t = 0; t < n; ++t) {
      const int b = static_cast<int>(t * b_count / n);
      out.batch_interference[b][i] += vals[t];
    }
    for (int b = 0; b < b_count; ++b) {
      out.batch_interference[b][i] /= counts[b];
    }
  }
  return out;
}

}  // namespace mimo
