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

#include "mimo/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace mimo {

namespace {

constexpr double kSeriesLimit = 12.0;

// Alternating power series sum_m (-1)^m (x^2/4)^m / (m!)^2. At the seam
// x = 12 the largest term is ~4.2e3, so long-double accumulation keeps the
// cancellation error near 1e-14.
double j0_series(double x) {
  const long double q = static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m <= 60; ++m) {
    term *= -q / (static_cast<long double>(m) * m);
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-20) break;
  }
  return static_cast<double>(sum);
}

// Hankel expansion J0(x) = sqrt(2/(pi x)) [P(x) cos(x - pi/4) + Q(x) sin(x - pi/4)].
// Coefficients a_k = (0,k) follow the recurrence a_{k+1} = -a_k (2k+1)^2 / (8(k+1));
// P collects the even-index terms, Q the odd-index ones. Six terms per series
// leave a truncation error of ~1e-12 at the x = 12 seam, shrinking further out.
double j0_asymptotic(double x) {
  const long double z = static_cast<long double>(x);
  long double a = 1.0L;  // leading coefficient; a_1 = -1/8, a_2 = 9/128, ...
  long double p = 0.0L, q = 0.0L;
  long double zpow = 1.0L;
  int sign_p = 1, sign_q = 1;
  for (int k = 0; k <= 11; ++k) {
    if (k % 2 == 0) {
      p += sign_p * a / zpow;
      sign_p = -sign_p;
    } else {
      q += sign_q * a / zpow;
      sign_q = -sign_q;
    }
    a *= -static_cast<long double>((2 * k + 1)) * (2 * k + 1) /
         (8.0L * (k + 1));
    zpow *= z;
  }
  const long double chi = static_cast<long double>(x) - 0.25L * M_PIl;
  const long double amp = std::sqrt(2.0L / (M_PIl * static_cast<long double>(x)));
  // Sign convention: leading Q term is -(1/(8x)), entering as P cos - Q sin.
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("bessel_j0: argument must be finite");
  }
  const double ax = std::fabs(x);
  return ax <= kSeriesLimit ? j0_series(ax) : j0_asymptotic(ax);
}

}  // namespace mimo
