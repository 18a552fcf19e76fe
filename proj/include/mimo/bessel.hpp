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

#ifndef MIMO_AGING_BESSEL_H
#define MIMO_AGING_BESSEL_H

namespace mimo {

/// Zero-order Bessel function of the first kind, J0(x).
///
/// Power series below |x| = 12, Hankel asymptotic expansion above, with
/// long-double accumulation; absolute error stays below 1e-10 for |x| <= 50.
/// Throws std::invalid_argument on non-finite input.
double bessel_j0(double x);

}  // namespace mimo

#endif
