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

#ifndef MIMO_AGING_RNG_H
#define MIMO_AGING_RNG_H

#include <complex>
#include <cstdint>

namespace mimo {

/// Counter-addressable random stream (xoshiro256++ seeded through
/// splitmix64). Every (seed, stream_id) pair yields its own reproducible
/// sequence, so Monte Carlo trials can be assigned one stream each and
/// dispatched to any number of threads without changing the draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  double uniform();      // [0, 1)
  double uniform_pos();  // (0, 1]

  /// Standard normal draw (Box-Muller; the paired value is cached).
  double gauss();

  /// Circularly-symmetric complex Gaussian draw with the given total
  /// variance (real and imaginary parts carry variance/2 each).
  std::complex<double> complex_gauss(double variance);

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t state_[4] = {0, 0, 0, 0};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Deterministically combines a master seed with sub-indices (sweep point,
/// curve ordinal, ...) into a fresh seed for an independent run.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace mimo

#endif
