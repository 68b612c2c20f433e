// Copyright 2026 The mbdopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MBD_RNG_H_
#define MBD_RNG_H_

#include <cmath>
#include <cstdint>

namespace mbd {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based random stream keyed by (seed, stream, substream).
//
// Batch samplers key one stream per (step, candidate) pair, so draws are
// independent of how a batch is partitioned across workers: identical keys
// give bit-identical sequences on a given platform.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream,
               std::uint64_t substream = 0) {
    state_ = mix64(seed + 0x9E3779B97F4A7C15ull);
    state_ = mix64(state_ + stream);
    state_ = mix64(state_ + substream);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * kInv53; }

  // standard normal via Box-Muller; generates pairs, caches the second
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * kInv53;  // (0,1]
    double u2 = static_cast<double>(next_u64() >> 11) * kInv53;        // [0,1)
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mbd

#endif  // MBD_RNG_H_
