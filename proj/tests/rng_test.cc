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

#include "mbd/rng.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

namespace mbd {
namespace {

TEST(Rng, SplitmixFinalizerGolden) {
  // frozen values from an independent big-integer implementation
  EXPECT_EQ(mix64(0), 0ull);
  EXPECT_EQ(mix64(1), 0x5692161d100b05e5ull);
  EXPECT_EQ(mix64(0xDEADBEEFull), 0x4e062702ec929eeaull);
}

TEST(Rng, StreamGolden) {
  // seeding chain mix(mix(mix(seed + gamma) + stream) + substream), then
  // splitmix64 steps; frozen from the same independent implementation
  RandomStream rng(42, 7);
  EXPECT_EQ(rng.next_u64(), 0xfc639fbb4b55e6b7ull);
  EXPECT_EQ(rng.next_u64(), 0x0b49e7b130ac12c0ull);
  EXPECT_EQ(rng.next_u64(), 0xb0bebbfafeded02dull);
}

TEST(Rng, KeysSeparateStreams) {
  RandomStream a(5, 1, 2);
  RandomStream b(5, 1, 2);
  RandomStream c(5, 1, 3);
  RandomStream d(5, 2, 2);
  RandomStream e(6, 1, 2);
  std::uint64_t a0 = a.next_u64();
  EXPECT_EQ(a0, b.next_u64());
  EXPECT_NE(a0, c.next_u64());
  EXPECT_NE(a0, d.next_u64());
  EXPECT_NE(a0, e.next_u64());
}

TEST(Rng, GaussianPairMatchesBoxMuller) {
  // oracle: Box-Muller applied by hand to the stream's first two u64 draws
  RandomStream raw(3, 5);
  double inv53 = 1.0 / 9007199254740992.0;
  double u1 = static_cast<double>((raw.next_u64() >> 11) + 1) * inv53;
  double u2 = static_cast<double>(raw.next_u64() >> 11) * inv53;
  double r = std::sqrt(-2.0 * std::log(u1));
  double expected0 = r * std::cos(2.0 * M_PI * u2);
  double expected1 = r * std::sin(2.0 * M_PI * u2);

  RandomStream rng(3, 5);
  EXPECT_DOUBLE_EQ(rng.gaussian(), expected0);
  EXPECT_DOUBLE_EQ(rng.gaussian(), expected1);  // cached second of the pair

  // frozen copies of the same pair
  EXPECT_NEAR(expected0, -0.44769448900610265, 1e-12);
  EXPECT_NEAR(expected1, 0.6662156070996712, 1e-12);
}

TEST(Rng, UniformRangeAndMean) {
  RandomStream rng(11, 0);
  const int n = 20000;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  double se = 1.0 / std::sqrt(12.0 * n);
  EXPECT_NEAR(sum / n, 0.5, 4.0 * se);
}

TEST(Rng, GaussianMoments) {
  RandomStream rng(17, 4);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    double g = rng.gaussian();
    sum += g;
    sum_sq += g * g;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(var, 1.0, 4.0 * std::sqrt(2.0 / n));
}

}  // namespace
}  // namespace mbd
