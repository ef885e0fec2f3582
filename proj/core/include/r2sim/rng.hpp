// Copyright 2026 The r2sim Authors.
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

#ifndef R2SIM_RNG_HPP
#define R2SIM_RNG_HPP

#include <cstdint>
#include <random>

namespace r2sim {

/**
 * Seeded generator with platform-independent output.
 *
 * std::mt19937_64 is fully specified by the standard but the <random>
 * distributions are not, so the mappings to ranges are done here.
 */
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : m_engine(seed)
  {}

  std::uint64_t next() { return m_engine(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double
  unit()
  {
    return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [lo, hi]; slight modulo bias is irrelevant at these ranges.
  std::uint64_t
  uniform_int(std::uint64_t lo, std::uint64_t hi)
  {
    return lo + m_engine() % (hi - lo + 1);
  }

private:
  std::mt19937_64 m_engine;
};

inline std::uint64_t
splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace r2sim

#endif // R2SIM_RNG_HPP
