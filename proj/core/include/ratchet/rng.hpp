#pragma once

#include <array>
#include <cstdint>

#include "ratchet/normal.hpp"

namespace ratchet {

// Philox4x32-10 counter-based generator (Salmon et al.). Each call is a pure
// function of (key, counter), so any variate in a simulation is addressable
// by index and results do not depend on execution order or thread count.
struct Philox4x32 {
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                            const std::array<std::uint32_t, 4>& counter) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    std::uint32_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0;
      std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2;
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      std::uint32_t n0 = hi1 ^ c1 ^ k0;
      std::uint32_t n1 = lo1;
      std::uint32_t n2 = hi0 ^ c3 ^ k1;
      std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += kW0;
      k1 += kW1;
    }
    return {c0, c1, c2, c3};
  }
};

// Uniform in the open interval (0,1) from 53 random bits plus a half-ulp
// offset; never returns 0 or 1, so inverse-CDF transforms stay finite.
inline double uniform_open01(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Addressable random variates for one logical stream of a simulation.
// `domain` separates independent uses of the same stream (e.g. per-step
// noise vs. initial-state draws).
struct CounterStream {
  std::uint64_t seed = 0;
  std::uint32_t stream = 0;
  std::uint32_t domain = 0;

  // Two independent uniforms addressed by 64-bit call index.
  std::array<double, 2> uniform_pair(std::uint64_t index) const {
    auto words = Philox4x32::block(
        seed, {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
               stream, domain});
    return {uniform_open01(words[0], words[1]), uniform_open01(words[2], words[3])};
  }

  // Standard normal variate number `i` of the stream (inverse-CDF of the
  // addressed uniform; two variates share one Philox block).
  double normal(std::uint64_t i) const {
    auto u = uniform_pair(i >> 1);
    return normal_inv_cdf(u[i & 1]);
  }
};

}  // namespace ratchet
