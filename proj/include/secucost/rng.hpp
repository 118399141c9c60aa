#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace secucost {

/// SplitMix64 finaliser; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Seedable stream over std::mt19937_64. The engine's output sequence is
/// fixed by the standard; the distributions below are implemented here
/// rather than taken from <random>, whose distributions differ between
/// standard libraries.
///
/// Stream splitting: run i of a workload with seed s draws from
/// Rng::for_run(s, i), seeded with splitmix64(s ^ (i + 1) * 0x9E3779B97F4A7C15).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_run(std::uint64_t workload_seed, std::uint64_t run_index) {
    return Rng(splitmix64(workload_seed ^ ((run_index + 1) * 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller (one variate per call).
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed of a named workload under a global seed.
constexpr std::uint64_t derive_workload_seed(std::uint64_t global_seed, std::string_view workload_id) noexcept {
  return splitmix64(global_seed ^ fnv1a64(workload_id));
}

}  // namespace secucost
