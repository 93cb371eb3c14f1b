#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "triarm/quaternion.hpp"

namespace triarm {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; good avalanche for deriving stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// @brief Deterministic seed-splitting rule.
///
/// Every consumer stream is derived from (master, a, b); streams never share
/// engine state, so run order and threading cannot change the draws.
inline Rng make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return Rng(mix64(master ^ mix64(a ^ mix64(b))));
}

/// Uniform draw in [0, 1) with 53-bit resolution.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// @brief Standard normal draw via Box-Muller.
///
/// Consumes exactly two engine outputs per call and uses only sqrt/log/cos,
/// so sample streams are reproducible across standard libraries.
inline double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform_unit(rng);  // (0, 1], keeps log finite
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace triarm
