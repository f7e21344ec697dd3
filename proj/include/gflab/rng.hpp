#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "gflab/types.hpp"

namespace gflab {

// SplitMix64 stream. Chosen over std::mt19937 because the whole generator is
// a dozen lines that behave identically on every platform, which keeps
// reports byte-reproducible. Constants are the standard finalizer ones; they
// are documented in the README so other implementations can match streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second deviate of each pair is cached
  // so consumption order stays deterministic.
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    // u1 in (0,1] so the log is finite.
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  cplx gaussian_cplx() {
    double re = gaussian();
    double im = gaussian();
    return {re, im};
  }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Derives an independent child seed from a base seed and a purpose tag
  // (FNV-1a over the tag, xored into the base, then one SplitMix64 step).
  // Used so concurrent checks draw from disjoint deterministic streams.
  static std::uint64_t derive(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    Rng r(base ^ h);
    return r.next_u64();
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace gflab
