#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace parobs {

// Counter-based generator: every draw is a pure function of (key, counter),
// so parallel sweeps and reordered loops cannot change the stream.  Derived
// streams are obtained by hashing a label into the key.  The mixer is the
// SplitMix64 finalizer, which is statistically solid for this scale of use.

class SplitRng {
 public:
  explicit SplitRng(std::uint64_t key) : key_(key) {}

  /// Child generator with an independent stream; deterministic in (key, label).
  SplitRng split(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the label
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return SplitRng(mix(key_ ^ h));
  }

  SplitRng split(std::uint64_t index) const {
    return SplitRng(mix(key_ + 0x9e3779b97f4a7c15ull * (index + 1)));
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (portable, unlike std::normal_distribution).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0x1.0p-60) u1 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace parobs
