#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sphangle {

/// Identifies one reproducible random stream: a master seed plus a stream
/// index (normally the replicate number). Distinct pairs give independent
/// streams.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Substream derivation: the engine seed is splitmix64(splitmix64(master) +
/// stream). Two finalizer rounds decorrelate nearby (master, stream) pairs,
/// so replicates can run embarrassingly parallel with no shared RNG state.
inline std::uint64_t derive_stream_seed(const SeedSpec& seed) {
  return detail::splitmix64(detail::splitmix64(seed.master_seed) + seed.stream_index);
}

/// Random stream with the exact generation recipes fixed so that a given
/// SeedSpec reproduces identical draws within one build:
///   - engine: std::mt19937_64 (standard-specified sequence)
///   - uniforms: top 53 bits of each 64-bit word
///   - normals: Box-Muller on (u1, u2], second variate cached
///   - exponentials: inverse CDF -log(u), u in (0,1]
class Rng {
 public:
  explicit Rng(const SeedSpec& seed) : engine_(derive_stream_seed(seed)) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double t = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  /// Exponential with rate 1.
  double exponential() { return -std::log(uniform_pos()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace sphangle
