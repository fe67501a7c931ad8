#ifndef ENTIM_RNG_HPP
#define ENTIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <cmath>

namespace entim {

// Self-contained generators so that streams are reproducible across
// compilers and standard libraries (std::normal_distribution is
// implementation-defined). xoshiro256** with splitmix64 seeding.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double phi = 6.283185307179586476925286766559 * uniform();
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  /// Circular complex Gaussian with <|z|^2> = variance, <z^2> = 0.
  std::complex<double> complex_normal(double variance) {
    const double s = std::sqrt(0.5 * variance);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  /// Exponential with the given mean.
  double exponential(double mean) { return -mean * std::log(uniform_pos()); }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Independent stream for one work unit (pulse). Streams derived from the
/// same master seed but different indices are statistically independent;
/// the derivation is pure so any worker can reproduce any pulse.
inline Rng derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t sm = master_seed ^ (0xD1B54A32D192ED03ull * (index + 1));
  const std::uint64_t mixed = splitmix64_next(sm);
  return Rng(mixed ^ master_seed);
}

} // namespace entim

#endif
