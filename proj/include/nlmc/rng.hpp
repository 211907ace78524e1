#ifndef NLMC_RNG_HPP
#define NLMC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace nlmc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** with splitmix64 seeding. Hand-rolled so that streams are
// bit-identical across platforms and standard library versions (the std
// distributions make no such guarantee).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  // Independent stream for one Monte Carlo trial, derived from the master
  // seed and the global trial index only.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t sm = master_seed;
    std::uint64_t a = splitmix64(sm);
    sm = trial_index ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t b = splitmix64(sm);
    return Rng(a ^ (b + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe argument for log().
  double next_double_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  double next_exponential(double rate) { return -std::log(next_double_pos()) / rate; }

  double next_normal() {
    // Box-Muller; one value per call keeps the stream layout simple.
    const double u1 = next_double_pos();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Gamma(shape n, rate lambda). Exact sum of exponentials for small integer
  // shapes, Marsaglia-Tsang otherwise.
  double next_gamma(long n, double rate) {
    if (n <= 50) {
      double acc = 0.0;
      for (long i = 0; i < n; ++i) acc += next_exponential(rate);
      return acc;
    }
    const double a = static_cast<double>(n);
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = next_double_pos();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace nlmc

#endif  // NLMC_RNG_HPP
