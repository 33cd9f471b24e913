// Deterministic random number generation.
//
// Every stochastic operation in the pipeline takes an explicit seed, and
// per-item seeds are derived functionally from (root seed, tag, indices).
// The generator and all distributions are implemented here rather than via
// <random> so that streams are identical across standard libraries and the
// state serializes as four integers.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace devdiet {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stable string hash (FNV-1a) for seed-derivation tags.
inline std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(x);
}

// Functional seed derivation: same inputs, same stream, regardless of the
// order or worker that consumes it.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t h = hash_mix(root, hash_str(tag));
  h = hash_mix(h, a);
  h = hash_mix(h, b);
  h = hash_mix(h, c);
  return h;
}

// xoshiro256** with splitmix64 seeding.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  std::uint64_t next() {
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

  // [0, 1)
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Half-open from the top: (lo, hi]
  double uniform_high(double lo, double hi) { return hi - (hi - lo) * uniform(); }

  // [0, n)
  std::uint64_t randint(std::uint64_t n) {
    // Lemire-style rejection is overkill here; modulo bias at n << 2^64 is
    // far below any tolerance we test at.
    return next() % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal(double mean = 0.0, double stddev = 1.0) {
    // Box-Muller without the cached second value so state stays 4 words.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586 * u2);
  }

  std::array<std::uint64_t, 4> state() const { return s_; }
  void restore(const std::array<std::uint64_t, 4>& st) { s_ = st; }

  template <typename T>
  void shuffle(T* data, std::size_t n) {
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = randint(i);
      std::swap(data[i - 1], data[j]);
    }
  }
  template <typename Vec>
  void shuffle(Vec& v) {
    if (!v.empty()) shuffle(v.data(), v.size());
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace devdiet
