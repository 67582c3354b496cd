#ifndef SPARSETRIG_RNG_HPP
#define SPARSETRIG_RNG_HPP

#include <cstdint>

namespace sparsetrig {

// pcg64 (XSL-RR 128/64) with the fixed default stream. Seeded from a single
// 64-bit value expanded through splitmix64 so equal seeds give equal streams
// on any platform with the same word sizes.
class Pcg64 {
 public:
  explicit Pcg64(std::uint64_t seed) {
    std::uint64_t lo = splitmix(seed);
    std::uint64_t hi = splitmix(seed);
    state_ = 0;
    step();
    state_ += (static_cast<u128>(hi) << 64) | lo;
    step();
  }

  std::uint64_t next() {
    step();
    std::uint64_t xored = static_cast<std::uint64_t>(state_ >> 64) ^ static_cast<std::uint64_t>(state_);
    unsigned rot = static_cast<unsigned>(state_ >> 122);
    return (xored >> rot) | (xored << ((64u - rot) & 63u));
  }

  // uniform in [0, 1), 53 random bits
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // unbiased integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  using u128 = __uint128_t;
  static constexpr u128 mult() {
    return (static_cast<u128>(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fcccf81ULL;
  }
  static constexpr u128 inc() {
    // default stream: 2 * PCG_DEFAULT_INCREMENT_128 semantics folded into an odd constant
    return (static_cast<u128>(0x5851f42d4c957f2dULL) << 64) | 0x14057b7ef767814fULL;
  }

  void step() { state_ = state_ * mult() + inc(); }

  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  u128 state_;
};

}  // namespace sparsetrig

#endif
