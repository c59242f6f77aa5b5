#pragma once

#include <complex>
#include <cstdint>

namespace momentforge {

// Small deterministic RNG (splitmix64).  Every randomized test suite draws
// from an independent stream keyed by (seed, draw index), so draws can be
// evaluated in parallel in any order and still reproduce bit-for-bit.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for one draw of a seeded suite.
    static Rng stream(std::uint64_t seed, std::uint64_t draw_index) {
        Rng mix(seed + 0x9e3779b97f4a7c15ull * (draw_index + 1));
        mix.next();
        mix.next();
        return mix;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::complex<double> complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }

    // Integer in [lo, hi] inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + next() % (hi - lo + 1);
    }

  private:
    std::uint64_t state_;
};

} // namespace momentforge
