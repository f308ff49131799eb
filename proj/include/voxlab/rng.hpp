// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_RNG_HPP_
#define VOXLAB_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace voxlab {

// Counter-based random stream: draw i is a pure function of (seed, stream, i),
// so streams replay identically and child streams are cheap to split off.
class RngStream {
  public:
    explicit RngStream(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {}

    RngStream child(uint64_t id) const {
        return RngStream(seed_, mix64(stream_ ^ (0x94d049bb133111ebULL + id)));
    }

    uint64_t next_u64() {
        uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (++counter_);
        z ^= mix64(stream_ + 0xbf58476d1ce4e5b9ULL);
        return mix64(z);
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    size_t uniform_index(size_t n) {
        size_t i = static_cast<size_t>(uniform() * static_cast<double>(n));
        return i >= n ? n - 1 : i;
    }

    // Box-Muller transform; consumes two uniforms per draw.
    double gaussian() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double gumbel() { return -std::log(-std::log(uniform_pos())); }

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

  private:
    static uint64_t mix64(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_;
};

}  // namespace voxlab

#endif  // VOXLAB_RNG_HPP_
