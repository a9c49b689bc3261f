#pragma once

#include <cstdint>

namespace distlab {

/// Counter-based splitmix64 stream. All randomness in the library flows
/// through this generator so that runs are reproducible across platforms
/// and thread counts: a (seed, stream) pair fully determines the sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

    /// Derives an independent stream from a master seed. Streams with
    /// distinct ids are decorrelated; the mapping is pure arithmetic.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        Rng r(0);
        r.state_ = mix(seed + kGamma) ^ mix(stream_id * kGamma + 0x632be59bd9b4e019ULL);
        return r;
    }

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t x, r;
        do {
            x = next();
            r = x % bound;
        } while (x - r > std::uint64_t(0) - bound);
        return r;
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace distlab
