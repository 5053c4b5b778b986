#pragma once

#include <cstdint>

namespace ufd {

/// splitmix64 finalizer: a stateless 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// splitmix64 step.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    return mix64(state += 0x9e3779b97f4a7c15ull);
}

/// xoshiro256++ stream. All simulation randomness in this project flows
/// through this generator so that results are identical across platforms
/// (std::uniform_real_distribution is not portable).
///
/// Trial streams are derived as RngStream(seed, trial): the stream for a
/// given (seed, trial index) pair never depends on how trials are scheduled.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
        s_[0] = splitmix64(sm);
        s_[1] = splitmix64(sm);
        s_[2] = splitmix64(sm);
        s_[3] = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, bound). Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace ufd
