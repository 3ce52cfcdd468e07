#pragma once

#include <cstdint>

namespace alertswarm {

// SplitMix64. Standard library distributions are implementation-defined, so
// everything random in the simulator goes through this generator to keep
// outputs byte-identical across platforms and standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix_u64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives the seed of a named stream from the root seed. Each distinct
/// (a, b, c) tuple yields an independent stream; the simulator keys them by
/// (tick, phase, agent...) so that per-agent draws do not depend on
/// iteration order.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = root;
    h = mix_u64(h ^ (a + 0x9e3779b97f4a7c15ULL));
    h = mix_u64(h ^ (b + 0xc2b2ae3d27d4eb4fULL));
    h = mix_u64(h ^ (c + 0x165667b19e3779f9ULL));
    return h;
}

}  // namespace alertswarm
