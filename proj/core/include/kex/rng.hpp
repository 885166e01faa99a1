#ifndef KEX_RNG_HPP
#define KEX_RNG_HPP

#include <cstdint>

namespace kex {

// SplitMix64 finalizer. Used to derive independent substream seeds from a
// master seed; the mechanism tree assigns one substream per node so that a
// whole layered run is a pure function of (instance, k, master seed).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed) ^ mix64(stream + 0x5851f42d4c957f2dULL));
}

// Deterministic bit/number source backed by the SplitMix64 sequence. The
// generator is fully specified here, so streams are identical across
// platforms and standard libraries, and construction is one store (the
// mechanism tree seeds one stream per node).
class BitStream {
public:
    explicit BitStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    int bit() { return static_cast<int>(u64() >> 63); }

    // Uniform draw in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = u64();
        } while (r >= limit);
        return r % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace kex

#endif
