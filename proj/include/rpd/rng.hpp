#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rpd {

// Counter-based randomness built on the splitmix64 output function. Every
// sampler in the project is a pure function of (parameters, seed): graphs can
// be resampled bit-identically and independent trials never share a stream.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// k-th output of the splitmix64 sequence started at `state`.
inline constexpr std::uint64_t splitmix_at(std::uint64_t state, std::uint64_t k) {
    return mix64(state + (k + 1) * kGolden);
}

inline double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform [0,1) draw addressed by (seed, counter); used for per-pair edge
// draws so that a graph is a pure function of its seed.
inline double unit_at(std::uint64_t seed, std::uint64_t counter) {
    return to_unit(splitmix_at(seed, counter));
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives an independent stream seed from a master seed, a phase tag and up
// to two indices. Distinct tags or indices give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = splitmix_at(master, fnv1a(tag));
    s = splitmix_at(s, a);
    return splitmix_at(s, b);
}

// Sequential splitmix64 stream for shuffles and candidate picks.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    double next_unit() { return to_unit(next_u64()); }

    // Unbiased draw from [0, bound) (Lemire's method).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        while (true) {
            std::uint64_t x = next_u64();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo < bound) {
                std::uint64_t t = (0 - bound) % bound;
                if (lo < t) continue;
            }
            return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Inclusive range.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace rpd
