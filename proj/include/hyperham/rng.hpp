#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hyperham {

// splitmix64 finalizer; used to derive independent sub-streams from a base seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Fold any number of stream tags into a derived seed. derive_seed(s, a, b) and
// derive_seed(derive_seed(s, a), b) agree, so call sites can split incrementally.
inline std::uint64_t derive_seed(std::uint64_t base) { return base; }

template <class... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, Rest... rest) {
    return derive_seed(mix64(base ^ mix64(tag + 0x632be59bd9b4e019ull)), rest...);
}

// Thin wrapper over std::mt19937_64 (the engine itself is fully specified by the
// standard). All derived draws below are hand-rolled so no implementation-defined
// <random> distribution enters any reproducible code path.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

    std::uint64_t u64() { return eng_(); }

    // Unbiased uniform draw from [0, bound) via masked rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~0ull >> std::countl_zero(bound - 1);
        for (;;) {
            std::uint64_t r = u64() & mask;
            if (r < bound) return r;
        }
    }

    int index(std::size_t n) { return static_cast<int>(below(n)); }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return unit() < p;
    }

    // Gap to the next success of a Bernoulli(p) trial sequence (>= 1).
    // Exact geometric law; drives the sparse G(n,p) sampler.
    std::uint64_t geometric_skip(double p) {
        double u = 1.0 - unit();  // (0, 1]
        double g = std::floor(std::log(u) / std::log1p(-p));
        if (g < 0.0) return 1;
        return 1 + static_cast<std::uint64_t>(g);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    Rng split(std::uint64_t tag) { return Rng(derive_seed(u64(), tag)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace hyperham
