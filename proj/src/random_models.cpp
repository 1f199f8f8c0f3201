#include "hyperham/random_models.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperham {

double ExposurePlan::defect_against(double p) const {
    double reassembled = -std::expm1(static_cast<double>(rounds) * std::log1p(-per_round_p));
    double scale = std::max({std::abs(p), std::abs(reassembled), 1e-300});
    return std::abs(reassembled - p) / scale;
}

std::uint64_t binom_u64(int n, int k) {
    if (k < 0 || n < 0) throw std::invalid_argument("binom_u64: negative argument");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > static_cast<unsigned __int128>(UINT64_MAX)) {
            throw std::overflow_error("binom_u64: C(n,k) exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

void check_spec(const RandomSpec& s) {
    if (s.k < 2) throw std::invalid_argument("gnp: k must be >= 2");
    if (s.n < s.k) throw std::invalid_argument("gnp: n must be >= k");
    if (!(s.p >= 0.0 && s.p <= 1.0)) throw std::invalid_argument("gnp: p must be in [0, 1]");
}

// k-set of the given colex rank: greedily take the largest c with C(c, i) <= r.
Edge unrank_colex(std::uint64_t rank, int n, int k) {
    Edge e(static_cast<std::size_t>(k));
    int hi = n;
    for (int i = k; i >= 1; --i) {
        int c = hi - 1;
        while (binom_u64(c, i) > rank) --c;
        e[static_cast<std::size_t>(i - 1)] = c;
        rank -= binom_u64(c, i);
        hi = c;
    }
    return e;
}

}  // namespace

Hypergraph gnp(const RandomSpec& spec) {
    check_spec(spec);
    Hypergraph g(spec.k, spec.n);
    Rng rng(derive_seed(spec.seed, 0x676e70ull));  // "gnp" stream
    if (spec.p <= 0.0) return g;

    std::uint64_t slots = binom_u64(spec.n, spec.k);
    if (spec.p >= 0.01) {
        // dense: one Bernoulli per slot, slots visited in lex order
        Edge e(static_cast<std::size_t>(spec.k));
        for (int i = 0; i < spec.k; ++i) e[static_cast<std::size_t>(i)] = i;
        for (;;) {
            if (rng.chance(spec.p)) g.add_edge(e);
            int i = spec.k - 1;
            while (i >= 0 && e[static_cast<std::size_t>(i)] == spec.n - spec.k + i) --i;
            if (i < 0) break;
            ++e[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < spec.k; ++j) e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] + 1;
        }
    } else {
        // sparse: geometric gaps between successes over colex-ranked slots
        std::uint64_t pos = 0;
        for (;;) {
            std::uint64_t gap = rng.geometric_skip(spec.p);
            if (slots - pos < gap) break;  // next success falls past the last slot
            pos += gap;
            g.add_edge(unrank_colex(pos - 1, spec.n, spec.k));
        }
    }
    return g;
}

Hypergraph gnp(int n, int k, double p, std::uint64_t seed) {
    return gnp(RandomSpec{n, k, p, seed});
}

ExposurePlan split_exposure(double p, int rounds) {
    if (rounds < 1) throw std::invalid_argument("split_exposure: rounds must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("split_exposure: p must be in [0, 1]");
    ExposurePlan plan;
    plan.rounds = rounds;
    if (p >= 1.0) {
        plan.per_round_p = 1.0;
    } else {
        plan.per_round_p = -std::expm1(std::log1p(-p) / static_cast<double>(rounds));
    }
    return plan;
}

int extremal_h0_part_size(int n, double alpha) {
    return static_cast<int>(std::floor(alpha * static_cast<double>(n)));
}

Hypergraph extremal_h0(int n, int k, double alpha) {
    if (k < 2) throw std::invalid_argument("extremal_h0: k must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("extremal_h0: alpha must be in (0, 1)");
    int a = extremal_h0_part_size(n, alpha);
    if (a < 1 || a > n - 1) {
        throw std::invalid_argument("extremal_h0: degenerate partition (|A|=" + std::to_string(a) + ")");
    }
    Hypergraph h(k, n);
    if (n < k) return h;
    Edge e(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i;
    for (;;) {
        // keep the k-sets meeting both A = [0, a) and B = [a, n)
        if (e[0] < a && e[static_cast<std::size_t>(k - 1)] >= a) h.add_edge(e);
        int i = k - 1;
        while (i >= 0 && e[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++e[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] + 1;
    }
    return h;
}

}  // namespace hyperham
