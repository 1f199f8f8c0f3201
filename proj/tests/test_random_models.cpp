#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/random_models.hpp"
#include "hyperham/rng.hpp"

using namespace hyperham;

namespace {

// two-sample Kolmogorov-Smirnov statistic over integer samples: compare the
// empirical CDFs after each distinct value, absorbing ties on both sides
double ks_statistic(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int v = std::numeric_limits<int>::max();
        if (i < a.size()) v = a[i];
        if (j < b.size()) v = std::min(v, b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binom_u64(10, 3) == 120);
    CHECK(binom_u64(52, 5) == 2598960);
    CHECK(binom_u64(5, 0) == 1);
    CHECK(binom_u64(4, 5) == 0);
    CHECK_THROWS_AS(binom_u64(70, 35), std::overflow_error);
}

TEST_CASE("gnp endpoints") {
    Hypergraph empty = gnp(12, 3, 0.0, 42);
    CHECK(empty.edge_count() == 0);
    Hypergraph full = gnp(9, 3, 1.0, 42);
    CHECK(full.edge_count() == binom_u64(9, 3));
}

TEST_CASE("gnp is deterministic in the spec") {
    RandomSpec spec{12, 3, 0.3, 99};
    CHECK(gnp(spec) == gnp(spec));
    RandomSpec other = spec;
    other.seed = 100;
    CHECK_FALSE(gnp(spec) == gnp(other));
}

TEST_CASE("gnp edge count matches its mean") {
    // 100 draws at n=20, p=0.1: mean should sit within 4 standard errors of
    // C(20,3) * 0.1 = 114
    const int trials = 100;
    double sum = 0.0;
    Rng rng(5);
    for (int t = 0; t < trials; ++t) {
        sum += static_cast<double>(gnp(20, 3, 0.1, rng.u64()).edge_count());
    }
    double mean = sum / trials;
    double sigma = std::sqrt(1140.0 * 0.1 * 0.9 / trials);
    CHECK(std::abs(mean - 114.0) < 4.0 * sigma);
}

TEST_CASE("split_exposure solves the union law") {
    ExposurePlan two = split_exposure(0.19, 2);
    CHECK(two.rounds == 2);
    CHECK(two.per_round_p == doctest::Approx(0.1).epsilon(1e-12));

    ExposurePlan four = split_exposure(0.5, 4);
    CHECK(four.per_round_p == doctest::Approx(0.1591035847462855).epsilon(1e-12));
    CHECK(four.defect_against(0.5) < 1e-12);

    CHECK(split_exposure(0.0, 3).per_round_p == 0.0);
    CHECK(split_exposure(0.37, 1).per_round_p == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("union of split rounds is distributed like a single draw") {
    // compare edge-count samples of (union of 4 rounds at p') vs G(n, p)
    const int n = 12, trials = 10000;
    const double p = 0.3;
    double pr = split_exposure(p, 4).per_round_p;
    Rng rng(17);
    std::vector<int> split_counts, direct_counts;
    split_counts.reserve(trials);
    direct_counts.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        Hypergraph u = gnp(n, 3, pr, rng.u64());
        for (int r = 1; r < 4; ++r) u = u.union_with(gnp(n, 3, pr, rng.u64()));
        split_counts.push_back(static_cast<int>(u.edge_count()));
        direct_counts.push_back(static_cast<int>(gnp(n, 3, p, rng.u64()).edge_count()));
    }
    CHECK(ks_statistic(split_counts, direct_counts) < 0.05);
}

TEST_CASE("extremal construction keeps exactly the crossing edges") {
    Hypergraph h0 = extremal_h0(10, 3, 0.2);
    CHECK(extremal_h0_part_size(10, 0.2) == 2);
    CHECK(h0.edge_count() == 64);  // C(10,3) - C(8,3)

    // one-vertex part on either side leaves the edges through that vertex
    CHECK(extremal_h0(10, 3, 0.15).edge_count() == binom_u64(10, 3) - binom_u64(9, 3));
    CHECK(extremal_h0(10, 3, 0.91).edge_count() == binom_u64(10, 3) - binom_u64(9, 3));

    CHECK_THROWS_AS(extremal_h0(10, 3, 0.05), std::invalid_argument);  // |A| = 0
}

TEST_CASE("the sparse side of the extremal construction is independent") {
    Hypergraph h0 = extremal_h0(12, 3, 0.25);
    int a = extremal_h0_part_size(12, 0.25);
    std::vector<char> b_side(12, 0);
    for (int v = a; v < 12; ++v) b_side[static_cast<std::size_t>(v)] = 1;
    CHECK(h0.restricted_to(b_side).edge_count() == 0);
    // and so is the dense side: only crossing triples are kept
    std::vector<char> a_side(12, 0);
    for (int v = 0; v < a; ++v) a_side[static_cast<std::size_t>(v)] = 1;
    CHECK(h0.restricted_to(a_side).edge_count() == 0);
}

TEST_CASE("extremal vertex degrees dominate the crossing-count floor") {
    for (int n : {8, 10, 13, 16}) {
        for (double alpha : {0.15, 0.25, 0.4, 0.5}) {
            int a = extremal_h0_part_size(n, alpha);
            if (a < 1 || a > n - 1 || n - a - 1 < 1) continue;
            Hypergraph h0 = extremal_h0(n, 3, alpha);
            long long floor_bound = static_cast<long long>(a) * static_cast<long long>(n - a - 1);
            CHECK(h0.min_d_degree(1) >= floor_bound);
        }
    }
}
