#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperham/exact_oracle.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/random_models.hpp"
#include "hyperham/rng.hpp"

using namespace hyperham;

namespace {

// reference count: try every injective tuple over the pattern length
std::uint64_t brute_count(const Hypergraph& h, const PathPattern& pat) {
    int b = pat.vertex_count();
    int n = h.n();
    if (b > n) return 0;
    OrderedTuple t;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == b) {
            total += spans_labeled_copy(h, t, pat) ? 1 : 0;
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            t.push_back(v);
            self(self, pos + 1);
            t.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec(rec, 0);
    return total;
}

}  // namespace

TEST_CASE("cycle search on dense and empty graphs") {
    OracleResult yes = hamilton_exists(Hypergraph::complete(3, 5), 2);
    CHECK(yes.outcome == Ternary::kYes);
    CHECK(is_hamiltonian_cycle(Hypergraph::complete(3, 5), yes.witness));

    OracleResult no = hamilton_exists(Hypergraph(3, 6), 2);
    CHECK(no.outcome == Ternary::kNo);
}

TEST_CASE("the thin extremal instance has no tight Hamilton cycle") {
    // |A| = 1 can serve at most k windows, but n windows each need A
    Hypergraph h0 = extremal_h0(6, 3, 0.2);
    CHECK(hamilton_exists(h0, 2).outcome == Ternary::kNo);
}

TEST_CASE("oracle rejects malformed instances") {
    CHECK_THROWS_AS(hamilton_exists(Hypergraph::complete(3, 5), 1), std::invalid_argument);
    CHECK_THROWS_AS(hamilton_exists(Hypergraph::complete(3, 4), 1), std::invalid_argument);
}

TEST_CASE("budget exhaustion is reported as unknown") {
    SearchBudget tiny;
    tiny.node_limit = 5;
    OracleResult r = hamilton_exists(Hypergraph::complete(3, 30), 2, tiny);
    CHECK(r.outcome == Ternary::kUnknown);
}

TEST_CASE("path search on a single edge") {
    Hypergraph h(3, 5);
    h.add_edge({0, 1, 2});
    OracleResult one = ell_path_exists(h, 2, 1);
    CHECK(one.outcome == Ternary::kYes);
    CHECK(one.path.size() == 3);
    CHECK(spans_ell_path(h, one.path, 2));
    CHECK(ell_path_exists(h, 2, 2).outcome == Ternary::kNo);
}

TEST_CASE("every yes-witness passes the checker") {
    Rng rng(3);
    int yes_seen = 0, no_seen = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int ell = 1 + static_cast<int>(rng.below(2));
        int step = 3 - ell;
        int n = 6 + static_cast<int>(rng.below(3));
        n -= n % step;
        double p = 0.3 + 0.4 * rng.unit();
        Hypergraph g = gnp(n, 3, p, rng.u64());
        OracleResult r = hamilton_exists(g, ell);
        if (r.outcome == Ternary::kYes) {
            ++yes_seen;
            CHECK(is_hamiltonian_cycle(g, r.witness));
            CHECK(r.nodes > 0);
        } else if (r.outcome == Ternary::kNo) {
            ++no_seen;
        }
    }
    CHECK(yes_seen > 10);
    CHECK(no_seen > 10);
}

TEST_CASE("labeled copy counts on structured graphs") {
    // complete graph: every injective b-tuple spans, so the count is (n)_b
    PathPattern two{3, 2, 2, 0};
    CHECK(count_labeled_copies(Hypergraph::complete(3, 6), two) == 360);
    CHECK(count_labeled_copies(Hypergraph(3, 6), two) == 0);

    PathPattern padded{3, 2, 1, 1};
    CHECK(count_labeled_copies(Hypergraph::complete(3, 6), padded) == 720);  // b = 5

    // the two-window tight path counted inside itself: both windows admit the
    // swap of their private pair, giving four labelings, two per orientation
    Hypergraph path(3, 4);
    path.add_edge({0, 1, 2});
    path.add_edge({1, 2, 3});
    CHECK(count_labeled_copies(path, two) == 4);
    CHECK(brute_count(path, two) == 4);
}

TEST_CASE("labeled copy counts match brute enumeration on random graphs") {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        Hypergraph g = gnp(7, 3, 0.35, rng.u64());
        for (PathPattern pat : {PathPattern{3, 2, 2, 0}, PathPattern{3, 1, 2, 0},
                                PathPattern{3, 2, 1, 1}}) {
            CHECK(count_labeled_copies(g, pat) == brute_count(g, pat));
        }
    }
}

TEST_CASE("copy counts concentrate on their mean") {
    // 200 sparse draws: the sample mean of labeled two-window paths should sit
    // within five standard errors of (12)_4 p^2 = 475.2
    PathPattern pat{3, 2, 2, 0};
    const int trials = 200;
    Rng rng(101);
    std::vector<double> counts;
    counts.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        counts.push_back(static_cast<double>(count_labeled_copies(gnp(12, 3, 0.2, rng.u64()), pat)));
    }
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= trials;
    double var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    var /= (trials - 1);
    double se = std::sqrt(var / trials);
    CHECK(std::abs(mean - 475.2) < 5.0 * se);
}
