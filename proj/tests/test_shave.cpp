#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/random_models.hpp"
#include "hyperham/rng.hpp"
#include "hyperham/shave.hpp"

using namespace hyperham;

namespace {

// reference fixpoint: scan l-sets in reverse lexicographic order and restart
// after every deletion wave; confluence says the surviving edge set matches
Hypergraph reference_shave(const Hypergraph& h, int ell, long long threshold) {
    std::vector<Edge> alive = h.edges();
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<Edge, long long> deg;
        for (const Edge& e : alive) {
            std::vector<int> idx(static_cast<std::size_t>(ell));
            for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
            for (;;) {
                Edge s(static_cast<std::size_t>(ell));
                for (int i = 0; i < ell; ++i) s[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
                ++deg[s];
                int i = ell - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == h.k() - ell + i) --i;
                if (i < 0) break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < ell; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
        for (auto it = deg.rbegin(); it != deg.rend(); ++it) {
            if (it->second > 0 && it->second < threshold) {
                const Edge& s = it->first;
                std::vector<Edge> next;
                for (const Edge& e : alive) {
                    if (!std::includes(e.begin(), e.end(), s.begin(), s.end())) next.push_back(e);
                }
                alive.swap(next);
                changed = true;
                break;
            }
        }
    }
    Hypergraph out(h.k(), h.n());
    for (const Edge& e : alive) out.add_edge(e);
    return out;
}

}  // namespace

TEST_CASE("dense graphs survive untouched") {
    Hypergraph complete = Hypergraph::complete(3, 6);
    ShaveResult r = shave(complete, 2, 2);
    CHECK(r.shaved.edge_count() == complete.edge_count());
    CHECK(r.zeroed_sets.empty());
    CHECK(r.threshold == 2);
}

TEST_CASE("a single edge is shaved away entirely") {
    Hypergraph h(3, 5);
    h.add_edge({0, 1, 2});
    ShaveResult r = shave(h, 2, 2);
    CHECK(r.shaved.edge_count() == 0);
    CHECK_FALSE(r.zeroed_sets.empty());
}

TEST_CASE("the extremal instance is already shaved at threshold 2") {
    Hypergraph h0 = extremal_h0(10, 3, 0.2);  // pair degrees are 2 or 8
    ShaveResult r = shave(h0, 2, 2);
    CHECK(r.shaved.edge_count() == h0.edge_count());
}

TEST_CASE("shaving invariants on random graphs") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 8 + static_cast<int>(rng.below(5));
        Hypergraph g = gnp(n, 3, 0.15, rng.u64());
        long long theta = 2 + static_cast<long long>(rng.below(2));
        ShaveResult r = shave(g, 2, theta);

        // survivors form a subgraph
        for (const Edge& e : r.shaved.edges()) CHECK(g.has_edge(e));

        // every l-set now has degree 0 or >= theta
        for (const Edge& s : r.shaved.shadow(2)) CHECK(r.shaved.degree(s) >= theta);

        // each processed l-set kills at most theta-1 edges
        long long lsets = static_cast<long long>(binom_u64(n, 2));
        CHECK(static_cast<long long>(r.shaved.edge_count()) >=
              static_cast<long long>(g.edge_count()) - lsets * (theta - 1));
    }
}

TEST_CASE("the fixpoint does not depend on processing order") {
    Rng rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 7 + static_cast<int>(rng.below(5));
        Hypergraph g = gnp(n, 3, 0.12, rng.u64());
        ShaveResult r = shave(g, 2, 2);
        CHECK(r.shaved == reference_shave(g, 2, 2));
    }
}

TEST_CASE("shaving is idempotent and monotone in the threshold") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        Hypergraph g = gnp(10, 3, 0.2, rng.u64());
        ShaveResult once = shave(g, 2, 3);
        ShaveResult twice = shave(once.shaved, 2, 3);
        CHECK(once.shaved == twice.shaved);

        ShaveResult harder = shave(g, 2, 4);
        for (const Edge& e : harder.shaved.edges()) CHECK(once.shaved.has_edge(e));
    }
}

TEST_CASE("vertex classification") {
    Hypergraph empty(3, 6);
    auto [low_all, high_none] = classify_vertices(empty, 1);
    CHECK(low_all.size() == 6);
    CHECK(high_none.empty());

    Hypergraph complete = Hypergraph::complete(3, 6);
    auto [low_none, high_all] = classify_vertices(complete, binom_u64(5, 2));
    CHECK(low_none.empty());
    CHECK(high_all.size() == 6);
    CHECK(std::is_sorted(high_all.begin(), high_all.end()));

    // after shaving a lone edge everything is low
    Hypergraph h(3, 5);
    h.add_edge({0, 1, 2});
    ShaveResult r = shave(h, 2, 2, 1);
    CHECK(r.low_vertices.size() == 5);
}

TEST_CASE("shave rejects bad arities") {
    Hypergraph g = Hypergraph::complete(3, 6);
    CHECK_THROWS_AS(shave(g, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(shave(g, 0, 2), std::invalid_argument);
}
