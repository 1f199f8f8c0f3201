#include "hyperham/shave.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace hyperham {

namespace {

// Enumerate the l-subsets of a sorted edge, invoking fn(sorted l-set).
template <class Fn>
void for_each_subset(const Edge& edge, int ell, Fn&& fn) {
    int k = static_cast<int>(edge.size());
    std::vector<int> idx(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
    Edge s(static_cast<std::size_t>(ell));
    for (;;) {
        for (int i = 0; i < ell; ++i) s[static_cast<std::size_t>(i)] = edge[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        fn(s);
        int i = ell - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - ell + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < ell; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

ShaveResult shave(const Hypergraph& h, int ell, long long threshold, long long vertex_bound) {
    if (ell < 1 || ell >= h.k()) {
        throw std::invalid_argument("shave: l must be in [1, k-1], got " + std::to_string(ell));
    }
    if (threshold < 1) throw std::invalid_argument("shave: threshold must be >= 1");

    // Degree counters over the l-shadow plus l-set -> incident edge ids.
    std::unordered_map<Edge, long long, EdgeHash> deg;
    std::unordered_map<Edge, std::vector<int>, EdgeHash> star;
    const auto& edges = h.edges();
    for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
        for_each_subset(edges[static_cast<std::size_t>(id)], ell, [&](const Edge& s) {
            ++deg[s];
            star[s].push_back(id);
        });
    }

    std::vector<char> alive(edges.size(), 1);
    std::deque<Edge> work;
    std::unordered_map<Edge, char, EdgeHash> queued;
    // Seed the worklist in the deterministic order of h.shadow(l).
    for (const Edge& s : h.shadow(ell)) {
        long long d = deg[s];
        if (d > 0 && d < threshold) {
            work.push_back(s);
            queued[s] = 1;
        }
    }

    ShaveResult res{Hypergraph(h.k(), h.n()), {}, threshold, {}};
    while (!work.empty()) {
        Edge s = work.front();
        work.pop_front();
        queued[s] = 0;
        long long d = deg[s];
        if (d == 0 || d >= threshold) continue;  // stale entry
        res.zeroed_sets.push_back(s);
        for (int id : star[s]) {
            if (!alive[static_cast<std::size_t>(id)]) continue;
            alive[static_cast<std::size_t>(id)] = 0;
            for_each_subset(edges[static_cast<std::size_t>(id)], ell, [&](const Edge& t) {
                long long nd = --deg[t];
                if (nd > 0 && nd < threshold && !queued[t]) {
                    work.push_back(t);
                    queued[t] = 1;
                }
            });
        }
    }

    for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
        if (alive[static_cast<std::size_t>(id)]) res.shaved.add_edge(edges[static_cast<std::size_t>(id)]);
    }
    if (vertex_bound > 0) {
        res.low_vertices = classify_vertices(res.shaved, vertex_bound).first;
    }
    return res;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> classify_vertices(const Hypergraph& h,
                                                                      long long bound) {
    if (bound < 0) throw std::invalid_argument("classify_vertices: bound must be >= 0");
    std::vector<Vertex> low, high;
    for (Vertex v = 0; v < h.n(); ++v) {
        long long d = static_cast<long long>(h.incident(v).size());
        if (d < bound) {
            low.push_back(v);
        } else {
            high.push_back(v);
        }
    }
    return {low, high};
}

}  // namespace hyperham
