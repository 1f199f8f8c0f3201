#include "hyperham/exact_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace hyperham {

namespace {

using Clock = std::chrono::steady_clock;

// Membership tester with a bitmask fast path for n <= 64.
class EdgeTester {
public:
    explicit EdgeTester(const Hypergraph& h) : h_(h), small_(h.n() <= 64) {
        if (small_) {
            masks_.reserve(h.edge_count() * 2);
            for (const Edge& e : h.edges()) {
                std::uint64_t m = 0;
                for (Vertex v : e) m |= 1ull << v;
                masks_.insert(m);
            }
        }
        buf_.resize(static_cast<std::size_t>(h.k()));
    }

    bool contains(const std::vector<Vertex>& order, int from, int count, int modulo) {
        if (small_) {
            std::uint64_t m = 0;
            for (int i = 0; i < count; ++i) {
                m |= 1ull << order[static_cast<std::size_t>((from + i) % modulo)];
            }
            return masks_.count(m) > 0;
        }
        for (int i = 0; i < count; ++i) {
            buf_[static_cast<std::size_t>(i)] = order[static_cast<std::size_t>((from + i) % modulo)];
        }
        return h_.has_edge(buf_);
    }

private:
    const Hypergraph& h_;
    bool small_;
    std::unordered_set<std::uint64_t> masks_;
    std::vector<Vertex> buf_;
};

struct Search {
    const Hypergraph& h;
    EdgeTester tester;
    long long node_limit;
    Clock::time_point deadline;
    bool has_deadline;
    long long nodes = 0;
    bool exhausted = false;

    Search(const Hypergraph& graph, const SearchBudget& budget)
        : h(graph),
          tester(graph),
          node_limit(budget.node_limit),
          has_deadline(budget.time_limit_ms > 0) {
        if (has_deadline) deadline = Clock::now() + std::chrono::milliseconds(budget.time_limit_ms);
    }

    bool over_budget() {
        if (nodes >= node_limit) {
            exhausted = true;
            return true;
        }
        if (has_deadline && (nodes & 4095) == 0 && Clock::now() > deadline) {
            exhausted = true;
            return true;
        }
        return false;
    }
};

// Windows of the cyclic layout grouped by the highest position they touch, so
// the DFS (which fills positions 0, 1, 2, ... in order) can check each window
// exactly when its last position gets a vertex. Wrap-around windows always
// touch position n-1, so they group there.
std::vector<std::vector<int>> windows_completing_at(int n, int k, int step) {
    std::vector<std::vector<int>> at(static_cast<std::size_t>(n));
    int m = n / step;
    for (int j = 0; j < m; ++j) {
        int last = 0;
        for (int i = 0; i < k; ++i) {
            last = std::max(last, (j * step + i) % n);
        }
        at[static_cast<std::size_t>(last)].push_back(j);
    }
    return at;
}

bool dfs_cycle(Search& s, std::vector<Vertex>& order, std::vector<char>& used, int pos,
               const std::vector<std::vector<int>>& complete_at, int step) {
    int n = s.h.n();
    int k = s.h.k();
    if (pos == n) return true;
    if (s.over_budget()) return false;
    ++s.nodes;
    for (Vertex v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        order[static_cast<std::size_t>(pos)] = v;
        bool ok = true;
        for (int j : complete_at[static_cast<std::size_t>(pos)]) {
            if (!s.tester.contains(order, j * step, k, n)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            used[static_cast<std::size_t>(v)] = 1;
            if (dfs_cycle(s, order, used, pos + 1, complete_at, step)) return true;
            used[static_cast<std::size_t>(v)] = 0;
            if (s.exhausted) return false;
        }
    }
    return false;
}

bool dfs_path(Search& s, std::vector<Vertex>& tuple, std::vector<char>& used, int pos, int b,
              int step) {
    int n = s.h.n();
    int k = s.h.k();
    if (pos == b) return true;
    if (s.over_budget()) return false;
    ++s.nodes;
    bool completes = pos >= k - 1 && (pos - k + 1) % step == 0;
    for (Vertex v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        tuple[static_cast<std::size_t>(pos)] = v;
        if (completes && !s.tester.contains(tuple, pos - k + 1, k, b + 1)) continue;
        used[static_cast<std::size_t>(v)] = 1;
        if (dfs_path(s, tuple, used, pos + 1, b, step)) return true;
        used[static_cast<std::size_t>(v)] = 0;
        if (s.exhausted) return false;
    }
    return false;
}

void count_core(Search& s, std::vector<Vertex>& tuple, std::vector<char>& used, int pos, int core,
                const PathPattern& p, std::uint64_t& found) {
    int n = s.h.n();
    int k = p.k;
    int step = k - p.ell;
    if (pos == core) {
        ++found;
        return;
    }
    ++s.nodes;
    bool completes = pos >= k - 1 && (pos - k + 1) % step == 0;
    for (Vertex v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        tuple[static_cast<std::size_t>(pos)] = v;
        if (completes && !s.tester.contains(tuple, pos - k + 1, k, core + 1)) continue;
        used[static_cast<std::size_t>(v)] = 1;
        count_core(s, tuple, used, pos + 1, core, p, found);
        used[static_cast<std::size_t>(v)] = 0;
    }
}

}  // namespace

OracleResult hamilton_exists(const Hypergraph& h, int ell, const SearchBudget& budget) {
    int k = h.k();
    int n = h.n();
    if (ell < 1 || ell >= k) throw std::invalid_argument("hamilton_exists: l must be in [1, k-1]");
    int step = k - ell;
    if (n % step != 0) {
        throw std::invalid_argument("hamilton_exists: n=" + std::to_string(n) +
                                    " not divisible by k-l=" + std::to_string(step));
    }
    if (n / step < 3) {
        throw std::invalid_argument("hamilton_exists: fewer than 3 windows fit (n/(k-l) = " +
                                    std::to_string(n / step) + ")");
    }
    if (n < k) throw std::invalid_argument("hamilton_exists: n < k");

    OracleResult res;
    Search s(h, budget);
    // every vertex sits inside some window, so an isolated vertex settles it
    for (Vertex v = 0; v < n; ++v) {
        if (h.incident(v).empty()) {
            res.outcome = Ternary::kNo;
            return res;
        }
    }

    auto complete_at = windows_completing_at(n, k, step);
    std::vector<Vertex> order(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> first(static_cast<std::size_t>(k));

    for (int id : h.incident(0)) {
        const Edge& e = h.edges()[static_cast<std::size_t>(id)];
        first.assign(e.begin(), e.end());
        std::sort(first.begin(), first.end());
        do {
            for (int i = 0; i < k; ++i) {
                order[static_cast<std::size_t>(i)] = first[static_cast<std::size_t>(i)];
                used[static_cast<std::size_t>(first[static_cast<std::size_t>(i)])] = 1;
            }
            // any window grouped at position i has all its positions <= i,
            // so checking it right after the prefix is filled is sound
            bool ok = true;
            for (int i = 0; i < k; ++i) {
                for (int j : complete_at[static_cast<std::size_t>(i)]) {
                    if (!s.tester.contains(order, j * step, k, n)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok && dfs_cycle(s, order, used, k, complete_at, step)) {
                res.outcome = Ternary::kYes;
                res.witness = CycleWitness{order, k, ell};
                res.nodes = s.nodes;
                return res;
            }
            for (int i = 0; i < k; ++i) used[static_cast<std::size_t>(first[static_cast<std::size_t>(i)])] = 0;
            if (s.exhausted) {
                res.outcome = Ternary::kUnknown;
                res.nodes = s.nodes;
                return res;
            }
        } while (std::next_permutation(first.begin(), first.end()));
    }
    res.outcome = Ternary::kNo;
    res.nodes = s.nodes;
    return res;
}

OracleResult ell_path_exists(const Hypergraph& h, int ell, int a, const SearchBudget& budget) {
    int k = h.k();
    if (ell < 1 || ell >= k) throw std::invalid_argument("ell_path_exists: l must be in [1, k-1]");
    if (a < 1) throw std::invalid_argument("ell_path_exists: a must be >= 1");
    int b = path_vertex_count(k, ell, a);
    OracleResult res;
    if (b > h.n() || h.edge_count() == 0) {
        res.outcome = Ternary::kNo;
        return res;
    }
    Search s(h, budget);
    std::vector<Vertex> tuple(static_cast<std::size_t>(b), -1);
    std::vector<char> used(static_cast<std::size_t>(h.n()), 0);
    if (dfs_path(s, tuple, used, 0, b, k - ell)) {
        res.outcome = Ternary::kYes;
        res.path = tuple;
    } else {
        res.outcome = s.exhausted ? Ternary::kUnknown : Ternary::kNo;
    }
    res.nodes = s.nodes;
    return res;
}

std::uint64_t count_labeled_copies(const Hypergraph& h, const PathPattern& pattern) {
    pattern.validate();
    if (pattern.k != h.k()) throw std::invalid_argument("count_labeled_copies: pattern k differs from graph");
    int b = pattern.vertex_count();
    if (b > h.n()) return 0;
    int core = b - 2 * pattern.x;

    SearchBudget unlimited;
    unlimited.node_limit = std::numeric_limits<long long>::max();
    Search s(h, unlimited);
    std::uint64_t core_count = 0;
    if (core == 0) {
        core_count = 1;
    } else {
        std::vector<Vertex> tuple(static_cast<std::size_t>(core), -1);
        std::vector<char> used(static_cast<std::size_t>(h.n()), 0);
        count_core(s, tuple, used, 0, core, pattern, core_count);
    }
    // Pads are any ordered choice of 2x further distinct vertices.
    std::uint64_t result = core_count;
    for (int i = 0; i < 2 * pattern.x; ++i) {
        std::uint64_t factor = static_cast<std::uint64_t>(h.n() - core - i);
        if (factor != 0 && result > UINT64_MAX / factor) {
            throw std::overflow_error("count_labeled_copies: count exceeds 64 bits");
        }
        result *= factor;
    }
    return result;
}

}  // namespace hyperham
