#include "hyperham/absorb_connect.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "hyperham/errors.hpp"

namespace hyperham {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void require_ell_tuple(const OrderedTuple& t, int ell, const char* what) {
    if (static_cast<int>(t.size()) != ell) {
        throw std::invalid_argument(std::string(what) + ": expected an ordered " +
                                    std::to_string(ell) + "-set, got " + std::to_string(t.size()) +
                                    " vertices");
    }
}

bool tuples_overlap(const OrderedTuple& a, const OrderedTuple& b) {
    for (Vertex v : a) {
        if (std::find(b.begin(), b.end(), v) != b.end()) return true;
    }
    return false;
}

void mark(std::vector<char>& mask, const OrderedTuple& t) {
    for (Vertex v : t) mask[static_cast<std::size_t>(v)] = 1;
}

void unmark(std::vector<char>& mask, const OrderedTuple& t) {
    for (Vertex v : t) mask[static_cast<std::size_t>(v)] = 0;
}

std::vector<Vertex> free_vertices(const std::vector<char>& mask) {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < mask.size(); ++v) {
        if (!mask[v]) out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

// Draws `count` distinct free vertices uniformly, or nothing if too few exist.
std::optional<OrderedTuple> draw_free(const std::vector<char>& mask, int count, Rng& rng) {
    std::vector<Vertex> pool = free_vertices(mask);
    if (static_cast<int>(pool.size()) < count) return std::nullopt;
    OrderedTuple out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::size_t j = static_cast<std::size_t>(i) + rng.index(pool.size() - static_cast<std::size_t>(i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return out;
}

// Edges of h through all of `end_set` whose remaining vertices are all unused.
std::vector<int> admissible_edges(const Hypergraph& h, const OrderedTuple& end,
                                  const std::vector<char>& used) {
    Edge end_sorted(end.begin(), end.end());
    std::sort(end_sorted.begin(), end_sorted.end());
    // scan the shortest incident list among the end's vertices
    Vertex pivot = end[0];
    for (Vertex v : end) {
        if (h.incident(v).size() < h.incident(pivot).size()) pivot = v;
    }
    std::vector<int> out;
    for (int id : h.incident(pivot)) {
        const Edge& e = h.edges()[static_cast<std::size_t>(id)];
        if (!std::includes(e.begin(), e.end(), end_sorted.begin(), end_sorted.end())) continue;
        bool ok = true;
        for (Vertex v : e) {
            if (used[static_cast<std::size_t>(v)] &&
                std::find(end.begin(), end.end(), v) == end.end()) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(id);
    }
    return out;
}

}  // namespace

PathConstants path_constants(int k, int ell) {
    if (ell < 1 || ell >= k) {
        throw std::invalid_argument("path_constants: need 1 <= l < k, got k=" + std::to_string(k) +
                                    " l=" + std::to_string(ell));
    }
    PathConstants pc;
    pc.k = k;
    pc.ell = ell;
    int step = k - ell;
    pc.t1 = ceil_div(ell, step);
    pc.t2 = pc.t1 * step - ell;
    pc.t3 = 3 * pc.t1 * step - ell;
    pc.t4 = ceil_div(3 * k - ell - 2, step);
    pc.t5 = pc.t4 * step;
    pc.t6 = (k - 1) / step + 1;
    return pc;
}

ExtendResult greedy_extend(const Hypergraph& h, int ell, const OrderedTuple& seed, int steps,
                           const std::vector<char>& forbidden, Rng& rng) {
    int k = h.k();
    int n = h.n();
    if (ell < 1 || ell >= k) throw std::invalid_argument("greedy_extend: need 1 <= l < k");
    if (forbidden.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("greedy_extend: forbidden mask must have n entries");
    }
    if (static_cast<int>(seed.size()) < ell ||
        (static_cast<int>(seed.size()) - ell) % (k - ell) != 0) {
        throw std::invalid_argument("greedy_extend: seed length must be l plus a multiple of k-l");
    }
    validate_tuple(seed, n, "greedy_extend");
    if (steps < 0) throw std::invalid_argument("greedy_extend: steps must be nonnegative");

    ExtendResult res;
    res.tuple = seed;
    std::vector<char> used = forbidden;
    for (Vertex v : seed) used[static_cast<std::size_t>(v)] = 1;

    OrderedTuple end(static_cast<std::size_t>(ell));
    for (int s = 0; s < steps; ++s) {
        std::copy(res.tuple.end() - ell, res.tuple.end(), end.begin());
        std::vector<int> ids = admissible_edges(h, end, used);
        if (ids.empty()) {
            res.ok = false;
            res.failed_step = s;
            res.stuck_end = end;
            return res;
        }
        const Edge& e = h.edges()[static_cast<std::size_t>(ids[rng.index(ids.size())])];
        OrderedTuple fresh;
        fresh.reserve(static_cast<std::size_t>(k - ell));
        for (Vertex v : e) {
            if (std::find(end.begin(), end.end(), v) == end.end()) fresh.push_back(v);
        }
        rng.shuffle(fresh);
        for (Vertex v : fresh) {
            used[static_cast<std::size_t>(v)] = 1;
            res.tuple.push_back(v);
        }
    }
    res.ok = true;
    res.failed_step = -1;
    return res;
}

bool connects(const Hypergraph& u, const OrderedTuple& a, const OrderedTuple& b,
              const OrderedTuple& c, const PathConstants& pc) {
    require_ell_tuple(a, pc.ell, "connects: A");
    require_ell_tuple(b, pc.ell, "connects: B");
    if (static_cast<int>(c.size()) != pc.t3) {
        throw std::invalid_argument("connects: C must have t3=" + std::to_string(pc.t3) +
                                    " vertices, got " + std::to_string(c.size()));
    }
    if (tuples_overlap(a, b) || tuples_overlap(a, c) || tuples_overlap(b, c)) {
        throw std::invalid_argument("connects: A, B, C must be pairwise disjoint");
    }
    OrderedTuple acb;
    acb.reserve(a.size() + c.size() + b.size());
    acb.insert(acb.end(), a.begin(), a.end());
    acb.insert(acb.end(), c.begin(), c.end());
    acb.insert(acb.end(), b.begin(), b.end());
    return spans_labeled_copy(u, acb, PathPattern{pc.k, pc.ell, 3 * pc.t1, 0});
}

std::optional<OrderedTuple> make_connector(const Hypergraph& anchor, const Hypergraph& uni,
                                           const OrderedTuple& a, const OrderedTuple& b,
                                           const std::vector<char>& blocked,
                                           const PathConstants& pc, Rng& rng, bool escalate) {
    const Hypergraph& ext_graph = escalate ? uni : anchor;

    std::vector<char> used = blocked;
    mark(used, a);
    mark(used, b);

    ExtendResult fwd = greedy_extend(ext_graph, pc.ell, a, pc.t1, used, rng);
    if (!fwd.ok) return std::nullopt;
    mark(used, fwd.tuple);

    OrderedTuple b_rev(b.rbegin(), b.rend());
    ExtendResult bwd = greedy_extend(ext_graph, pc.ell, b_rev, pc.t1, used, rng);
    if (!bwd.ok) return std::nullopt;
    mark(used, bwd.tuple);

    std::optional<OrderedTuple> pads = draw_free(used, pc.t2, rng);
    if (!pads) return std::nullopt;

    OrderedTuple c;
    c.reserve(static_cast<std::size_t>(pc.t3));
    c.insert(c.end(), fwd.tuple.begin() + pc.ell, fwd.tuple.end());
    c.insert(c.end(), pads->begin(), pads->end());
    // bwd extended b backwards, so its fresh vertices re-reverse into place
    for (std::size_t i = bwd.tuple.size(); i > static_cast<std::size_t>(pc.ell); --i) {
        c.push_back(bwd.tuple[i - 1]);
    }
    if (static_cast<int>(c.size()) != pc.t3) return std::nullopt;
    if (!connects(uni, a, b, c, pc)) return std::nullopt;
    return c;
}

namespace {

// Shared state of one labeled_path_search invocation.
struct PathSearcher {
    const Hypergraph& g;
    const PathSearchSpec& spec;
    Rng& rng;
    OrderedTuple tuple;      // -1 marks an unfilled position
    std::vector<char> used;  // vertices currently on the path
    long long nodes = 0;
    bool out_of_budget = false;

    PathSearcher(const Hypergraph& graph, const PathSearchSpec& s, Rng& r)
        : g(graph), spec(s), rng(r), tuple(s.slots.size(), -1),
          used(static_cast<std::size_t>(graph.n()), 0) {}

    bool fits(Vertex v, int pos) const {
        if (used[static_cast<std::size_t>(v)]) return false;
        switch (spec.slots[static_cast<std::size_t>(pos)]) {
            case SlotClass::kReserve:
                return spec.reserve && (*spec.reserve)[static_cast<std::size_t>(v)];
            case SlotClass::kTerritory:
                return spec.territory && (*spec.territory)[static_cast<std::size_t>(v)];
            case SlotClass::kFixed:
                return spec.fixed[static_cast<std::size_t>(pos)] == v;
        }
        return false;
    }

    bool end_ok(int start) const {
        if (!spec.ends_in) return true;
        Edge s(tuple.begin() + start, tuple.begin() + start + spec.ell);
        std::sort(s.begin(), s.end());
        return std::binary_search(spec.ends_in->begin(), spec.ends_in->end(), s);
    }

    bool spend() {
        if (++nodes > spec.budget) out_of_budget = true;
        return !out_of_budget;
    }

    // Places `verts` (some permutation) into the open positions and recurses.
    bool try_assignments(int window, std::vector<Vertex> verts, const std::vector<int>& open) {
        std::sort(verts.begin(), verts.end());
        std::vector<std::vector<Vertex>> perms;
        do {
            perms.push_back(verts);
        } while (std::next_permutation(verts.begin(), verts.end()));
        rng.shuffle(perms);
        for (const auto& perm : perms) {
            if (!spend()) return false;
            bool ok = true;
            for (std::size_t i = 0; i < open.size(); ++i) {
                if (!fits(perm[i], open[i])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (std::size_t i = 0; i < open.size(); ++i) {
                tuple[static_cast<std::size_t>(open[i])] = perm[i];
                used[static_cast<std::size_t>(perm[i])] = 1;
            }
            if (fill(window + 1)) return true;
            for (std::size_t i = 0; i < open.size(); ++i) {
                tuple[static_cast<std::size_t>(open[i])] = -1;
                used[static_cast<std::size_t>(perm[i])] = 0;
            }
            if (out_of_budget) return false;
        }
        return false;
    }

    // Completes window `w` given the vertices already on it, then recurses.
    bool extend_window(int w) {
        int k = g.k();
        int s = w * (k - spec.ell);
        Edge req;
        std::vector<int> open;
        for (int p = s; p < s + k; ++p) {
            Vertex v = tuple[static_cast<std::size_t>(p)];
            if (v >= 0) req.push_back(v);
            else open.push_back(p);
        }
        if (open.empty()) {
            return g.has_edge(req) && fill(w + 1);
        }
        std::sort(req.begin(), req.end());
        std::vector<int> ids;
        if (req.empty()) {
            // fully open window (no fixed slot, no end-set seeding): any edge
            ids.resize(g.edge_count());
            std::iota(ids.begin(), ids.end(), 0);
        } else {
            Vertex pivot = req[0];
            for (Vertex v : req) {
                if (g.incident(v).size() < g.incident(pivot).size()) pivot = v;
            }
            ids = g.incident(pivot);
        }
        rng.shuffle(ids);
        for (int id : ids) {
            if (!spend()) return false;
            const Edge& e = g.edges()[static_cast<std::size_t>(id)];
            if (!std::includes(e.begin(), e.end(), req.begin(), req.end())) continue;
            std::vector<Vertex> fresh;
            std::set_difference(e.begin(), e.end(), req.begin(), req.end(),
                                std::back_inserter(fresh));
            if (fresh.size() != open.size()) continue;
            if (try_assignments(w, std::move(fresh), open)) return true;
            if (out_of_budget) return false;
        }
        return false;
    }

    bool fill(int w) {
        if (out_of_budget) return false;
        if (w == spec.edges) {
            int b = static_cast<int>(spec.slots.size());
            return end_ok(0) && end_ok(b - spec.ell);
        }
        int k = g.k();
        int s = w * (k - spec.ell);
        bool anchored = false;
        for (int p = s; p < s + k; ++p) {
            if (tuple[static_cast<std::size_t>(p)] >= 0) anchored = true;
        }
        if (anchored || !spec.ends_in) return extend_window(w);

        // nothing on the first window yet: seed its leading l-set from ends_in
        std::vector<int> order(spec.ends_in->size());
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        std::vector<int> head(static_cast<std::size_t>(spec.ell));
        std::iota(head.begin(), head.end(), 0);
        for (int mi : order) {
            if (!spend()) return false;
            if (try_assignments(w - 1, (*spec.ends_in)[static_cast<std::size_t>(mi)], head)) {
                return true;
            }
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

std::optional<OrderedTuple> labeled_path_search(const Hypergraph& g, const PathSearchSpec& spec,
                                                Rng& rng) {
    int k = g.k();
    if (spec.ell < 1 || spec.ell >= k) {
        throw std::invalid_argument("labeled_path_search: need 1 <= l < k");
    }
    if (spec.edges < 1) throw std::invalid_argument("labeled_path_search: need at least one edge");
    std::size_t b = static_cast<std::size_t>(spec.ell + spec.edges * (k - spec.ell));
    if (spec.slots.size() != b || spec.fixed.size() != b) {
        throw std::invalid_argument("labeled_path_search: slots/fixed must have " +
                                    std::to_string(b) + " entries");
    }
    std::size_t n = static_cast<std::size_t>(g.n());
    if ((spec.reserve && spec.reserve->size() != n) ||
        (spec.territory && spec.territory->size() != n)) {
        throw std::invalid_argument("labeled_path_search: masks must have n entries");
    }

    PathSearcher ps(g, spec, rng);
    for (std::size_t p = 0; p < b; ++p) {
        if (spec.slots[p] != SlotClass::kFixed) continue;
        Vertex v = spec.fixed[p];
        if (v < 0 || v >= g.n()) {
            throw std::invalid_argument("labeled_path_search: fixed vertex out of range");
        }
        if (ps.used[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("labeled_path_search: fixed vertices must be distinct");
        }
        ps.tuple[p] = v;
        ps.used[static_cast<std::size_t>(v)] = 1;
    }
    if (!ps.fill(0)) return std::nullopt;
    return ps.tuple;
}

std::optional<OrderedTuple> find_connector(const Hypergraph& g, const OrderedTuple& a,
                                           const OrderedTuple& b, const std::vector<char>& avail,
                                           const PathConstants& pc, long long budget, Rng& rng) {
    require_ell_tuple(a, pc.ell, "find_connector: A");
    require_ell_tuple(b, pc.ell, "find_connector: B");
    if (tuples_overlap(a, b)) throw std::invalid_argument("find_connector: A and B overlap");

    std::size_t len = static_cast<std::size_t>(2 * pc.ell + pc.t3);
    PathSearchSpec spec;
    spec.ell = pc.ell;
    spec.edges = 3 * pc.t1;
    spec.slots.assign(len, SlotClass::kReserve);
    spec.fixed.assign(len, -1);
    for (int i = 0; i < pc.ell; ++i) {
        spec.slots[static_cast<std::size_t>(i)] = SlotClass::kFixed;
        spec.fixed[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        std::size_t tail = len - static_cast<std::size_t>(pc.ell) + static_cast<std::size_t>(i);
        spec.slots[tail] = SlotClass::kFixed;
        spec.fixed[tail] = b[static_cast<std::size_t>(i)];
    }
    spec.reserve = &avail;
    spec.budget = budget;

    std::optional<OrderedTuple> t = labeled_path_search(g, spec, rng);
    if (!t) return std::nullopt;
    return OrderedTuple(t->begin() + pc.ell, t->end() - pc.ell);
}

std::vector<int> ConnectorLibrary::usable(const OrderedTuple& a, const OrderedTuple& b) const {
    std::vector<int> out;
    for (std::size_t d = 0; d < demands_.size(); ++d) {
        if (demands_[d].first != a || demands_[d].second != b) continue;
        for (std::size_t m = 0; m < members_.size(); ++m) {
            if (!members_[m].used && members_[m].demand == static_cast<int>(d)) {
                out.push_back(static_cast<int>(m));
            }
        }
    }
    return out;
}

int ConnectorLibrary::take(const OrderedTuple& a, const OrderedTuple& b) {
    std::vector<int> ids = usable(a, b);
    if (ids.empty()) return -1;
    members_[static_cast<std::size_t>(ids.front())].used = true;
    return ids.front();
}

FamilySelection select_disjoint_family(const std::vector<OrderedTuple>& candidates,
                                       const std::vector<std::vector<int>>& serves,
                                       int demand_count, const LibraryConfig& cfg, Rng& rng) {
    if (serves.size() != candidates.size()) {
        throw std::invalid_argument("select_disjoint_family: serves must parallel candidates");
    }
    FamilySelection sel;
    sel.per_demand.assign(static_cast<std::size_t>(std::max(demand_count, 0)), 0);

    // canonical rank first so the outcome ignores input order, then shuffle
    std::vector<int> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (candidates[static_cast<std::size_t>(lhs)] != candidates[static_cast<std::size_t>(rhs)]) {
            return candidates[static_cast<std::size_t>(lhs)] < candidates[static_cast<std::size_t>(rhs)];
        }
        return serves[static_cast<std::size_t>(lhs)] < serves[static_cast<std::size_t>(rhs)];
    });
    rng.shuffle(order);

    std::unordered_set<Vertex> taken;
    for (int idx : order) {
        if (static_cast<int>(sel.chosen.size()) >= cfg.family_budget) break;
        const OrderedTuple& cand = candidates[static_cast<std::size_t>(idx)];
        bool clash = false;
        for (Vertex v : cand) {
            if (taken.count(v)) {
                clash = true;
                break;
            }
        }
        if (clash) continue;
        // duplicate tuples conflict with themselves, so dedupe comes for free
        for (Vertex v : cand) taken.insert(v);
        sel.chosen.push_back(idx);
        for (int d : serves[static_cast<std::size_t>(idx)]) {
            if (d >= 0 && d < demand_count) ++sel.per_demand[static_cast<std::size_t>(d)];
        }
    }
    return sel;
}

ConnectorLibrary build_connector_library(const Hypergraph& anchor, const Hypergraph& uni,
                                         const std::vector<std::pair<OrderedTuple, OrderedTuple>>& demands,
                                         const std::vector<char>& excluded,
                                         const LibraryConfig& cfg, Rng& rng) {
    // members are built one at a time; each one's body is blocked for the rest,
    // so the family is pairwise disjoint by construction
    std::vector<Connector> members;
    std::vector<DemandShortfall> shortfalls;
    if (!demands.empty()) {
        int ell = static_cast<int>(demands.front().first.size());
        PathConstants constants = path_constants(uni.k(), ell);
        std::vector<char> blocked = excluded;
        for (const auto& [a, b] : demands) {
            require_ell_tuple(a, ell, "build_connector_library: demand A");
            require_ell_tuple(b, ell, "build_connector_library: demand B");
            mark(blocked, a);
            mark(blocked, b);
        }
        // round-robin over multiplicity levels: every demand gets its first
        // member before any demand gets its second
        std::vector<int> built(demands.size(), 0);
        for (int level = 0; level < cfg.multiplicity; ++level) {
            for (std::size_t d = 0; d < demands.size(); ++d) {
                for (int t = 0; t < std::max(cfg.build_retries, 1); ++t) {
                    std::optional<OrderedTuple> c = make_connector(anchor, uni, demands[d].first,
                                                                   demands[d].second, blocked,
                                                                   constants, rng, cfg.escalate);
                    if (!c) continue;
                    mark(blocked, *c);
                    Connector m;
                    m.body = std::move(*c);
                    m.demand = static_cast<int>(d);
                    members.push_back(std::move(m));
                    ++built[d];
                    break;
                }
            }
        }
        for (std::size_t d = 0; d < demands.size(); ++d) {
            if (built[d] < cfg.multiplicity) {
                shortfalls.push_back({static_cast<int>(d), built[d], cfg.multiplicity});
            }
        }
    }
    return ConnectorLibrary(demands, std::move(members), std::move(shortfalls));
}

OrderedTuple AbsorberWitness::q() const {
    int m = k - ell;
    OrderedTuple out;
    for (int i = 0; i < m; ++i) {
        out.insert(out.end(), x[static_cast<std::size_t>(i)].begin(), x[static_cast<std::size_t>(i)].end());
        const OrderedTuple& slot = z[static_cast<std::size_t>((i + 1) % m)];
        out.insert(out.end(), slot.begin(), slot.end());
        out.insert(out.end(), y[static_cast<std::size_t>(i)].begin(), y[static_cast<std::size_t>(i)].end());
    }
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

OrderedTuple AbsorberWitness::q_prime() const {
    int m = k - ell;
    OrderedTuple out;
    for (int i = 0; i < m; ++i) {
        out.insert(out.end(), x[static_cast<std::size_t>(i)].begin(), x[static_cast<std::size_t>(i)].end());
        out.push_back(w[static_cast<std::size_t>(i)]);
        out.insert(out.end(), z[static_cast<std::size_t>(i)].begin(), z[static_cast<std::size_t>(i)].end());
        out.insert(out.end(), y[static_cast<std::size_t>(i)].begin(), y[static_cast<std::size_t>(i)].end());
    }
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

std::size_t AbsorberWitness::q_size(const PathConstants& pc) const {
    return static_cast<std::size_t>((pc.t5 - 1) * (pc.k - pc.ell) + pc.ell);
}

OrderedTuple absorb_insert(const AbsorberWitness& wit) {
    PathConstants pc = path_constants(wit.k, wit.ell);
    int m = wit.k - wit.ell;
    auto fail = [](const std::string& why) { throw CorruptWitnessError("absorber witness: " + why); };
    if (static_cast<int>(wit.w.size()) != m) fail("target must have k-l vertices");
    if (static_cast<int>(wit.x.size()) != m || static_cast<int>(wit.z.size()) != m ||
        static_cast<int>(wit.y.size()) != m) {
        fail("expected k-l blocks of each kind");
    }
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(wit.x[static_cast<std::size_t>(i)].size()) != wit.k - 1) {
            fail("X block " + std::to_string(i) + " must have k-1 vertices");
        }
        if (static_cast<int>(wit.z[static_cast<std::size_t>(i)].size()) != i) {
            fail("Z block " + std::to_string(i) + " must have " + std::to_string(i) + " vertices");
        }
        if (static_cast<int>(wit.y[static_cast<std::size_t>(i)].size()) != pc.t5 - wit.k - i) {
            fail("Y block " + std::to_string(i) + " has the wrong size");
        }
    }
    if (static_cast<int>(wit.t.size()) != wit.ell) fail("tail must have l vertices");
    OrderedTuple qp = wit.q_prime();
    std::unordered_set<Vertex> seen;
    for (Vertex v : qp) {
        if (!seen.insert(v).second) fail("vertex " + std::to_string(v) + " appears twice");
    }
    if (qp.size() != wit.q().size() + static_cast<std::size_t>(m)) fail("size bookkeeping is off");
    return qp;
}

std::optional<AbsorberWitness> make_absorber(const Hypergraph& anchor, const Hypergraph& uni,
                                             const OrderedTuple& w, const std::vector<char>& blocked,
                                             const PathConstants& pc, Rng& rng, bool escalate) {
    int k = pc.k;
    int ell = pc.ell;
    int m = k - ell;
    const Hypergraph& ext_graph = escalate ? uni : anchor;
    if (static_cast<int>(w.size()) != m) {
        throw std::invalid_argument("make_absorber: target must be an ordered (k-l)-set");
    }

    std::vector<char> used = blocked;
    for (Vertex v : w) {
        if (used[static_cast<std::size_t>(v)]) return std::nullopt;
        used[static_cast<std::size_t>(v)] = 1;
    }

    std::vector<OrderedTuple> paths(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Vertex wi = w[static_cast<std::size_t>(i)];
        // first edge: wi in the window's last slot, head vertices fresh
        std::vector<int> ids;
        for (int id : ext_graph.incident(wi)) {
            const Edge& e = ext_graph.edges()[static_cast<std::size_t>(id)];
            bool ok = true;
            for (Vertex v : e) {
                if (v != wi && used[static_cast<std::size_t>(v)]) {
                    ok = false;
                    break;
                }
            }
            if (ok) ids.push_back(id);
        }
        if (ids.empty()) return std::nullopt;
        const Edge& e = ext_graph.edges()[static_cast<std::size_t>(ids[rng.index(ids.size())])];
        OrderedTuple head;
        for (Vertex v : e) {
            if (v != wi) head.push_back(v);
        }
        rng.shuffle(head);
        OrderedTuple seedpath = head;
        seedpath.push_back(wi);

        // wi was pre-marked used, so lift that for the extension of its own path
        used[static_cast<std::size_t>(wi)] = 0;
        ExtendResult ext = greedy_extend(ext_graph, ell, seedpath, pc.t4 - 1, used, rng);
        used[static_cast<std::size_t>(wi)] = 1;
        if (!ext.ok) return std::nullopt;
        paths[static_cast<std::size_t>(i)] = ext.tuple;
        for (Vertex v : ext.tuple) used[static_cast<std::size_t>(v)] = 1;
    }

    AbsorberWitness wit;
    wit.k = k;
    wit.ell = ell;
    wit.w = w;
    wit.x.resize(static_cast<std::size_t>(m));
    wit.z.resize(static_cast<std::size_t>(m));
    wit.y.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const OrderedTuple& qi = paths[static_cast<std::size_t>(i)];
        wit.x[static_cast<std::size_t>(i)].assign(qi.begin(), qi.begin() + (k - 1));
        wit.z[static_cast<std::size_t>(i)].assign(qi.begin() + k, qi.begin() + k + i);
        wit.y[static_cast<std::size_t>(i)].assign(qi.begin() + k + i, qi.begin() + pc.t5);
    }
    const OrderedTuple& last = paths[static_cast<std::size_t>(m - 1)];
    wit.t.assign(last.begin() + pc.t5, last.end());

    if (!spans_labeled_copy(uni, wit.q(), PathPattern{k, ell, pc.t5 - 1, 0})) return std::nullopt;
    return wit;
}

std::vector<int> AbsorberLibrary::absorbers_for(const Edge& target_set) const {
    Edge want(target_set.begin(), target_set.end());
    std::sort(want.begin(), want.end());
    std::vector<int> out;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        Edge have(members_[i].w.begin(), members_[i].w.end());
        std::sort(have.begin(), have.end());
        if (have == want) out.push_back(static_cast<int>(i));
    }
    return out;
}

int AbsorberLibrary::take(const Edge& target_set) {
    for (int i : absorbers_for(target_set)) {
        if (!used_[static_cast<std::size_t>(i)]) {
            used_[static_cast<std::size_t>(i)] = 1;
            return i;
        }
    }
    return -1;
}

AbsorberLibrary build_absorber_library(const Hypergraph& anchor, const Hypergraph& uni,
                                       const std::vector<OrderedTuple>& targets,
                                       const std::vector<char>& excluded,
                                       const LibraryConfig& cfg, Rng& rng) {
    // same sequential scheme as the connector library: bodies claim vertices as
    // they land, so members never collide
    std::vector<char> blocked = excluded;
    for (const OrderedTuple& w : targets) mark(blocked, w);

    PathConstants pc = targets.empty() ? PathConstants{} : path_constants(uni.k(), uni.k() - static_cast<int>(targets.front().size()));

    std::vector<AbsorberWitness> members;
    std::vector<int> member_target;
    std::vector<AbsorberShortfall> shortfalls;
    std::vector<int> built(targets.size(), 0);
    for (int level = 0; level < cfg.multiplicity; ++level) {
        for (std::size_t ti = 0; ti < targets.size(); ++ti) {
            for (int t = 0; t < std::max(cfg.build_retries, 1); ++t) {
                std::vector<char> local = blocked;
                unmark(local, targets[ti]);  // make_absorber re-marks its own target
                std::optional<AbsorberWitness> wit =
                    make_absorber(anchor, uni, targets[ti], local, pc, rng, cfg.escalate);
                if (!wit) continue;
                mark(blocked, wit->q());
                members.push_back(std::move(*wit));
                member_target.push_back(static_cast<int>(ti));
                ++built[ti];
                break;
            }
        }
    }
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        if (built[ti] < cfg.multiplicity) {
            shortfalls.push_back({static_cast<int>(ti), built[ti], cfg.multiplicity});
        }
    }
    return AbsorberLibrary(targets, std::move(members), std::move(member_target),
                           std::move(shortfalls));
}

std::vector<OrderedTuple> sample_targets(const std::vector<Vertex>& pool, int count, int arity,
                                         Rng& rng) {
    if (static_cast<int>(pool.size()) < arity || arity < 1) return {};
    std::vector<OrderedTuple> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<Vertex> scratch = pool;
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < arity; ++j) {
            std::size_t pick = static_cast<std::size_t>(j) +
                               rng.index(scratch.size() - static_cast<std::size_t>(j));
            std::swap(scratch[static_cast<std::size_t>(j)], scratch[pick]);
        }
        out.emplace_back(scratch.begin(), scratch.begin() + arity);
    }
    return out;
}

}  // namespace hyperham
