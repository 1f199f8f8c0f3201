#include "hyperham/cover_assemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "hyperham/random_models.hpp"
#include "hyperham/shave.hpp"

namespace hyperham {

namespace {

int count_set(const std::vector<char>& mask) {
    int c = 0;
    for (char b : mask) c += (b != 0);
    return c;
}

void clear_all(std::vector<char>& mask, const OrderedTuple& t) {
    for (Vertex v : t) mask[static_cast<std::size_t>(v)] = 0;
}

std::string tuple_str(const OrderedTuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(t[i]);
    }
    return s + ")";
}

// Segment template: both l-ends from the reservoir (and in `ends`), interior
// from territory. Interiors consume exactly a*(k-l) - l territory vertices.
std::optional<OrderedTuple> find_segment(const Hypergraph& g, const PathConstants& pc, int a,
                                         const std::vector<char>& reserve,
                                         const std::vector<char>& territory,
                                         const std::vector<Edge>& ends, long long budget,
                                         Rng& rng) {
    int step = pc.k - pc.ell;
    std::size_t len = static_cast<std::size_t>(pc.ell + a * step);
    PathSearchSpec spec;
    spec.ell = pc.ell;
    spec.edges = a;
    spec.slots.assign(len, SlotClass::kTerritory);
    spec.fixed.assign(len, -1);
    for (std::size_t i = 0; i < static_cast<std::size_t>(pc.ell); ++i) {
        spec.slots[i] = SlotClass::kReserve;
        spec.slots[len - 1 - i] = SlotClass::kReserve;
    }
    spec.reserve = &reserve;
    spec.territory = &territory;
    spec.ends_in = &ends;
    spec.budget = budget;
    return labeled_path_search(g, spec, rng);
}

// Straggler template: v as the k-th vertex, every other position from the
// reservoir, both l-ends in `ends`. v lies on every window but on neither end.
std::optional<OrderedTuple> find_embedding(const Hypergraph& g, const PathConstants& pc, Vertex v,
                                           const std::vector<char>& reserve,
                                           const std::vector<Edge>& ends, long long budget,
                                           Rng& rng) {
    int step = pc.k - pc.ell;
    std::size_t len = static_cast<std::size_t>(pc.t6 * step + pc.ell);
    PathSearchSpec spec;
    spec.ell = pc.ell;
    spec.edges = pc.t6;
    spec.slots.assign(len, SlotClass::kReserve);
    spec.fixed.assign(len, -1);
    spec.slots[static_cast<std::size_t>(pc.k - 1)] = SlotClass::kFixed;
    spec.fixed[static_cast<std::size_t>(pc.k - 1)] = v;
    spec.reserve = &reserve;
    spec.ends_in = &ends;
    spec.budget = budget;
    return labeled_path_search(g, spec, rng);
}

// Grows `end` into an l-path with `extra` more edges drawn from `avail`; the
// bare end keeps its position (tail when end_last) so the junction interface
// it offers to the rest of the spine is unchanged.
std::optional<OrderedTuple> find_end_extension(const Hypergraph& g, const PathConstants& pc,
                                               const OrderedTuple& end, int extra, bool end_last,
                                               const std::vector<char>& avail,
                                               const std::vector<Edge>& ends, long long budget,
                                               Rng& rng) {
    int step = pc.k - pc.ell;
    std::size_t len = static_cast<std::size_t>(extra * step + pc.ell);
    PathSearchSpec spec;
    spec.ell = pc.ell;
    spec.edges = extra;
    spec.slots.assign(len, SlotClass::kReserve);
    spec.fixed.assign(len, -1);
    std::size_t off = end_last ? len - end.size() : 0;
    for (std::size_t i = 0; i < end.size(); ++i) {
        spec.slots[off + i] = SlotClass::kFixed;
        spec.fixed[off + i] = end[i];
    }
    spec.reserve = &avail;
    spec.ends_in = &ends;
    spec.budget = budget;
    return labeled_path_search(g, spec, rng);
}

// Uniform sample of `want` vertices from pool (partial shuffle prefix).
std::vector<char> sample_mask(std::vector<Vertex> pool, int want, int n, Rng& rng) {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < want; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        rng.index(pool.size() - static_cast<std::size_t>(i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        mask[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = 1;
    }
    return mask;
}

int ends_inside(const std::vector<Edge>& ends, const std::vector<char>& mask) {
    int score = 0;
    for (const Edge& e : ends) {
        bool in = true;
        for (Vertex v : e) {
            if (!mask[static_cast<std::size_t>(v)]) {
                in = false;
                break;
            }
        }
        score += in;
    }
    return score;
}

// Best-of-`tries` reservoir: uniform samples scored by end-set density, so
// every vertex class keeps roughly its proportional share.
std::vector<char> pick_reservoir(const std::vector<Vertex>& pool, int want, int n,
                                 const std::vector<Edge>& ends, int tries, Rng& rng) {
    std::vector<char> best;
    int best_score = -1;
    for (int t = 0; t < tries; ++t) {
        std::vector<char> cand = sample_mask(pool, want, n, rng);
        int score = ends_inside(ends, cand);
        if (score > best_score) {
            best_score = score;
            best = std::move(cand);
        }
    }
    return best;
}

}  // namespace

void PipelineConfig::validate() const {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("PipelineConfig: " + what);
    };
    if (k < 2) bad("k must be at least 2");
    if (ell < 1 || ell >= k) bad("need 1 <= l < k");
    if (!(alpha > 0.0) || alpha > 1.0) bad("alpha must be in (0, 1]");
    if (!(shave_eta > 0.0) || shave_eta >= 1.0) bad("shave_eta must be in (0, 1)");
    if (!(cover_zeta > 0.0) || cover_zeta >= 1.0) bad("cover_zeta must be in (0, 1)");
    if (!(library_beta > 0.0)) bad("library_beta must be positive");
    if (!(sample_gamma > 0.0)) bad("sample_gamma must be positive");
    if (segment_edges < 1) bad("segment_edges must be positive");
    if (segment_edges_max < 1) bad("segment_edges_max must be positive");
    if (exposure_rounds != 1 && exposure_rounds != 4) bad("exposure_rounds must be 1 or 4");
    if (max_attempts < 1) bad("max_attempts must be positive");
    if (escalate_after < 0) bad("escalate_after must be nonnegative");
    if (reservoir_tries < 1) bad("reservoir_tries must be positive");
    if (max_absorbers < 0) bad("max_absorbers must be nonnegative");
    if (phase2_cap < 0) bad("phase2_cap must be nonnegative");
    if (end_extension_max < 0) bad("end_extension_max must be nonnegative");
    if (build_retries < 1) bad("build_retries must be positive");
    if (search_nodes < 1) bad("search_nodes must be positive");
}

ShavedInstance shave_instance(const Hypergraph& h, const PipelineConfig& cfg) {
    if (h.k() != cfg.k) throw std::invalid_argument("shave_instance: uniformity mismatch");
    int n = h.n();
    int ell = cfg.ell;

    if (ell == 1) {
        // single vertices are always usable ends; no shaving happens
        std::vector<Edge> ends;
        ends.reserve(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) ends.push_back({v});
        return ShavedInstance{h,
                              h,
                              std::vector<char>(static_cast<std::size_t>(n), 0),
                              std::vector<char>(static_cast<std::size_t>(n), 1),
                              std::move(ends),
                              0,
                              0,
                              0};
    }

    double nk1 = std::pow(static_cast<double>(n), cfg.k - 1);
    double alpha_eff = cfg.alpha;
    if (nk1 > 0) {
        alpha_eff = std::min(alpha_eff, static_cast<double>(h.min_d_degree(1)) / nk1);
    }
    long long bound = static_cast<long long>(std::ceil(2.0 * alpha_eff * nk1 / 3.0));
    long long th1 = static_cast<long long>(
        std::ceil(cfg.shave_eta * cfg.shave_eta *
                  std::pow(static_cast<double>(n), cfg.k - ell)));

    ShaveResult first = shave(h, ell, th1, bound);
    std::vector<char> v0(static_cast<std::size_t>(n), 0);
    for (Vertex v : first.low_vertices) v0[static_cast<std::size_t>(v)] = 1;
    std::vector<char> vstar(static_cast<std::size_t>(n), 0);
    int n_star = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!v0[static_cast<std::size_t>(v)]) {
            vstar[static_cast<std::size_t>(v)] = 1;
            ++n_star;
        }
    }

    long long th2 = static_cast<long long>(
        std::ceil(cfg.shave_eta * cfg.shave_eta *
                  std::pow(static_cast<double>(n_star), cfg.k - ell)));
    ShaveResult second = shave(first.shaved.restricted_to(vstar), ell, th2, 0);
    std::vector<Edge> ends = second.shaved.shadow(ell);

    return ShavedInstance{std::move(first.shaved), std::move(second.shaved), std::move(v0),
                          std::move(vstar),        std::move(ends),          bound,
                          th1,                     th2};
}

CoverPlan plan_cover(int v_prime, int v0_in, int vstar_in, int m, const PathConstants& pc,
                     const PipelineConfig& cfg) {
    CoverPlan plan;
    plan.m = m;
    if (v_prime < 0 || v0_in < 0 || vstar_in < 0 || v0_in + vstar_in != v_prime) {
        throw std::invalid_argument("plan_cover: inconsistent vertex counts");
    }
    int step = pc.k - pc.ell;
    int a_min = pc.t1;
    int a_max = std::max(cfg.segment_edges_max, pc.t1);

    if (pc.ell == 1 && v0_in > 0) {
        plan.why = "low-degree vertices cannot be embedded when l = 1";
        return plan;
    }
    int p2 = pc.ell >= 2 ? std::min(v0_in, cfg.phase2_cap) : 0;
    int straggler_cost = pc.t6 * step + pc.ell + pc.t3;  // path body minus v, plus its connector

    int per_segment = pc.ell + pc.t3;
    int cap = a_max - a_min;
    auto feasible_c = [&](int base, int x, int c, int e) -> bool {
        int d = base - c * per_segment;
        if (d < 0) return false;
        if (c == 0) {
            if (d != 0) return false;
        } else if (d < c * a_min * step || d > c * a_max * step) {
            return false;
        }
        int reserve = 2 * pc.ell * c + p2 * (pc.t6 * step + pc.ell - 1) + (1 + c + p2) * pc.t3;
        return reserve + x + e * step <= vstar_in;
    };
    // A plan is comfortable when its surplus edges fit into the leading
    // segments, leaving the trailing segment (almost) no territory to thread
    // exactly — the hard part of the search. Prefer comfortable plans across
    // every end-extension/leftover choice before settling for a cramped one.
    auto comfortable = [&](int base, int c) -> bool {
        int extras = c == 0 ? 0 : (base - c * per_segment) / step - c * a_min;
        return extras <= (c > 1 ? (c - 1) * cap + 1 : (c == 1 ? 1 : 0));
    };
    for (int strict = 1; strict >= 0; --strict) {
        // extending the outer ends trades covered-side vertices for spine
        // vertices; only do it when the bare shape cannot tile the budget
        for (int e = 0; e <= cfg.end_extension_max; ++e) {
            int v_avail = v_prime - e * step;
            if (v_avail < pc.t3) break;
            for (int j = m; j >= 0; --j) {
                int x = j * step;
                int base = v_avail - x - pc.t3 - p2 * straggler_cost;
                if (base < 0) continue;
                // more segments soak up more overhead, so high counts leave
                // the least territory to thread exactly; try them first
                for (int c = base / per_segment; c >= 0; --c) {
                    if (!feasible_c(base, x, c, e)) continue;
                    if (strict && !comfortable(base, c)) continue;

                    int d = base - c * per_segment;
                    plan.feasible = true;
                    plan.x_blocks = j;
                    plan.ends_extra = e;
                    plan.segments = c;
                    plan.phase2 = p2;
                    plan.reserve =
                        2 * pc.ell * c + p2 * (pc.t6 * step + pc.ell - 1) + (1 + c + p2) * pc.t3;
                    plan.territory = d - pc.ell * c + p2;
                    int extras = c == 0 ? 0 : d / step - c * a_min;
                    plan.segment_edges.assign(static_cast<std::size_t>(c), a_min);
                    for (int i = 0; i < c && extras > 0; ++i) {
                        int add = std::min(extras, cap);
                        // hold one unit back so the next segment gets a tiny interior
                        if (add == extras && add > 1 && i + 1 < c) add = extras - 1;
                        plan.segment_edges[static_cast<std::size_t>(i)] += add;
                        extras -= add;
                    }
                    return plan;
                }
            }
        }
    }
    plan.why = "no split into segments, embeddings and leftover fits the vertex budget";
    return plan;
}

CoverResult path_cover(const Hypergraph& g, const std::vector<char>& v_prime,
                       const std::vector<char>& v0, const std::vector<Edge>& ends,
                       const PipelineConfig& cfg, Rng& rng) {
    int n = g.n();
    PathConstants pc = path_constants(g.k(), cfg.ell);
    if (v_prime.size() != static_cast<std::size_t>(n) || v0.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("path_cover: masks must have n entries");
    }

    std::vector<Vertex> pool;
    int vp = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!v_prime[static_cast<std::size_t>(v)]) continue;
        ++vp;
        if (v0[static_cast<std::size_t>(v)]) {
            if (cfg.ell == 1) {
                throw std::invalid_argument("path_cover: low-degree set must be empty when l = 1");
            }
        } else {
            pool.push_back(v);
        }
    }

    CoverResult out;
    int want = static_cast<int>(std::ceil(cfg.cover_zeta * vp));
    want = std::min(want, static_cast<int>(pool.size()));
    std::vector<char> reserve =
        pick_reservoir(pool, want, n, ends, cfg.reservoir_tries, rng);
    std::vector<char> territory(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        if (v_prime[static_cast<std::size_t>(v)] && !reserve[static_cast<std::size_t>(v)]) {
            territory[static_cast<std::size_t>(v)] = 1;
        }
    }

    long long small = static_cast<long long>(
        std::ceil(cfg.cover_zeta * cfg.cover_zeta * cfg.cover_zeta * vp));
    int a_pref = std::clamp(cfg.segment_edges, pc.t1, std::max(cfg.segment_edges_max, pc.t1));

    while (count_set(territory) > small) {
        std::optional<OrderedTuple> seg;
        for (int a : {a_pref, std::max(pc.t1, a_pref / 2), pc.t1}) {
            seg = find_segment(g, pc, a, reserve, territory, ends, cfg.search_nodes, rng);
            if (seg) break;
        }
        if (!seg) break;  // loose phase: stop improving, phase 2 mops up
        clear_all(reserve, *seg);
        clear_all(territory, *seg);
        out.paths.push_back(std::move(*seg));
    }

    if (cfg.ell >= 2) {
        for (Vertex v = 0; v < n; ++v) {
            if (!territory[static_cast<std::size_t>(v)]) continue;
            std::optional<OrderedTuple> emb =
                find_embedding(g, pc, v, reserve, ends, cfg.search_nodes, rng);
            if (!emb) {
                out.ok = false;
                out.stuck = v;
                out.error = "could not embed vertex " + std::to_string(v) + " through the reservoir";
                break;
            }
            clear_all(reserve, *emb);
            territory[static_cast<std::size_t>(v)] = 0;
            out.paths.push_back(std::move(*emb));
        }
        if (out.stuck < 0) out.ok = true;
    } else {
        out.ok = count_set(territory) <= small;
        if (!out.ok) out.error = "uncovered interior exceeds the reservoir bound";
    }

    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (const OrderedTuple& p : out.paths) {
        for (Vertex v : p) covered[static_cast<std::size_t>(v)] = 1;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (v_prime[static_cast<std::size_t>(v)] && !covered[static_cast<std::size_t>(v)]) {
            out.leftover.push_back(v);
        }
    }
    return out;
}

PlannedCover cover_with_plan(const Hypergraph& g_segments, const Hypergraph& g_embed,
                             const CoverPlan& plan, const std::vector<char>& territory,
                             const std::vector<Vertex>& stragglers,
                             const std::vector<char>& reserve, const std::vector<Edge>& ends,
                             const PathConstants& pc, const PipelineConfig& cfg, Rng& rng) {
    PlannedCover out;
    if (!plan.feasible) {
        out.error = "plan is infeasible";
        return out;
    }
    if (static_cast<int>(stragglers.size()) != plan.phase2) {
        out.error = "straggler list does not match the plan";
        return out;
    }
    int step = pc.k - pc.ell;
    int interiors = 0;
    for (int a : plan.segment_edges) interiors += a * step - pc.ell;
    if (count_set(territory) != interiors) {
        out.error = "territory does not match the plan";
        return out;
    }

    std::vector<char> r = reserve;
    std::vector<char> t = territory;
    for (std::size_t i = 0; i < plan.segment_edges.size(); ++i) {
        int a = plan.segment_edges[i];
        std::optional<OrderedTuple> seg =
            find_segment(g_segments, pc, a, r, t, ends, cfg.search_nodes, rng);
        if (!seg) {
            out.error = "covering segment " + std::to_string(i) + " (" + std::to_string(a) +
                        " edges) not found";
            return out;
        }
        clear_all(r, *seg);
        clear_all(t, *seg);
        out.paths.push_back(std::move(*seg));
    }
    if (count_set(t) != 0) {
        out.error = "internal: segments left territory uncovered";
        return out;
    }
    for (Vertex v : stragglers) {
        std::optional<OrderedTuple> emb =
            find_embedding(g_embed, pc, v, r, ends, cfg.search_nodes, rng);
        if (!emb) {
            out.stuck = v;
            out.error = "could not embed vertex " + std::to_string(v) + " through the reservoir";
            return out;
        }
        clear_all(r, *emb);
        out.paths.push_back(std::move(*emb));
    }
    out.reserve_left = std::move(r);
    out.ok = true;
    return out;
}

ChainResult chain_into_path(const std::vector<OrderedTuple>& pieces, int ell,
                            const ConnectorSource& connectors) {
    if (pieces.empty()) throw std::invalid_argument("chain_into_path: no pieces");
    for (const OrderedTuple& p : pieces) {
        if (static_cast<int>(p.size()) < ell) {
            throw std::invalid_argument("chain_into_path: piece shorter than l");
        }
    }
    ChainResult res;
    res.order = pieces.front();
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        OrderedTuple tail(res.order.end() - ell, res.order.end());
        OrderedTuple head(pieces[i].begin(), pieces[i].begin() + ell);
        std::optional<OrderedTuple> c = connectors(tail, head);
        if (!c) {
            res.error = "connector shortfall at junction " + std::to_string(i - 1) + ": " +
                        tuple_str(tail) + " -> " + tuple_str(head);
            res.stuck_tail = std::move(tail);
            res.stuck_head = std::move(head);
            return res;
        }
        res.order.insert(res.order.end(), c->begin(), c->end());
        res.order.insert(res.order.end(), pieces[i].begin(), pieces[i].end());
        ++res.connectors_used;
    }
    res.ok = true;
    return res;
}

ChainResult connect_into_cycle(const std::vector<OrderedTuple>& paths, int ell,
                               const ConnectorSource& connectors) {
    if (paths.empty()) throw std::invalid_argument("connect_into_cycle: nothing to connect");
    ChainResult res = chain_into_path(paths, ell, connectors);
    if (!res.ok) return res;
    OrderedTuple tail(res.order.end() - ell, res.order.end());
    OrderedTuple head(res.order.begin(), res.order.begin() + ell);
    std::optional<OrderedTuple> c = connectors(tail, head);
    if (!c) {
        res.ok = false;
        res.error = "connector shortfall at the closing junction: " + tuple_str(tail) + " -> " +
                    tuple_str(head);
        res.stuck_tail = std::move(tail);
        res.stuck_head = std::move(head);
        return res;
    }
    res.order.insert(res.order.end(), c->begin(), c->end());
    ++res.connectors_used;
    return res;
}

ChainResult connect_into_cycle(const std::vector<OrderedTuple>& paths, int ell,
                               ConnectorLibrary& lib) {
    return connect_into_cycle(paths, ell,
                              [&lib](const OrderedTuple& a,
                                     const OrderedTuple& b) -> std::optional<OrderedTuple> {
                                  int id = lib.take(a, b);
                                  if (id < 0) return std::nullopt;
                                  return lib.members()[static_cast<std::size_t>(id)].body;
                              });
}

namespace {

// First position s (a multiple of step, window-aligned) where `q` occurs as a
// contiguous cyclic run of `order`; -1 if absent.
int find_aligned_run(const OrderedTuple& order, const OrderedTuple& q, int step) {
    int len = static_cast<int>(order.size());
    if (static_cast<int>(q.size()) > len) return -1;
    for (int s = 0; s < len; s += step) {
        bool match = true;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (order[static_cast<std::size_t>((s + static_cast<int>(j)) % len)] != q[j]) {
                match = false;
                break;
            }
        }
        if (match) return s;
    }
    return -1;
}

}  // namespace

CycleWitness absorb_leftover(const CycleWitness& cycle, const std::vector<Vertex>& leftover,
                             AbsorberLibrary& lib) {
    if (leftover.empty()) return cycle;
    int step = cycle.k - cycle.ell;

    std::unordered_set<Vertex> remaining(leftover.begin(), leftover.end());
    if (remaining.size() != leftover.size()) {
        throw std::runtime_error("absorb_leftover: leftover lists a vertex twice");
    }
    if (remaining.size() % static_cast<std::size_t>(step) != 0) {
        throw std::runtime_error("absorb_leftover: leftover size is not divisible by k-l");
    }
    std::vector<Edge> blocks;
    for (const OrderedTuple& t : lib.targets()) {
        Edge ts(t.begin(), t.end());
        std::sort(ts.begin(), ts.end());
        bool inside = true;
        for (Vertex v : ts) {
            if (!remaining.count(v)) {
                inside = false;
                break;
            }
        }
        if (!inside) continue;
        for (Vertex v : ts) remaining.erase(v);
        blocks.push_back(std::move(ts));
    }
    if (!remaining.empty()) {
        throw std::runtime_error("absorb_leftover: leftover vertex " +
                                 std::to_string(*remaining.begin()) +
                                 " matches no absorber target");
    }

    OrderedTuple order = cycle.order;
    for (const Edge& block : blocks) {
        int chosen = -1;
        int start = -1;
        for (int id : lib.absorbers_for(block)) {
            if (lib.used(id)) continue;
            OrderedTuple q = lib.members()[static_cast<std::size_t>(id)].q();
            int s = find_aligned_run(order, q, step);
            if (s >= 0) {
                chosen = id;
                start = s;
                break;
            }
        }
        if (chosen < 0) {
            Edge b = block;
            OrderedTuple bt(b.begin(), b.end());
            throw std::runtime_error("absorb_leftover: no unused absorber on the cycle for block " +
                                     tuple_str(bt));
        }
        // rotate the matched run to the front (start is window-aligned, so the
        // rotation preserves the window structure), then swap in the absorbing
        // tuple, which is longer by exactly k-l
        std::rotate(order.begin(), order.begin() + start, order.end());
        const AbsorberWitness& wit = lib.members()[static_cast<std::size_t>(chosen)];
        OrderedTuple qp = absorb_insert(wit);
        std::size_t q_len = wit.q().size();
        OrderedTuple next;
        next.reserve(order.size() + static_cast<std::size_t>(step));
        next.insert(next.end(), qp.begin(), qp.end());
        next.insert(next.end(), order.begin() + static_cast<long>(q_len), order.end());
        order = std::move(next);
        lib.mark_used(chosen);
    }
    return CycleWitness{std::move(order), cycle.k, cycle.ell};
}

PipelineResult find_hamilton_cycle(const Hypergraph& h, double p, const PipelineConfig& cfg,
                                   Rng& rng) {
    cfg.validate();
    if (h.k() != cfg.k) throw std::invalid_argument("find_hamilton_cycle: uniformity mismatch");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("find_hamilton_cycle: p out of range");
    int k = cfg.k;
    int ell = cfg.ell;
    int n = h.n();
    int step = k - ell;
    if (n % step != 0) {
        throw std::invalid_argument("find_hamilton_cycle: n must be divisible by k-l");
    }
    if (n / step < 3) {
        throw std::invalid_argument("find_hamilton_cycle: need at least three cycle windows");
    }
    PathConstants pc = path_constants(k, ell);

    PipelineResult res;
    PipelineTrace& tr = res.trace;
    tr.edges_input = static_cast<long long>(h.edge_count());

    // expose the random edges: either four independent rounds (the last split
    // in two for the cover), or one shared draw; the union law is G(n, p)
    std::uint64_t sg[5];
    for (std::uint64_t& s : sg) s = rng.u64();
    std::vector<Hypergraph> rounds;
    if (cfg.exposure_rounds == 4) {
        double p1 = split_exposure(p, 4).per_round_p;
        double p2 = split_exposure(p1, 2).per_round_p;
        rounds.push_back(gnp(n, k, p1, sg[0]));
        rounds.push_back(gnp(n, k, p1, sg[1]));
        rounds.push_back(gnp(n, k, p1, sg[2]));
        rounds.push_back(gnp(n, k, p2, sg[3]));
        rounds.push_back(gnp(n, k, p2, sg[4]));
    } else {
        Hypergraph g = gnp(n, k, p, sg[0]);
        rounds.assign(5, g);
    }
    const Hypergraph& g1 = rounds[0];
    const Hypergraph& g2 = rounds[1];
    const Hypergraph& g3 = rounds[2];
    const Hypergraph& g4a = rounds[3];
    const Hypergraph& g4b = rounds[4];

    res.exposed_union =
        h.union_with(g1).union_with(g2).union_with(g3).union_with(g4a).union_with(g4b);

    double nk1 = std::pow(static_cast<double>(n), k - 1);
    tr.degree_floor_met =
        static_cast<double>(h.min_d_degree(1)) >= cfg.alpha * nk1 - 1e-9;

    ShavedInstance inst = shave_instance(h, cfg);
    tr.edges_hprime = static_cast<long long>(inst.hprime.edge_count());
    tr.edges_hstar = static_cast<long long>(inst.hstar.edge_count());
    tr.v0_size = count_set(inst.v0);
    tr.vstar_size = count_set(inst.vstar);
    tr.ends_size = inst.ends.size();
    if (inst.ends.size() < 2) {
        res.failure_stage = "shave";
        res.diagnostics = "fewer than two usable path ends survive shaving";
        return res;
    }

    Hypergraph uni1 = inst.hstar.union_with(g1.restricted_to(inst.vstar));
    Hypergraph uni2 = inst.hprime.union_with(g2);
    Hypergraph uni3 = inst.hprime.union_with(g3);
    Hypergraph uni4a = inst.hprime.union_with(g4a);
    Hypergraph uni4b = inst.hprime.union_with(g4b);
    const Hypergraph& g_total = *res.exposed_union;

    std::vector<Vertex> vstar_list;
    for (Vertex v = 0; v < n; ++v) {
        if (inst.vstar[static_cast<std::size_t>(v)]) vstar_list.push_back(v);
    }

    int m_cap = std::min(cfg.max_absorbers,
                         static_cast<int>(std::floor(cfg.library_beta * n)));
    m_cap = std::min(m_cap, static_cast<int>(std::floor(cfg.sample_gamma * n / step)));
    m_cap = std::max(m_cap, 0);

    // ranked failure reporting: remember the furthest stage any attempt reached
    auto stage_rank = [](const std::string& s) {
        if (s == "absorbers") return 1;
        if (s == "connectors") return 2;
        if (s == "cover") return 3;
        if (s == "connect") return 4;
        if (s == "absorb") return 5;
        if (s == "validate") return 6;
        return 0;
    };
    int best_rank = -1;
    auto note = [&](int att, int m, const std::string& stage, const std::string& detail) {
        tr.notes.push_back("attempt " + std::to_string(att) + " m=" + std::to_string(m) + " [" +
                           stage + "] " + detail);
        if (stage_rank(stage) > best_rank) {
            best_rank = stage_rank(stage);
            res.failure_stage = stage;
            res.diagnostics = detail;
        }
    };

    std::uint64_t attempt_base = rng.u64();
    int q_len = (pc.t5 - 1) * step + ell;

    for (int att = 0; att < cfg.max_attempts; ++att) {
        bool esc = att >= cfg.escalate_after;
        if (esc) tr.escalated = true;
        long long budget = cfg.search_nodes * (esc ? 2 : 1);
        for (int m = m_cap; m >= 0; --m) {
            tr.attempts = att + 1;
            int spine_size = 2 * ell + m * q_len + (m + 1) * pc.t3;
            int vp = n - spine_size;
            if (vp < pc.t3) continue;  // no room left to close the cycle
            // the spine has a fixed size and stays inside the high-degree side,
            // so the layout can be planned before anything is built
            if (spine_size > static_cast<int>(vstar_list.size())) continue;
            CoverPlan plan = plan_cover(vp, tr.v0_size, vp - tr.v0_size, m, pc, cfg);
            if (!plan.feasible) {
                note(att, m, "cover", plan.why);
                continue;
            }
            spine_size += plan.ends_extra * step;
            vp -= plan.ends_extra * step;
            if (spine_size > static_cast<int>(vstar_list.size())) continue;
            Rng arng(derive_seed(attempt_base, static_cast<std::uint64_t>(att),
                                 static_cast<std::uint64_t>(m)));

            // the reservoir comes first; nothing else may touch it
            std::vector<char> reserve = pick_reservoir(vstar_list, plan.reserve, n, inst.ends,
                                                       cfg.reservoir_tries, arng);
            std::vector<char> blocked(static_cast<std::size_t>(n), 0);
            for (Vertex v = 0; v < n; ++v) {
                blocked[static_cast<std::size_t>(v)] =
                    reserve[static_cast<std::size_t>(v)] || inst.v0[static_cast<std::size_t>(v)];
            }

            // absorber targets: m disjoint (k-l)-blocks of high-degree vertices
            std::vector<OrderedTuple> targets;
            {
                std::vector<Vertex> pool;
                for (Vertex v : vstar_list) {
                    if (!reserve[static_cast<std::size_t>(v)]) pool.push_back(v);
                }
                if (static_cast<int>(pool.size()) < m * step) continue;
                for (int i = 0; i < m * step; ++i) {
                    std::size_t j = static_cast<std::size_t>(i) +
                                    arng.index(pool.size() - static_cast<std::size_t>(i));
                    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
                }
                for (int i = 0; i < m; ++i) {
                    targets.emplace_back(pool.begin() + i * step, pool.begin() + (i + 1) * step);
                }
            }

            LibraryConfig lc;
            lc.multiplicity = 1;
            lc.build_retries = cfg.build_retries;
            lc.escalate = esc;
            AbsorberLibrary alib =
                build_absorber_library(inst.hprime, uni3, targets, blocked, lc, arng);
            if (!alib.shortfalls().empty()) {
                note(att, m, "absorbers",
                     "no absorber for target " +
                         tuple_str(targets[static_cast<std::size_t>(
                             alib.shortfalls().front().target)]));
                continue;
            }

            std::vector<char> used = blocked;
            for (const OrderedTuple& t : targets) {
                for (Vertex v : t) used[static_cast<std::size_t>(v)] = 1;
            }
            for (const AbsorberWitness& w : alib.members()) {
                for (Vertex v : w.q()) used[static_cast<std::size_t>(v)] = 1;
            }

            // spine ends: first two disjoint end sets avoiding everything used
            OrderedTuple e1, e2;
            for (const Edge& cand : inst.ends) {
                bool free = true;
                for (Vertex v : cand) {
                    if (used[static_cast<std::size_t>(v)]) {
                        free = false;
                        break;
                    }
                }
                if (!free) continue;
                if (e1.empty()) {
                    e1.assign(cand.begin(), cand.end());
                    for (Vertex v : e1) used[static_cast<std::size_t>(v)] = 1;
                } else {
                    e2.assign(cand.begin(), cand.end());
                    for (Vertex v : e2) used[static_cast<std::size_t>(v)] = 1;
                    break;
                }
            }
            if (e2.empty()) {
                note(att, m, "absorbers", "no two disjoint end sets left for the spine");
                continue;
            }

            // grow the outer ends when the plan calls for it; the bare end
            // stays in place as the junction interface
            OrderedTuple piece1 = e1, piece2 = e2;
            if (plan.ends_extra > 0) {
                int grow1 = (plan.ends_extra + 1) / 2;
                int grow2 = plan.ends_extra - grow1;
                std::vector<char> free_mask(static_cast<std::size_t>(n), 0);
                auto refresh = [&]() {
                    for (Vertex v = 0; v < n; ++v) {
                        free_mask[static_cast<std::size_t>(v)] = !used[static_cast<std::size_t>(v)];
                    }
                };
                auto grow = [&](const OrderedTuple& end, int extra,
                                bool end_last) -> std::optional<OrderedTuple> {
                    refresh();
                    std::optional<OrderedTuple> ext = find_end_extension(
                        inst.hstar, pc, end, extra, end_last, free_mask, inst.ends, budget, arng);
                    if (!ext) {
                        ext = find_end_extension(uni1, pc, end, extra, end_last, free_mask,
                                                 inst.ends, budget, arng);
                    }
                    if (ext) {
                        for (Vertex v : *ext) used[static_cast<std::size_t>(v)] = 1;
                    }
                    return ext;
                };
                bool grown = true;
                if (grow1 > 0) {
                    if (auto ext = grow(e1, grow1, true)) {
                        piece1 = *ext;
                    } else {
                        grown = false;
                    }
                }
                if (grown && grow2 > 0) {
                    if (auto ext = grow(e2, grow2, false)) {
                        piece2 = *ext;
                    } else {
                        grown = false;
                    }
                }
                if (!grown) {
                    note(att, m, "connectors", "end extension not found");
                    continue;
                }
            }

            // spine: e1, absorber tuples, e2, joined by fresh connectors
            std::vector<OrderedTuple> pieces;
            pieces.push_back(piece1);
            for (const AbsorberWitness& w : alib.members()) pieces.push_back(w.q());
            pieces.push_back(piece2);
            int c2_used = 0;
            ConnectorSource spine_src = [&](const OrderedTuple& a,
                                            const OrderedTuple& b) -> std::optional<OrderedTuple> {
                std::vector<char> avail(static_cast<std::size_t>(n), 0);
                for (Vertex v = 0; v < n; ++v) avail[static_cast<std::size_t>(v)] = !used[static_cast<std::size_t>(v)];
                std::optional<OrderedTuple> c =
                    find_connector(inst.hprime, a, b, avail, pc, budget, arng);
                if (!c) c = find_connector(uni2, a, b, avail, pc, budget, arng);
                if (c) {
                    for (Vertex v : *c) used[static_cast<std::size_t>(v)] = 1;
                    ++c2_used;
                }
                return c;
            };
            ChainResult spine = chain_into_path(pieces, ell, spine_src);
            if (!spine.ok) {
                note(att, m, "connectors", spine.error);
                continue;
            }

            // everything off the spine must be covered or designated leftover
            std::vector<char> in_spine(static_cast<std::size_t>(n), 0);
            for (Vertex v : spine.order) in_spine[static_cast<std::size_t>(v)] = 1;
            std::vector<char> vprime(static_cast<std::size_t>(n), 0);
            int vp_actual = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (in_spine[static_cast<std::size_t>(v)]) continue;
                vprime[static_cast<std::size_t>(v)] = 1;
                ++vp_actual;
            }
            if (vp_actual != vp) {
                note(att, m, "connectors", "internal: spine size off plan");
                continue;
            }

            std::vector<char> xmask(static_cast<std::size_t>(n), 0);
            std::vector<Vertex> x_list;
            for (int i = 0; i < plan.x_blocks; ++i) {
                for (Vertex v : targets[static_cast<std::size_t>(i)]) {
                    xmask[static_cast<std::size_t>(v)] = 1;
                    x_list.push_back(v);
                }
            }
            std::vector<Vertex> stragglers;
            for (Vertex v = 0; v < n && static_cast<int>(stragglers.size()) < plan.phase2; ++v) {
                if (vprime[static_cast<std::size_t>(v)] && inst.v0[static_cast<std::size_t>(v)]) {
                    stragglers.push_back(v);
                }
            }

            std::vector<char> territory(static_cast<std::size_t>(n), 0);
            for (Vertex v = 0; v < n; ++v) {
                if (vprime[static_cast<std::size_t>(v)] && !reserve[static_cast<std::size_t>(v)] &&
                    !xmask[static_cast<std::size_t>(v)]) {
                    territory[static_cast<std::size_t>(v)] = 1;
                }
            }
            for (Vertex v : stragglers) territory[static_cast<std::size_t>(v)] = 0;

            // the reservoir is consumed exactly, so one junction order can
            // wedge; retry with fresh segments and random path orientations
            int c1_used = 0;
            ChainResult cyc;
            std::string sub_stage, sub_error;
            for (int ct = 0; ct < cfg.build_retries; ++ct) {
                PlannedCover cov = cover_with_plan(uni4a, uni4b, plan, territory, stragglers,
                                                   reserve, inst.ends, pc, cfg, arng);
                if (!cov.ok) {
                    // the segment search is exhaustive: a miss is definitive
                    sub_stage = "cover";
                    sub_error = cov.error;
                    break;
                }
                std::vector<OrderedTuple> cover_paths = std::move(cov.paths);
                if (ct > 0) {
                    arng.shuffle(cover_paths);
                    for (OrderedTuple& t : cover_paths) {
                        if (arng.chance(0.5)) std::reverse(t.begin(), t.end());
                    }
                }
                std::vector<char> ravail = cov.reserve_left;
                c1_used = 0;
                ConnectorSource closing_src =
                    [&](const OrderedTuple& a,
                        const OrderedTuple& b) -> std::optional<OrderedTuple> {
                    std::optional<OrderedTuple> c =
                        find_connector(inst.hstar, a, b, ravail, pc, budget, arng);
                    if (!c) c = find_connector(uni1, a, b, ravail, pc, budget, arng);
                    if (c) {
                        for (Vertex v : *c) ravail[static_cast<std::size_t>(v)] = 0;
                        ++c1_used;
                    }
                    return c;
                };
                std::vector<OrderedTuple> cycle_pieces;
                cycle_pieces.push_back(spine.order);
                for (const OrderedTuple& t : cover_paths) cycle_pieces.push_back(t);
                cyc = connect_into_cycle(cycle_pieces, ell, closing_src);
                if (cyc.ok) break;
                sub_stage = "connect";
                sub_error = cyc.error;
            }
            if (!cyc.ok) {
                note(att, m, sub_stage, sub_error);
                continue;
            }
            if (static_cast<int>(cyc.order.size()) != n - static_cast<int>(x_list.size())) {
                note(att, m, "connect", "internal: cycle misses vertices beyond the leftover");
                continue;
            }

            CycleWitness before{cyc.order, k, ell};
            CycleWitness witness;
            try {
                witness = absorb_leftover(before, x_list, alib);
            } catch (const std::exception& e) {
                note(att, m, "absorb", e.what());
                continue;
            }

            CycleCheckReport rep = check_hamiltonian_cycle(g_total, witness);
            if (!rep.valid) {
                note(att, m, "validate",
                     rep.coverage_error.empty()
                         ? "window " + std::to_string(rep.first_bad_window) + " is not an edge"
                         : rep.coverage_error);
                continue;
            }

            res.success = true;
            res.witness = std::move(witness);
            res.failure_stage.clear();
            res.diagnostics.clear();
            tr.m = m;
            tr.x_blocks = plan.x_blocks;
            tr.segments = plan.segments;
            tr.phase2 = plan.phase2;
            tr.c1_used = c1_used;
            tr.c2_used = c2_used;
            tr.absorbers_built = static_cast<int>(alib.members().size());
            tr.absorptions = plan.x_blocks;
            return res;
        }
    }
    if (res.failure_stage.empty()) {
        res.failure_stage = "cover";
        res.diagnostics = "no attempt produced a feasible layout";
    }
    return res;
}

}  // namespace hyperham
