#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

// Derived layout constants for l-paths with uniformity k. t1..t3 size the
// connector gadget (a t3-tuple C such that A-C-B spans a path of 3*t1 edges);
// t4..t5 size the absorber gadget; t6 is the length of the short path used to
// embed a single straggler vertex.
struct PathConstants {
    int k = 0;
    int ell = 0;
    int t1 = 0;  // extension steps per side of a connector
    int t2 = 0;  // free pad vertices in the middle of a connector
    int t3 = 0;  // connector size: 2*t1*(k-ell) + t2
    int t4 = 0;  // edges of each absorber block path
    int t5 = 0;  // t4*(k-ell); block B_i size
    int t6 = 0;  // edges of a straggler-embedding path
};

PathConstants path_constants(int k, int ell);  // throws std::invalid_argument unless 1 <= ell < k

// Result of growing an l-path one edge at a time. A dead end is reported, not
// thrown: callers decide whether to retry, escalate, or give up.
struct ExtendResult {
    OrderedTuple tuple;      // the path built so far (starts with the seed)
    bool ok = false;
    int failed_step = -1;    // 0-based step that found no admissible edge
    OrderedTuple stuck_end;  // the l-end that could not be extended
};

// Extends `seed` forward by `steps` edges in h. The seed is either a bare
// ordered l-set or a longer path tuple (|seed| = l mod k-l); each step picks a
// uniformly random edge through the current l-end (the last l vertices) whose
// new vertices avoid `forbidden` and the path so far, then appends those new
// vertices in uniformly random order. `forbidden` is an n-sized mask.
ExtendResult greedy_extend(const Hypergraph& h, int ell, const OrderedTuple& seed, int steps,
                           const std::vector<char>& forbidden, Rng& rng);

// True iff a, b, c are pairwise disjoint with |a|=|b|=ell, |c|=t3, and the
// concatenation a.c.b spans a path of 3*t1 edges in u. Arity violations throw.
bool connects(const Hypergraph& u, const OrderedTuple& a, const OrderedTuple& b,
              const OrderedTuple& c, const PathConstants& pc);

// Shared knobs for library construction.
struct LibraryConfig {
    int candidates_per_demand = 12;
    int multiplicity = 1;          // certified members per demand before a shortfall
    int family_budget = 1 << 20;   // max members kept after disjoint selection
    int build_retries = 20;        // random construction attempts per candidate
    bool escalate = false;         // allow extensions in the union graph, not just the anchor
};

// One greedy attempt at a connector for the ordered pair (a, b): extend a
// forward t1 steps and b backward t1 steps in `anchor` (or `uni` when
// escalating), pad with t2 free vertices, and keep the middle t3-tuple iff
// a.c.b spans a path of 3*t1 edges in `uni`. `blocked` masks unusable vertices.
std::optional<OrderedTuple> make_connector(const Hypergraph& anchor, const Hypergraph& uni,
                                           const OrderedTuple& a, const OrderedTuple& b,
                                           const std::vector<char>& blocked,
                                           const PathConstants& pc, Rng& rng, bool escalate);

// Where each position of a searched path tuple may draw its vertex from.
enum class SlotClass : char {
    kReserve,    // any vertex with reserve mask set
    kTerritory,  // any vertex with territory mask set
    kFixed,      // exactly the vertex given in PathSearchSpec::fixed
};

// Template for labeled_path_search: an l-path of `edges` windows whose tuple
// positions are filled according to `slots`. Masks are indexed by vertex and
// should be disjoint. When `ends_in` is set, both l-ends of the result must
// be members (it must be sorted ascending, each member sorted).
struct PathSearchSpec {
    int ell = 0;
    int edges = 0;
    std::vector<SlotClass> slots;               // size ell + edges*(k-ell)
    std::vector<Vertex> fixed;                  // parallel to slots; -1 unless kFixed
    const std::vector<char>* reserve = nullptr;
    const std::vector<char>* territory = nullptr;
    const std::vector<Edge>* ends_in = nullptr;
    long long budget = 100000;                  // backtracking node budget
};

// Complete (budget-capped) backtracking search for an ordered tuple realising
// every window of the template as an edge of g. Children are visited in
// rng-shuffled order, so retries with an advanced rng explore differently.
// Returns std::nullopt when no tuple exists or the budget runs out.
std::optional<OrderedTuple> labeled_path_search(const Hypergraph& g, const PathSearchSpec& spec,
                                                Rng& rng);

// Backtracking counterpart of make_connector: a t3-tuple c of vertices free in
// `avail` with a.c.b spanning a path of 3*t1 edges in g. Unlike the greedy
// construction this only fails when no such tuple exists within budget, which
// matters when `avail` is barely larger than t3.
std::optional<OrderedTuple> find_connector(const Hypergraph& g, const OrderedTuple& a,
                                           const OrderedTuple& b, const std::vector<char>& avail,
                                           const PathConstants& pc, long long budget, Rng& rng);

struct Connector {
    OrderedTuple body;
    int demand = -1;  // index of the (a,b) pair it was built for
    bool used = false;
};

struct DemandShortfall {
    int demand = -1;
    int got = 0;
    int want = 0;
};

// Pairwise vertex-disjoint connectors serving registered end pairs.
class ConnectorLibrary {
public:
    ConnectorLibrary(std::vector<std::pair<OrderedTuple, OrderedTuple>> demands,
                     std::vector<Connector> members, std::vector<DemandShortfall> shortfalls)
        : demands_(std::move(demands)), members_(std::move(members)),
          shortfalls_(std::move(shortfalls)) {}

    const std::vector<Connector>& members() const { return members_; }
    const std::vector<std::pair<OrderedTuple, OrderedTuple>>& demands() const { return demands_; }
    const std::vector<DemandShortfall>& shortfalls() const { return shortfalls_; }

    std::vector<int> usable(const OrderedTuple& a, const OrderedTuple& b) const;
    // Marks the first usable member for demand (a, b) used and returns its
    // index, or -1 on shortfall.
    int take(const OrderedTuple& a, const OrderedTuple& b);

private:
    std::vector<std::pair<OrderedTuple, OrderedTuple>> demands_;
    std::vector<Connector> members_;
    std::vector<DemandShortfall> shortfalls_;
};

// Builds connectors for every demanded pair with make_connector against
// `anchor`/`uni`. Members are constructed sequentially (round-robin over
// multiplicity levels) and each claims its vertices, so the family is pairwise
// disjoint by construction. Vertices in `excluded` are never touched.
// Shortfalls are recorded per demand, never thrown.
ConnectorLibrary build_connector_library(const Hypergraph& anchor, const Hypergraph& uni,
                                         const std::vector<std::pair<OrderedTuple, OrderedTuple>>& demands,
                                         const std::vector<char>& excluded,
                                         const LibraryConfig& cfg, Rng& rng);

// Greedy selection of a pairwise vertex-disjoint subfamily. `serves[i]` lists
// the demand ids candidate i can serve. Candidates are ranked canonically
// (lexicographic) then shuffled by rng, so the outcome is order-independent
// for a fixed seed. Selection stops at `family_budget`.
struct FamilySelection {
    std::vector<int> chosen;          // indices into the candidate list
    std::vector<int> per_demand;      // how many chosen candidates serve each demand
};

FamilySelection select_disjoint_family(const std::vector<OrderedTuple>& candidates,
                                       const std::vector<std::vector<int>>& serves,
                                       int demand_count, const LibraryConfig& cfg, Rng& rng);

// An absorber for the ordered (k-ell)-set w: the tuple q() sits on a cycle as
// an ordinary subpath, and q_prime() spans one more edge per window while
// inserting all of w and keeping both l-ends, so swapping q() for q_prime()
// absorbs w into the cycle.
struct AbsorberWitness {
    int k = 0;
    int ell = 0;
    std::vector<OrderedTuple> x;  // k-ell blocks of size k-1
    std::vector<OrderedTuple> z;  // k-ell blocks, |z[i]| = i
    std::vector<OrderedTuple> y;  // k-ell blocks, |y[i]| = t5-k-i
    OrderedTuple t;               // ell tail vertices
    OrderedTuple w;               // the target, w[i] absorbed into block i

    OrderedTuple q() const;        // X1 Z2 Y1 X2 Z3 Y2 ... X_m Z1 Y_m T  (m = k-ell)
    OrderedTuple q_prime() const;  // X1 w1 Z1 Y1 ... X_m w_m Z_m Y_m T
    std::size_t q_size(const PathConstants& pc) const;
};

// Validates the witness block structure and returns q_prime(). Throws
// CorruptWitnessError on any size/duplication violation.
OrderedTuple absorb_insert(const AbsorberWitness& wit);

struct AbsorberShortfall {
    int target = -1;
    int got = 0;
    int want = 0;
};

class AbsorberLibrary {
public:
    AbsorberLibrary(std::vector<OrderedTuple> targets, std::vector<AbsorberWitness> members,
                    std::vector<int> member_target, std::vector<AbsorberShortfall> shortfalls)
        : targets_(std::move(targets)), members_(std::move(members)),
          member_target_(std::move(member_target)), shortfalls_(std::move(shortfalls)),
          used_(members_.size(), 0) {}

    const std::vector<AbsorberWitness>& members() const { return members_; }
    const std::vector<OrderedTuple>& targets() const { return targets_; }
    const std::vector<AbsorberShortfall>& shortfalls() const { return shortfalls_; }

    // Members able to absorb the given (k-ell)-set (compared as a set).
    std::vector<int> absorbers_for(const Edge& target_set) const;
    int take(const Edge& target_set);  // first unused match, marked used; -1 if none

    bool used(int member) const { return used_[static_cast<std::size_t>(member)] != 0; }
    void mark_used(int member) { used_[static_cast<std::size_t>(member)] = 1; }

private:
    std::vector<OrderedTuple> targets_;
    std::vector<AbsorberWitness> members_;
    std::vector<int> member_target_;
    std::vector<AbsorberShortfall> shortfalls_;
    std::vector<char> used_;
};

// One construction attempt for a w-absorber: for each block, grow a t4-edge
// path in `anchor` whose k-th vertex is w[i], reassemble the blocks, and keep
// the witness iff q() spans a path of t5-1 edges in `uni`. Tail vertices of
// the non-final block paths are released, not kept in the witness.
std::optional<AbsorberWitness> make_absorber(const Hypergraph& anchor, const Hypergraph& uni,
                                             const OrderedTuple& w, const std::vector<char>& blocked,
                                             const PathConstants& pc, Rng& rng, bool escalate);

// Builds absorbers for each target in `targets` (ordered (k-ell)-tuples) with
// the same sequential vertex-claiming scheme as the connector library, and
// reports per-target shortfalls.
AbsorberLibrary build_absorber_library(const Hypergraph& anchor, const Hypergraph& uni,
                                       const std::vector<OrderedTuple>& targets,
                                       const std::vector<char>& excluded,
                                       const LibraryConfig& cfg, Rng& rng);

// Uniformly samples `count` ordered (k-ell)-tuples of distinct vertices from
// `pool` (without replacement inside a tuple, with replacement across tuples).
std::vector<OrderedTuple> sample_targets(const std::vector<Vertex>& pool, int count, int arity,
                                         Rng& rng);

}  // namespace hyperham
