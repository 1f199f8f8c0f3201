#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperham/absorb_connect.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

// Tunables for one end-to-end run. The reals mirror the usual density
// hierarchy (alpha the dense-graph floor, eta the shaving scale, zeta the
// reservoir scale, beta/gamma the gadget budgets); the integers bound the
// desk-scale searches.
struct PipelineConfig {
    int k = 3;
    int ell = 2;
    double alpha = 0.3;          // assumed 1-degree density floor of the dense graph
    double shave_eta = 0.15;     // l-sets with degree below shave_eta^2 n^{k-l} get shaved
    double cover_zeta = 0.2;     // reservoir fraction used by the standalone cover
    double library_beta = 0.12;  // absorber budget: at most library_beta * n absorbers
    double sample_gamma = 0.25;  // at most sample_gamma * n vertices become absorber targets
    int segment_edges = 6;       // preferred edges per covering segment (standalone cover)
    int segment_edges_max = 12;  // hard cap on edges per covering segment
    int exposure_rounds = 4;     // 4 = independent per-stage rounds; 1 = one shared draw
    int max_attempts = 24;       // construction attempts on one set of exposures
    int escalate_after = 8;      // attempt index that unlocks union-graph gadget growth
    int reservoir_tries = 8;     // reservoir samples scored for end-set density
    int max_absorbers = 6;       // hard cap on absorbers per spine
    int phase2_cap = 8;          // max vertices embedded via short straggler paths
    int end_extension_max = 8;   // max extra edges grown onto the spine's outer ends
    int build_retries = 20;      // retries per constructed gadget
    long long search_nodes = 200000;  // backtracking budget per path search
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument on out-of-range fields
};

// Stage-1 products: the twice-shaved graphs, the low/high vertex split, and
// the l-sets usable as path ends.
struct ShavedInstance {
    Hypergraph hprime;          // after the first shave (the input itself when l = 1)
    Hypergraph hstar;           // after the second shave, edges within the high side
    std::vector<char> v0;       // mask: vertices that fell below the degree bound
    std::vector<char> vstar;    // complement mask
    std::vector<Edge> ends;     // sorted l-sets contained in an hstar edge
    long long vertex_bound = 0;
    long long threshold1 = 0;
    long long threshold2 = 0;
};

ShavedInstance shave_instance(const Hypergraph& h, const PipelineConfig& cfg);

// Exact-arithmetic layout of the post-spine cover: how many covering segments
// of which lengths, how many straggler embeddings, how many target blocks stay
// outside the cycle for final absorption, and how many vertices the reservoir
// must hold so that the closing connectors consume it exactly.
struct CoverPlan {
    bool feasible = false;
    int m = 0;           // absorbers chained into the spine
    int x_blocks = 0;    // target blocks designated as the final leftover
    int ends_extra = 0;  // extra edges grown onto the spine's outer ends (total)
    int segments = 0;
    std::vector<int> segment_edges;  // per-segment edge counts, largest first
    int phase2 = 0;                  // vertices embedded via straggler paths
    int reserve = 0;                 // exact reservoir size
    int territory = 0;               // vertices covered by segment interiors + stragglers
    std::string why;                 // reason when infeasible
};

// Solves the vertex-budget equations for a spine with m absorbers given the
// number of off-spine vertices when the ends are bare (v_prime), how many of
// them are low-degree (v0_in) and high-degree (vstar_in). Prefers unextended
// ends, then many leftover blocks, then many (hence short) segments.
CoverPlan plan_cover(int v_prime, int v0_in, int vstar_in, int m, const PathConstants& pc,
                     const PipelineConfig& cfg);

// Standalone two-phase cover (no exactness): sample a reservoir, lay covering
// segments until the uncovered interior is small, then (l >= 2) embed each
// still-uncovered vertex in a short path through the reservoir.
struct CoverResult {
    std::vector<OrderedTuple> paths;
    std::vector<Vertex> leftover;  // vertices of v_prime on no path
    bool ok = false;
    std::string error;
    Vertex stuck = -1;  // first vertex the embedding phase could not place
};

CoverResult path_cover(const Hypergraph& g, const std::vector<char>& v_prime,
                       const std::vector<char>& v0, const std::vector<Edge>& ends,
                       const PipelineConfig& cfg, Rng& rng);

// Plan-driven cover: lays exactly plan.segments segments whose interiors
// consume `territory` completely, then embeds each straggler through the
// reservoir. On success the unconsumed reservoir is exactly the connector
// budget of the plan.
struct PlannedCover {
    bool ok = false;
    std::vector<OrderedTuple> paths;  // segments first, then straggler paths
    std::vector<char> reserve_left;
    std::string error;
    Vertex stuck = -1;
};

PlannedCover cover_with_plan(const Hypergraph& g_segments, const Hypergraph& g_embed,
                             const CoverPlan& plan, const std::vector<char>& territory,
                             const std::vector<Vertex>& stragglers,
                             const std::vector<char>& reserve, const std::vector<Edge>& ends,
                             const PathConstants& pc, const PipelineConfig& cfg, Rng& rng);

// Produces the connector joining an ordered tail l-set to a head l-set, or
// nullopt on shortfall. Implementations must return tuples disjoint from
// everything already placed; the assembly only checks arities.
using ConnectorSource =
    std::function<std::optional<OrderedTuple>(const OrderedTuple&, const OrderedTuple&)>;

struct ChainResult {
    bool ok = false;
    OrderedTuple order;
    int connectors_used = 0;
    std::string error;
    OrderedTuple stuck_tail, stuck_head;  // the junction that failed
};

// Joins the pieces left to right into one open path: piece, connector, piece,
// ... A piece may be a bare l-set. Throws std::invalid_argument when `pieces`
// is empty or a piece is shorter than l.
ChainResult chain_into_path(const std::vector<OrderedTuple>& pieces, int ell,
                            const ConnectorSource& connectors);

// Joins the paths into one cyclic order using one connector per junction
// (including the closing one), so `paths.size()` connectors in total.
ChainResult connect_into_cycle(const std::vector<OrderedTuple>& paths, int ell,
                               const ConnectorSource& connectors);
// Convenience overload drawing connectors from a prebuilt library via take().
ChainResult connect_into_cycle(const std::vector<OrderedTuple>& paths, int ell,
                               ConnectorLibrary& lib);

// Splices one unused absorber per (k-l)-block of `leftover` into the cycle,
// replacing the absorber's passive tuple by its absorbing tuple. The blocks
// are recovered by matching `leftover` against the library's targets. Throws
// std::runtime_error when the leftover does not tile into targets or some
// block has no unused absorber on the cycle; throws nothing when leftover is
// empty (the cycle is returned unchanged).
CycleWitness absorb_leftover(const CycleWitness& cycle, const std::vector<Vertex>& leftover,
                             AbsorberLibrary& lib);

// Per-stage statistics of one pipeline run.
struct PipelineTrace {
    long long edges_input = 0;
    long long edges_hprime = 0;
    long long edges_hstar = 0;
    int v0_size = 0;
    int vstar_size = 0;
    std::size_t ends_size = 0;
    bool degree_floor_met = true;  // input met the alpha floor
    int attempts = 0;
    bool escalated = false;
    int m = 0;
    int x_blocks = 0;
    int segments = 0;
    int phase2 = 0;
    int c1_used = 0;
    int c2_used = 0;
    int absorbers_built = 0;
    int absorptions = 0;
    std::vector<std::string> notes;  // one line per abandoned attempt
};

struct PipelineResult {
    bool success = false;
    CycleWitness witness;       // meaningful iff success
    std::string failure_stage;  // shave | connectors | absorbers | cover | connect | absorb | validate
    std::string diagnostics;
    PipelineTrace trace;
    // the instance together with every exposed random edge; the witness (and
    // any independent re-check) is judged against exactly this graph
    std::optional<Hypergraph> exposed_union;
};

// End-to-end run: expose random edges, shave twice, build the absorber spine,
// cover the rest exactly, close the cycle, absorb the designated leftover, and
// re-check the witness against the union of the input and every exposed edge.
// Throws std::invalid_argument on arity/divisibility violations; all other
// failures are reported via failure_stage.
PipelineResult find_hamilton_cycle(const Hypergraph& h, double p, const PipelineConfig& cfg,
                                   Rng& rng);

}  // namespace hyperham
