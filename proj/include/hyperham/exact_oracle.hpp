#pragma once

#include <cstdint>

#include "hyperham/hypergraph.hpp"

namespace hyperham {

struct SearchBudget {
    long long node_limit = 20'000'000;  // DFS nodes before giving up
    long long time_limit_ms = 0;        // 0 = no wall-clock cap
};

enum class Ternary { kYes, kNo, kUnknown };

struct OracleResult {
    Ternary outcome = Ternary::kUnknown;
    CycleWitness witness;  // filled on yes from hamilton_exists
    OrderedTuple path;     // filled on yes from ell_path_exists
    long long nodes = 0;   // DFS nodes explored
};

// Exhaustive backtracking search for a spanning l-cycle. Rotation symmetry is
// killed by anchoring the first window to an edge containing vertex 0 (every
// presentation of a cycle has one). Throws std::invalid_argument when n is not
// divisible by k-l or fewer than three windows would fit.
OracleResult hamilton_exists(const Hypergraph& h, int ell, const SearchBudget& budget = {});

// Exhaustive search for an l-path with a >= 1 edges anywhere in h.
OracleResult ell_path_exists(const Hypergraph& h, int ell, int a, const SearchBudget& budget = {});

// Number of ordered vertex_count()-tuples spanning a labeled copy of the
// pattern (pad positions unconstrained). Exact; throws std::overflow_error
// if the count exceeds 64 bits.
std::uint64_t count_labeled_copies(const Hypergraph& h, const PathPattern& pattern);

}  // namespace hyperham
