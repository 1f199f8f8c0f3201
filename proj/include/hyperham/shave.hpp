#pragma once

#include <vector>

#include "hyperham/hypergraph.hpp"

namespace hyperham {

// Outcome of iterated low-degree l-set deletion. In `shaved` every l-set has
// degree 0 or >= threshold; `zeroed_sets` lists (in processing order) the
// l-sets whose remaining edges were deleted.
struct ShaveResult {
    Hypergraph shaved;
    std::vector<Edge> zeroed_sets;
    long long threshold = 0;
    std::vector<Vertex> low_vertices;  // vertices with degree < vertex_bound in `shaved`
};

// Repeatedly pick any l-set S with 0 < deg(S) < threshold and delete every
// remaining edge containing S, until none exists. The fixed point does not
// depend on processing order. vertex_bound (optional) additionally reports the
// vertices whose 1-degree dropped below it.
ShaveResult shave(const Hypergraph& h, int ell, long long threshold, long long vertex_bound = 0);

// Vertices below/above the degree bound: returns (low, high) as sorted lists.
std::pair<std::vector<Vertex>, std::vector<Vertex>> classify_vertices(const Hypergraph& h,
                                                                      long long bound);

}  // namespace hyperham
