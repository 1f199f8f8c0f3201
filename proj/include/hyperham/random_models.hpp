#pragma once

#include <cstdint>

#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

// Full description of one G(n, p) draw; gnp is a pure function of this.
struct RandomSpec {
    int n = 0;
    int k = 2;
    double p = 0.0;
    std::uint64_t seed = 0;
};

// Multi-round exposure: r independent G(n, p') rounds whose union is G(n, p),
// i.e. (1 - p')^r = 1 - p.
struct ExposurePlan {
    int rounds = 1;
    double per_round_p = 0.0;

    // | (1-p')^r - (1-p) | relative defect; ~1e-16 when consistent.
    double defect_against(double p) const;
};

// Exact C(n, k) in 64 bits; throws std::overflow_error if it does not fit.
std::uint64_t binom_u64(int n, int k);

// Binomial random k-graph. Every k-set is an edge independently with
// probability p. Dense regime (p >= 0.01) walks all C(n,k) slots with one
// Bernoulli draw each; sparse regime jumps between successes with exact
// geometric gaps over the colex-ranked slot sequence. Identical law either way.
Hypergraph gnp(const RandomSpec& spec);
Hypergraph gnp(int n, int k, double p, std::uint64_t seed);

ExposurePlan split_exposure(double p, int rounds);

// Two-part extremal construction: A = {0, .., floor(alpha*n)-1}, B the rest;
// edges are exactly the k-sets meeting both parts.
Hypergraph extremal_h0(int n, int k, double alpha);
int extremal_h0_part_size(int n, double alpha);

}  // namespace hyperham
