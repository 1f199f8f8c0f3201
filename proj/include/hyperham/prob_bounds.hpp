#pragma once

#include <utility>

#include "hyperham/hypergraph.hpp"

namespace hyperham {

// First-moment / second-moment report for labeled copies of P_{a,x} in
// G(n, p), plus the binomial edge-count tails. All quantities are upper
// bounds on the stated tail probabilities except lambda (an exact mean).
struct BoundReport {
    PathPattern pattern;
    int n = 0;
    double p = 0.0;
    double phi = 0.0;             // min over sub-patterns of n^v p^e
    double lambda = 0.0;          // expected labeled copies, (n)_b p^a
    double delta_bound = 0.0;     // pair-overlap bound 2^b b! n^{2b} p^{2a} / phi
    double janson_tail = 0.0;     // P(X <= lambda - t) bound at t = lambda/2
    double chebyshev_tail = 0.0;  // P(X >= 2 lambda) bound, delta/lambda^2
    std::pair<double, double> chernoff_tails{0.0, 0.0};  // edge count: upper/lower at x = mean/2
};

// min over nonempty edge subsets E' of the pattern of n^{|V(E')|} p^{|E'|},
// computed in log space. Requires n >= 1, 0 < p <= 1, a >= 1.
double phi(const PathPattern& pattern, int n, double p);
double log_phi(const PathPattern& pattern, int n, double p);

// 2^s s! n^{2s} p^{2f} / phi_value for a pattern with s vertices, f edges.
double delta_bound(int s, int f, int n, double p, double phi_value);

// exp(-t^2 / (2 delta)); requires 0 <= t <= lambda and delta > 0.
double janson_lower_tail(double lambda, double t, double delta);

// Binomial Bin(n, zeta) deviation x > 0:
//   first  = bound on P(X >= n zeta + x) = exp(-x^2 / (2 n zeta + x/3))
//   second = bound on P(X <= n zeta - x) = exp(-x^2 / (2 n zeta))
std::pair<double, double> chernoff_tails(double n, double zeta, double x);

// Perturbation threshold under which the two-part extremal graph stays
// uncoverable: l = 1 gives n^{-(k-1)} / (2k); l >= 2 gives
// (1/2)^{1/a} * n^{-(k-l) - l/a} with a = floor((1/alpha - 1 - l) / (k-l)).
// Throws std::domain_error when a < 1 (regime inapplicable).
double sharpness_threshold(int k, int ell, double alpha, int n);
int sharpness_path_edges(int k, int ell, double alpha);

// Exact (n)_b as a double (b <= n assumed; returns 0 if b > n).
double falling_factorial(int n, int b);

BoundReport make_bound_report(const PathPattern& pattern, int n, double p);

}  // namespace hyperham
