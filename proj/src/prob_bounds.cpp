#include "hyperham/prob_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperham {

double log_phi(const PathPattern& pattern, int n, double p) {
    pattern.validate();
    if (pattern.a < 1) throw std::invalid_argument("phi: pattern needs at least one edge");
    if (pattern.a > 24) throw std::invalid_argument("phi: edge-subset enumeration capped at a <= 24");
    if (n < 1) throw std::invalid_argument("phi: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("phi: p must be in (0, 1]");

    int a = pattern.a;
    int k = pattern.k;
    int step = k - pattern.ell;
    double log_n = std::log(static_cast<double>(n));
    double log_p = std::log(p);

    // Every subgraph with at least one edge is (up to discarding isolated
    // vertices, which only raise n^v) a nonempty subset of the a edges; walk
    // all 2^a - 1 subsets and count the vertices their windows span.
    double best = 0.0;
    bool first = true;
    int b = pattern.vertex_count();
    std::vector<char> covered(static_cast<std::size_t>(b));
    for (unsigned mask = 1; mask < (1u << a); ++mask) {
        std::fill(covered.begin(), covered.end(), 0);
        int edges = 0;
        int verts = 0;
        for (int i = 0; i < a; ++i) {
            if (!(mask & (1u << i))) continue;
            ++edges;
            int s = pattern.edge_start(i);
            for (int j = 0; j < k; ++j) {
                if (!covered[static_cast<std::size_t>(s + j)]) {
                    covered[static_cast<std::size_t>(s + j)] = 1;
                    ++verts;
                }
            }
        }
        (void)step;
        double val = verts * log_n + edges * log_p;
        if (first || val < best) {
            best = val;
            first = false;
        }
    }
    return best;
}

double phi(const PathPattern& pattern, int n, double p) {
    return std::exp(log_phi(pattern, n, p));
}

double delta_bound(int s, int f, int n, double p, double phi_value) {
    if (s < 1 || f < 0) throw std::invalid_argument("delta_bound: need s >= 1, f >= 0");
    if (n < 1) throw std::invalid_argument("delta_bound: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("delta_bound: p must be in (0, 1]");
    if (!(phi_value > 0.0)) throw std::invalid_argument("delta_bound: phi must be > 0");
    double log_val = s * std::log(2.0) + std::lgamma(static_cast<double>(s) + 1.0) +
                     2.0 * s * std::log(static_cast<double>(n)) + 2.0 * f * std::log(p) -
                     std::log(phi_value);
    return std::exp(log_val);
}

double janson_lower_tail(double lambda, double t, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("janson_lower_tail: delta must be > 0");
    if (!(t >= 0.0 && t <= lambda)) {
        throw std::invalid_argument("janson_lower_tail: need 0 <= t <= lambda");
    }
    return std::exp(-(t * t) / (2.0 * delta));
}

std::pair<double, double> chernoff_tails(double n, double zeta, double x) {
    if (!(n > 0.0)) throw std::invalid_argument("chernoff_tails: n must be > 0");
    if (!(zeta > 0.0 && zeta < 1.0)) throw std::invalid_argument("chernoff_tails: zeta must be in (0, 1)");
    if (!(x > 0.0)) throw std::invalid_argument("chernoff_tails: x must be > 0");
    double mean = n * zeta;
    double upper = std::exp(-(x * x) / (2.0 * mean + x / 3.0));
    double lower = std::exp(-(x * x) / (2.0 * mean));
    return {std::min(upper, 1.0), std::min(lower, 1.0)};
}

int sharpness_path_edges(int k, int ell, double alpha) {
    if (ell < 2) throw std::invalid_argument("sharpness_path_edges: defined for l >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("sharpness_path_edges: alpha in (0,1)");
    double raw = (1.0 / alpha - 1.0 - static_cast<double>(ell)) / static_cast<double>(k - ell);
    int a = static_cast<int>(std::floor(raw));
    if (a < 1) {
        throw std::domain_error("sharpness threshold inapplicable: floor((1/alpha - 1 - l)/(k - l)) = " +
                                std::to_string(a) + " < 1");
    }
    return a;
}

double sharpness_threshold(int k, int ell, double alpha, int n) {
    if (k < 3 || ell < 1 || ell >= k) throw std::invalid_argument("sharpness_threshold: need k >= 3, 1 <= l < k");
    if (n < 1) throw std::invalid_argument("sharpness_threshold: n must be >= 1");
    if (ell == 1) {
        return std::pow(static_cast<double>(n), -(k - 1)) / (2.0 * k);
    }
    int a = sharpness_path_edges(k, ell, alpha);
    double exponent = -static_cast<double>(k - ell) - static_cast<double>(ell) / static_cast<double>(a);
    return std::pow(0.5, 1.0 / static_cast<double>(a)) * std::pow(static_cast<double>(n), exponent);
}

double falling_factorial(int n, int b) {
    if (b > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < b; ++i) r *= static_cast<double>(n - i);
    return r;
}

BoundReport make_bound_report(const PathPattern& pattern, int n, double p) {
    BoundReport rep;
    rep.pattern = pattern;
    rep.n = n;
    rep.p = p;
    rep.phi = phi(pattern, n, p);
    int b = pattern.vertex_count();
    rep.lambda = falling_factorial(n, b) * std::pow(p, pattern.a);
    rep.delta_bound = delta_bound(b, pattern.a, n, p, rep.phi);
    rep.janson_tail = std::min(1.0, janson_lower_tail(rep.lambda, rep.lambda / 2.0, rep.delta_bound));
    rep.chebyshev_tail = rep.lambda > 0.0 ? std::min(1.0, rep.delta_bound / (rep.lambda * rep.lambda)) : 1.0;
    // Edge-count concentration for the underlying G(n, p) draw itself.
    double slots = 1.0;
    for (int i = 0; i < pattern.k; ++i) slots *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    double x = std::max(slots * p / 2.0, 1e-12);
    if (p > 0.0 && p < 1.0) {
        rep.chernoff_tails = chernoff_tails(slots, p, x);
    } else {
        rep.chernoff_tails = {0.0, 0.0};
    }
    return rep;
}

}  // namespace hyperham
