#include "hyperham/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "hyperham/errors.hpp"

namespace hyperham {

namespace {

Edge sorted_copy(std::span<const Vertex> verts) {
    Edge e(verts.begin(), verts.end());
    std::sort(e.begin(), e.end());
    return e;
}

void check_vertex_range(std::span<const Vertex> verts, int n, const char* what) {
    for (Vertex v : verts) {
        if (v < 0 || v >= n) {
            throw std::out_of_range(std::string(what) + ": vertex " + std::to_string(v) +
                                    " outside [0, " + std::to_string(n) + ")");
        }
    }
}

void check_distinct_sorted(const Edge& sorted, const char* what) {
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument(std::string(what) + ": repeated vertex " +
                                        std::to_string(sorted[i]));
        }
    }
}

}  // namespace

void validate_tuple(std::span<const Vertex> t, int n, const char* what) {
    check_vertex_range(t, n, what);
    Edge s = sorted_copy(t);
    check_distinct_sorted(s, what);
}

Hypergraph::Hypergraph(int k, int n) : k_(k), n_(n) {
    if (k < 2) throw std::invalid_argument("hypergraph: k must be >= 2");
    if (n < 0) throw std::invalid_argument("hypergraph: n must be >= 0");
    incident_.resize(static_cast<std::size_t>(n));
}

Hypergraph Hypergraph::complete(int k, int n) {
    Hypergraph h(k, n);
    if (n < k) return h;
    Edge e(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i;
    for (;;) {
        h.add_edge(e);
        int i = k - 1;
        while (i >= 0 && e[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++e[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] + 1;
    }
    return h;
}

bool Hypergraph::add_edge(std::span<const Vertex> verts) {
    if (static_cast<int>(verts.size()) != k_) {
        throw std::invalid_argument("add_edge: expected " + std::to_string(k_) + " vertices, got " +
                                    std::to_string(verts.size()));
    }
    check_vertex_range(verts, n_, "add_edge");
    Edge e = sorted_copy(verts);
    check_distinct_sorted(e, "add_edge");
    if (edge_set_.count(e)) return false;
    int id = static_cast<int>(edges_.size());
    for (Vertex v : e) incident_[static_cast<std::size_t>(v)].push_back(id);
    edge_set_.insert(e);
    edges_.push_back(std::move(e));
    return true;
}

bool Hypergraph::has_edge(std::span<const Vertex> verts) const {
    if (static_cast<int>(verts.size()) != k_) return false;
    Edge e = sorted_copy(verts);
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i] == e[i - 1]) return false;
    }
    return edge_set_.count(e) > 0;
}

long long Hypergraph::degree(std::span<const Vertex> s) const {
    int d = static_cast<int>(s.size());
    if (d < 1 || d >= k_) {
        throw std::invalid_argument("degree: |S| must be in [1, k-1], got " + std::to_string(d));
    }
    check_vertex_range(s, n_, "degree");
    Edge key = sorted_copy(s);
    check_distinct_sorted(key, "degree");
    // Scan the shortest incidence list among the members of S.
    Vertex pivot = key[0];
    for (Vertex v : key) {
        if (incident_[static_cast<std::size_t>(v)].size() <
            incident_[static_cast<std::size_t>(pivot)].size()) {
            pivot = v;
        }
    }
    long long count = 0;
    for (int id : incident_[static_cast<std::size_t>(pivot)]) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (std::includes(e.begin(), e.end(), key.begin(), key.end())) ++count;
    }
    return count;
}

long long Hypergraph::min_d_degree(int d) const {
    if (d < 1 || d >= k_) {
        throw std::invalid_argument("min_d_degree: d must be in [1, k-1], got " + std::to_string(d));
    }
    if (n_ < d) return 0;
    long long best = -1;
    Edge s(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) s[static_cast<std::size_t>(i)] = i;
    for (;;) {
        long long deg = degree(s);
        if (best < 0 || deg < best) best = deg;
        if (best == 0) break;  // cannot go lower
        int i = d - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == n_ - d + i) --i;
        if (i < 0) break;
        ++s[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    }
    return best < 0 ? 0 : best;
}

std::vector<Edge> Hypergraph::shadow(int ell) const {
    if (ell < 1 || ell > k_) {
        throw std::invalid_argument("shadow: l must be in [1, k], got " + std::to_string(ell));
    }
    std::unordered_set<Edge, EdgeHash> seen;
    std::vector<Edge> out;
    std::vector<int> idx(static_cast<std::size_t>(ell));
    for (const Edge& e : edges_) {
        // enumerate l-subsets of the (sorted) edge
        for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            Edge s(static_cast<std::size_t>(ell));
            for (int i = 0; i < ell; ++i) s[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            if (seen.insert(s).second) out.push_back(std::move(s));
            int i = ell - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == k_ - ell + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < ell; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph Hypergraph::union_with(const Hypergraph& other) const {
    if (other.k_ != k_ || other.n_ != n_) {
        throw std::invalid_argument("union_with: mismatched k or n");
    }
    Hypergraph h(k_, n_);
    for (const Edge& e : edges_) h.add_edge(e);
    for (const Edge& e : other.edges_) h.add_edge(e);
    return h;
}

Hypergraph Hypergraph::restricted_to(const std::vector<char>& keep_mask) const {
    if (static_cast<int>(keep_mask.size()) != n_) {
        throw std::invalid_argument("restricted_to: mask size must equal n");
    }
    Hypergraph h(k_, n_);
    for (const Edge& e : edges_) {
        bool inside = true;
        for (Vertex v : e) {
            if (!keep_mask[static_cast<std::size_t>(v)]) {
                inside = false;
                break;
            }
        }
        if (inside) h.add_edge(e);
    }
    return h;
}

void PathPattern::validate() const {
    if (k < 2) throw std::invalid_argument("path pattern: k must be >= 2");
    if (ell < 1 || ell >= k) throw std::invalid_argument("path pattern: l must be in [1, k-1]");
    if (a < 0) throw std::invalid_argument("path pattern: a must be >= 0");
    if (x < 0) throw std::invalid_argument("path pattern: x must be >= 0");
}

bool spans_labeled_copy(const Hypergraph& h, std::span<const Vertex> t, const PathPattern& p) {
    p.validate();
    if (p.k != h.k()) throw std::invalid_argument("spans_labeled_copy: pattern k differs from graph k");
    if (static_cast<int>(t.size()) != p.vertex_count()) {
        throw std::invalid_argument("spans_labeled_copy: tuple has " + std::to_string(t.size()) +
                                    " vertices, pattern needs " + std::to_string(p.vertex_count()));
    }
    validate_tuple(t, h.n(), "spans_labeled_copy");
    std::vector<Vertex> window(static_cast<std::size_t>(p.k));
    for (int i = 0; i < p.a; ++i) {
        int s = p.edge_start(i);
        for (int j = 0; j < p.k; ++j) window[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(s + j)];
        if (!h.has_edge(window)) return false;
    }
    return true;
}

bool spans_ell_path(const Hypergraph& h, std::span<const Vertex> t, int ell) {
    int span = static_cast<int>(t.size()) - ell;
    int step = h.k() - ell;
    if (ell < 1 || ell >= h.k() || span < 0 || span % step != 0) {
        throw std::invalid_argument("spans_ell_path: tuple length " + std::to_string(t.size()) +
                                    " is not l + a(k-l) for l=" + std::to_string(ell));
    }
    PathPattern p{h.k(), ell, span / step, 0};
    return spans_labeled_copy(h, t, p);
}

CycleCheckReport check_hamiltonian_cycle(const Hypergraph& h, const CycleWitness& w) {
    int k = h.k();
    int n = h.n();
    if (w.k != k || w.ell < 1 || w.ell >= k) {
        throw MalformedWitnessError("cycle witness: k/l do not match graph (k=" + std::to_string(w.k) +
                                    ", l=" + std::to_string(w.ell) + ")");
    }
    int step = k - w.ell;
    if (n % step != 0) {
        throw MalformedWitnessError("cycle witness: n=" + std::to_string(n) +
                                    " not divisible by k-l=" + std::to_string(step));
    }
    int m = n / step;
    if (m < 3) {
        throw MalformedWitnessError("cycle witness: needs at least 3 windows, got " + std::to_string(m));
    }
    if (n < k) {
        throw MalformedWitnessError("cycle witness: n < k");
    }
    if (static_cast<int>(w.order.size()) != n) {
        throw MalformedWitnessError("cycle witness: order lists " + std::to_string(w.order.size()) +
                                    " vertices, graph has " + std::to_string(n));
    }

    CycleCheckReport rep;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : w.order) {
        if (v < 0 || v >= n) {
            rep.coverage_error = "vertex " + std::to_string(v) + " out of range";
            return rep;
        }
        if (seen[static_cast<std::size_t>(v)]) {
            rep.coverage_error = "vertex " + std::to_string(v) + " repeated";
            return rep;
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }

    std::vector<Vertex> window(static_cast<std::size_t>(k));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < k; ++i) {
            window[static_cast<std::size_t>(i)] = w.order[static_cast<std::size_t>((j * step + i) % n)];
        }
        if (!h.has_edge(window)) {
            rep.first_bad_window = j;
            return rep;
        }
    }
    rep.valid = true;
    return rep;
}

bool is_hamiltonian_cycle(const Hypergraph& h, const CycleWitness& w) {
    return check_hamiltonian_cycle(h, w).valid;
}

std::string write_text(const Hypergraph& h) {
    std::vector<Edge> sorted = h.edges();
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream out;
    out << h.k() << ' ' << h.n() << ' ' << sorted.size() << '\n';
    for (const Edge& e : sorted) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
    return out.str();
}

Hypergraph read_text(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_content_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;   // blank
            if (line[pos] == '#') continue;           // comment
            return true;
        }
        if (required) throw ParseError("unexpected end of input", line_no);
        return false;
    };

    next_content_line(true);
    std::istringstream header(line);
    int k = 0, n = 0;
    long long m = -1;
    if (!(header >> k >> n >> m)) throw ParseError("header must be 'k n m'", line_no);
    std::string trailing;
    if (header >> trailing) throw ParseError("trailing tokens after header", line_no);
    if (k < 2) throw ParseError("k must be >= 2", line_no);
    if (n < 0) throw ParseError("n must be >= 0", line_no);
    if (m < 0) throw ParseError("m must be >= 0", line_no);

    Hypergraph h(k, n);
    Edge e(static_cast<std::size_t>(k));
    for (long long i = 0; i < m; ++i) {
        next_content_line(true);
        std::istringstream row(line);
        for (int j = 0; j < k; ++j) {
            if (!(row >> e[static_cast<std::size_t>(j)])) {
                throw ParseError("edge line needs " + std::to_string(k) + " vertex ids", line_no);
            }
            if (j > 0 && e[static_cast<std::size_t>(j)] <= e[static_cast<std::size_t>(j - 1)]) {
                throw ParseError("edge vertices must be strictly ascending", line_no);
            }
        }
        if (row >> trailing) throw ParseError("trailing tokens after edge", line_no);
        try {
            if (!h.add_edge(e)) throw ParseError("duplicate edge", line_no);
        } catch (const std::out_of_range&) {
            throw ParseError("vertex id out of range", line_no);
        }
    }
    if (next_content_line(false)) throw ParseError("extra content after last edge", line_no);
    return h;
}

Hypergraph read_text_from(const std::string& text) {
    std::istringstream in(text);
    return read_text(in);
}

Hypergraph read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_text(in);
}

void write_text_file(const Hypergraph& h, const std::string& path, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (!comment.empty()) out << "# " << comment << '\n';
    out << write_text(h);
}

}  // namespace hyperham
