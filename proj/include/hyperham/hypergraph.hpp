#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace hyperham {

using Vertex = int;
// An edge is a strictly ascending k-tuple of vertex ids.
using Edge = std::vector<Vertex>;
// A sequence of distinct vertices; order is meaningful (path/cycle layouts).
using OrderedTuple = std::vector<Vertex>;

struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (Vertex v : e) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// k-uniform hypergraph on vertex set {0, ..., n-1}. Edges are stored in
// insertion order (all algorithms iterate vectors, never hash tables, so a
// fixed seed reproduces byte-identical results).
class Hypergraph {
public:
    Hypergraph(int k, int n);

    static Hypergraph complete(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& incident(Vertex v) const { return incident_[static_cast<std::size_t>(v)]; }

    // Inserts the edge given as any permutation of k distinct in-range vertices.
    // Returns false (and leaves the graph unchanged) if the edge already exists.
    bool add_edge(std::span<const Vertex> verts);
    bool add_edge(std::initializer_list<Vertex> verts) {
        return add_edge(std::span<const Vertex>(verts.begin(), verts.size()));
    }

    bool has_edge(std::span<const Vertex> verts) const;
    bool has_edge(std::initializer_list<Vertex> verts) const {
        return has_edge(std::span<const Vertex>(verts.begin(), verts.size()));
    }

    // Number of (k-|S|)-sets T with S u T an edge; |S| must be in [1, k-1].
    long long degree(std::span<const Vertex> s) const;
    long long degree(std::initializer_list<Vertex> s) const {
        return degree(std::span<const Vertex>(s.begin(), s.size()));
    }

    // Minimum of degree(S) over all d-subsets of the vertex set; 0 if n < d.
    long long min_d_degree(int d) const;

    // All l-sets contained in at least one edge, sorted ascending; l in [1, k].
    std::vector<Edge> shadow(int ell) const;

    // Edge-union on the same (k, n); right-hand edges appended after ours.
    Hypergraph union_with(const Hypergraph& other) const;

    // Subgraph keeping only edges fully inside `keep`; vertex ids unchanged.
    Hypergraph restricted_to(const std::vector<char>& keep_mask) const;

    bool operator==(const Hypergraph& other) const {
        return k_ == other.k_ && n_ == other.n_ && edge_set_ == other.edge_set_;
    }

private:
    int k_;
    int n_;
    std::vector<Edge> edges_;
    std::unordered_set<Edge, EdgeHash> edge_set_;
    std::vector<std::vector<int>> incident_;
};

// l-path template P_{a,x}: 2x + l + (k-l)a vertices; the first and last x are
// isolated pads; interior edge i occupies positions x + i(k-l) .. x + i(k-l) + k - 1.
struct PathPattern {
    int k = 0;
    int ell = 0;
    int a = 0;  // number of edges, >= 0
    int x = 0;  // pad width on each side, >= 0

    int vertex_count() const { return 2 * x + ell + (k - ell) * a; }
    int edge_count() const { return a; }
    int edge_start(int i) const { return x + i * (k - ell); }

    void validate() const;  // throws std::invalid_argument on bad fields
};

// Number of vertices of a bare l-path with a edges: a(k-l) + l.
inline int path_vertex_count(int k, int ell, int a) { return a * (k - ell) + ell; }

// True iff the ordered tuple t realises every edge of P as an edge of H
// (pads unconstrained). Throws on arity mismatch or repeated vertices.
bool spans_labeled_copy(const Hypergraph& h, std::span<const Vertex> t, const PathPattern& p);

// Convenience: tuple read as a bare l-path (x = 0) with all windows checked.
bool spans_ell_path(const Hypergraph& h, std::span<const Vertex> t, int ell);

// Candidate Hamilton l-cycle: `order` lists all n vertices; window j is the k
// consecutive positions starting at j(k-l), indices mod n.
struct CycleWitness {
    OrderedTuple order;
    int k = 0;
    int ell = 0;
};

struct CycleCheckReport {
    bool valid = false;
    int first_bad_window = -1;     // -1 when no window fails
    std::string coverage_error;    // empty when order is a permutation of V(H)
};

// Detailed check used by the validate command; is_hamiltonian_cycle is the
// boolean view. Throws MalformedWitnessError when the witness cannot even be
// interpreted (n % (k-l) != 0, fewer than 3 windows, wrong length, n < k).
CycleCheckReport check_hamiltonian_cycle(const Hypergraph& h, const CycleWitness& w);
bool is_hamiltonian_cycle(const Hypergraph& h, const CycleWitness& w);

// Distinctness/range validation shared by tuple-accepting operations.
void validate_tuple(std::span<const Vertex> t, int n, const char* what);

// Text format: header "k n m", then m lines of k ascending vertex ids;
// '#' starts a comment line. write_text emits the canonical form (no
// comments, edges sorted lexicographically), and read_text(write_text(h))
// reproduces h with write_text bit-identical.
std::string write_text(const Hypergraph& h);
Hypergraph read_text(std::istream& in);
Hypergraph read_text_from(const std::string& text);
Hypergraph read_text_file(const std::string& path);
void write_text_file(const Hypergraph& h, const std::string& path, const std::string& comment = "");

}  // namespace hyperham
