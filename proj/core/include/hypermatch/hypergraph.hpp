#pragma once

#include "hypermatch/types.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hypermatch {

/// A k-uniform hypergraph on vertices 0..n-1.
///
/// Edges are kept in canonical form: each edge strictly increasing, the edge
/// list deduplicated and sorted lexicographically. All downstream enumeration
/// walks edges in this order, which is what makes every search deterministic.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Canonicalizes `edges` (sorts each one, sorts and deduplicates the list).
    /// Throws std::invalid_argument if k < 2, n < 0, or an edge does not have
    /// exactly k distinct vertices in [0, n).
    Hypergraph(int n, int k, std::vector<Edge> edges);

    static Hypergraph complete(int n, int k);
    static Hypergraph edgeless(int n, int k) { return Hypergraph(n, k, {}); }

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    bool has_edge(const Edge& sorted_edge) const;

    /// Mask-based access; requires searchable().
    bool searchable() const { return n_ <= kMaxSearchVertices; }
    Mask edge_mask(std::size_t i) const { return masks_[i]; }
    bool has_edge_mask(Mask m) const;
    /// Indices of edges containing v, ascending (so in canonical edge order).
    const std::vector<std::size_t>& incident(Vertex v) const { return incident_[v]; }
    Mask all_vertices() const;

    /// Stable 64-bit FNV-1a hash of (n, k, canonical edge list).
    std::uint64_t fingerprint() const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b)
    {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
    }

private:
    void require_searchable() const;

    int n_ = 0;
    int k_ = 2;
    std::vector<Edge> edges_;
    std::vector<Mask> masks_;
    std::vector<Mask> sorted_masks_;
    std::vector<std::vector<std::size_t>> incident_;
};

/// A set of pairwise disjoint edges of some host hypergraph.
struct Matching {
    std::vector<Edge> edges;

    std::size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
    /// Sorted union of the edges' vertices.
    VertexSet covered() const;
    /// Sorts edges lexicographically.
    void canonicalize();

    friend bool operator==(const Matching&, const Matching&) = default;
};

/// True iff every edge of m is an edge of h and the edges are pairwise disjoint.
bool is_matching_of(const Hypergraph& h, const Matching& m);
bool is_perfect_matching_of(const Hypergraph& h, const Matching& m);

/// Number of edges containing S. Throws std::invalid_argument if |S| > k.
std::size_t degree(const Hypergraph& h, const VertexSet& s);

/// Minimum over all l-subsets S of degree(h, S); |E(h)| when l == 0.
/// Throws std::invalid_argument unless 0 <= l <= k-1.
std::size_t min_l_degree(const Hypergraph& h, int l);

/// Exhaustive backtracking on the least uncovered vertex. Returns the first
/// perfect matching in canonical branching order, or nullopt.
std::optional<Matching> perfect_matching_oracle(const Hypergraph& h);

/// Same search restricted to the induced sub-hypergraph on `vertices`.
std::optional<Matching> perfect_matching_on(const Hypergraph& h, Mask vertices);
bool has_perfect_matching_on(const Hypergraph& h, Mask vertices);

/// Maximum-cardinality matching by branch and bound.
Matching max_matching(const Hypergraph& h);
Matching max_matching_on(const Hypergraph& h, Mask vertices);

struct InducedSubgraph {
    Hypergraph graph;
    /// original[i] is the vertex of the host that became vertex i.
    VertexSet original;
};

InducedSubgraph induced(const Hypergraph& h, const VertexSet& u);

/// Text format: first line "k n m", then m lines of k vertex ids.
/// Rejects duplicate edges, out-of-range ids, repeated vertices within an edge,
/// and a wrong edge count with std::invalid_argument.
Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

}  // namespace hypermatch
