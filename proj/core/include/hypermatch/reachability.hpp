#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/types.hpp"

#include <cstdint>
#include <vector>

namespace hypermatch {

/// u and v are (beta, depth)-reachable when at least beta * |A|^(depth*k - 1)
/// sets S of size depth*k - 1 in A \ {u, v} make both H[S + u] and H[S + v]
/// perfectly matchable, where A is the ambient vertex set.
struct ReachabilityParams {
    Rational beta;
    int depth = 1;
};

void validate(const ReachabilityParams& p);

/// Number of reachable (depth*k - 1)-sets for u and v drawn from ambient \ {u, v}.
/// Throws std::invalid_argument if u == v or either is outside `ambient`.
std::uint64_t reachable_count(const Hypergraph& h, Vertex u, Vertex v, int depth,
                              const VertexSet& ambient);

/// Exact comparison count >= beta * |ambient|^(depth*k - 1).
bool meets_reachability_threshold(std::uint64_t count, const ReachabilityParams& p, int k,
                                  std::size_t ambient_size);

bool is_reachable(const Hypergraph& h, Vertex u, Vertex v, const ReachabilityParams& p,
                  const VertexSet& ambient);

/// Vertices of ambient \ {v} reachable to v, sorted.
VertexSet reachable_neighborhood(const Hypergraph& h, Vertex v, const ReachabilityParams& p,
                                 const VertexSet& ambient);

/// True iff every unordered pair of U is reachable (vacuous for |U| <= 1).
bool is_closed(const Hypergraph& h, const VertexSet& u, const ReachabilityParams& p,
               const VertexSet& ambient);

/// All pairwise reachability decisions inside one ambient set, computed once.
class ReachabilityTable {
public:
    ReachabilityTable(const Hypergraph& h, const VertexSet& ambient, const ReachabilityParams& p);

    const VertexSet& ambient() const { return ambient_; }
    bool reachable(Vertex u, Vertex v) const;
    std::uint64_t count(Vertex u, Vertex v) const;
    VertexSet neighborhood(Vertex v) const;
    bool closed(const VertexSet& u) const;

private:
    std::size_t slot(Vertex v) const;

    VertexSet ambient_;
    std::vector<int> position_;
    std::vector<std::uint64_t> counts_;
    std::vector<char> reachable_;
};

}  // namespace hypermatch
