#include "hypermatch/reachability.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypermatch {

void validate(const ReachabilityParams& p)
{
    if (p.beta <= 0 || p.beta > 1) throw std::invalid_argument("reachability beta must lie in (0, 1]");
    if (p.depth < 1) throw std::invalid_argument("reachability depth must be at least 1");
}

std::uint64_t reachable_count(const Hypergraph& h, Vertex u, Vertex v, int depth,
                              const VertexSet& ambient)
{
    if (u == v) throw std::invalid_argument("reachable_count needs distinct vertices");
    if (!std::binary_search(ambient.begin(), ambient.end(), u) ||
        !std::binary_search(ambient.begin(), ambient.end(), v))
        throw std::invalid_argument("reachable_count: u and v must lie in the ambient set");
    if (depth < 1) throw std::invalid_argument("reachable_count: depth must be at least 1");
    if (!h.searchable()) throw std::domain_error("reachability supports at most 64 vertices");

    const Mask amb = to_mask(ambient);
    const Mask mu = Mask{1} << u;
    const Mask mv = Mask{1} << v;
    std::uint64_t count = 0;

    if (depth == 1) {
        // S + u is perfectly matchable iff it is an edge.
        for (std::size_t ei : h.incident(u)) {
            const Mask em = h.edge_mask(ei);
            if ((em & ~amb) != 0 || (em & mv) != 0) continue;
            if (h.has_edge_mask((em & ~mu) | mv)) ++count;
        }
        return count;
    }

    const VertexSet pool = from_mask(amb & ~mu & ~mv);
    for_each_subset(pool, depth * h.k() - 1, [&](const VertexSet& s) {
        const Mask sm = to_mask(s);
        if (has_perfect_matching_on(h, sm | mu) && has_perfect_matching_on(h, sm | mv)) ++count;
        return true;
    });
    return count;
}

bool meets_reachability_threshold(std::uint64_t count, const ReachabilityParams& p, int k,
                                  std::size_t ambient_size)
{
    const BigInt scale = ipow(BigInt(ambient_size), static_cast<unsigned>(p.depth * k - 1));
    return BigInt(count) * boost::multiprecision::denominator(p.beta) >=
           boost::multiprecision::numerator(p.beta) * scale;
}

bool is_reachable(const Hypergraph& h, Vertex u, Vertex v, const ReachabilityParams& p,
                  const VertexSet& ambient)
{
    validate(p);
    return meets_reachability_threshold(reachable_count(h, u, v, p.depth, ambient), p, h.k(),
                                        ambient.size());
}

VertexSet reachable_neighborhood(const Hypergraph& h, Vertex v, const ReachabilityParams& p,
                                 const VertexSet& ambient)
{
    VertexSet out;
    for (Vertex u : ambient)
        if (u != v && is_reachable(h, u, v, p, ambient)) out.push_back(u);
    return out;
}

bool is_closed(const Hypergraph& h, const VertexSet& u, const ReachabilityParams& p,
               const VertexSet& ambient)
{
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!is_reachable(h, u[i], u[j], p, ambient)) return false;
    return true;
}

ReachabilityTable::ReachabilityTable(const Hypergraph& h, const VertexSet& ambient,
                                     const ReachabilityParams& p)
    : ambient_(ambient), position_(h.n(), -1)
{
    validate(p);
    check_vertex_set(ambient, h.n());
    const std::size_t a = ambient_.size();
    for (std::size_t i = 0; i < a; ++i) position_[ambient_[i]] = static_cast<int>(i);
    counts_.assign(a * a, 0);
    reachable_.assign(a * a, 0);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = i + 1; j < a; ++j) {
            const std::uint64_t c = reachable_count(h, ambient_[i], ambient_[j], p.depth, ambient_);
            const char r = meets_reachability_threshold(c, p, h.k(), a) ? 1 : 0;
            counts_[i * a + j] = counts_[j * a + i] = c;
            reachable_[i * a + j] = reachable_[j * a + i] = r;
        }
}

std::size_t ReachabilityTable::slot(Vertex v) const
{
    if (v < 0 || v >= static_cast<int>(position_.size()) || position_[v] < 0)
        throw std::invalid_argument("vertex outside the reachability table's ambient set");
    return static_cast<std::size_t>(position_[v]);
}

bool ReachabilityTable::reachable(Vertex u, Vertex v) const
{
    if (u == v) return false;
    return reachable_[slot(u) * ambient_.size() + slot(v)] != 0;
}

std::uint64_t ReachabilityTable::count(Vertex u, Vertex v) const
{
    if (u == v) return 0;
    return counts_[slot(u) * ambient_.size() + slot(v)];
}

VertexSet ReachabilityTable::neighborhood(Vertex v) const
{
    VertexSet out;
    for (Vertex u : ambient_)
        if (u != v && reachable(u, v)) out.push_back(u);
    return out;
}

bool ReachabilityTable::closed(const VertexSet& u) const
{
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!reachable(u[i], u[j])) return false;
    return true;
}

}  // namespace hypermatch
