#pragma once

// Independent brute-force references. None of these call the library's
// search routines; they only read the edge list.

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/types.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using hypermatch::Edge;
using hypermatch::Hypergraph;
using hypermatch::IndexVector;
using hypermatch::VertexSet;

inline std::uint32_t edge_bits(const Edge& e)
{
    std::uint32_t m = 0;
    for (int v : e) m |= 1u << v;
    return m;
}

/// pm[mask]: H[mask] has a perfect matching, by DP over all 2^n vertex subsets.
/// The lowest vertex of a non-empty mask must be covered by some edge inside it.
inline std::vector<char> pm_table(const Hypergraph& h)
{
    const int n = h.n();
    std::vector<std::vector<std::uint32_t>> through(n);
    for (const auto& e : h.edges()) through[e.front()].push_back(edge_bits(e));
    std::vector<char> pm(std::size_t{1} << n, 0);
    pm[0] = 1;
    for (std::uint32_t mask = 1; mask < pm.size(); ++mask) {
        const int low = __builtin_ctz(mask);
        for (std::uint32_t e : through[low])
            if ((e & mask) == e && pm[mask & ~e]) {
                pm[mask] = 1;
                break;
            }
    }
    return pm;
}

inline bool has_pm(const Hypergraph& h)
{
    if (h.n() == 0) return true;
    return pm_table(h).back() != 0;
}

/// Maximum matching size by DP over vertex subsets.
inline int max_matching_size(const Hypergraph& h)
{
    const int n = h.n();
    std::vector<std::vector<std::uint32_t>> through(n);
    for (const auto& e : h.edges()) through[e.front()].push_back(edge_bits(e));
    std::vector<int> best(std::size_t{1} << n, 0);
    for (std::uint32_t mask = 1; mask < best.size(); ++mask) {
        const int low = __builtin_ctz(mask);
        int b = best[mask & ~(1u << low)];
        for (std::uint32_t e : through[low])
            if ((e & mask) == e) b = std::max(b, 1 + best[mask & ~e]);
        best[mask] = b;
    }
    return best.back();
}

/// Calls f on every matching (including the empty one), each exactly once.
inline void for_each_matching(const Hypergraph& h, const std::function<void(const std::vector<Edge>&)>& f)
{
    std::vector<Edge> cur;
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t start, std::uint32_t used) {
        f(cur);
        for (std::size_t i = start; i < h.edge_count(); ++i) {
            const std::uint32_t m = edge_bits(h.edge(i));
            if (m & used) continue;
            cur.push_back(h.edge(i));
            rec(i + 1, used | m);
            cur.pop_back();
        }
    };
    rec(0, 0);
}

inline std::size_t degree(const Hypergraph& h, const VertexSet& s)
{
    std::size_t d = 0;
    for (const auto& e : h.edges())
        if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++d;
    return d;
}

/// v = sum a_g gens[g] with every |a_g| <= bound, by exhaustive enumeration.
inline std::optional<std::vector<long>> combination(const std::vector<IndexVector>& gens, const IndexVector& v,
                                                    long bound)
{
    std::vector<long> a(gens.size(), -bound);
    if (gens.empty()) {
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return a;
        return std::nullopt;
    }
    while (true) {
        IndexVector s(v.size(), 0);
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t i = 0; i < v.size(); ++i) s[i] += a[g] * gens[g][i];
        if (s == v) return a;
        std::size_t i = 0;
        while (i < a.size() && a[i] == bound) a[i++] = -bound;
        if (i == a.size()) return std::nullopt;
        ++a[i];
    }
}

}  // namespace oracle
