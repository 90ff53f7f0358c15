#include "hypermatch/instances.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hypermatch {

std::string to_string(BarrierKind kind)
{
    switch (kind) {
    case BarrierKind::space: return "space";
    case BarrierKind::cover: return "cover";
    case BarrierKind::lattice: return "lattice";
    }
    return "unknown";
}

BarrierSpec space_barrier_spec(int n, int k)
{
    if (k < 2 || n < k) throw std::invalid_argument("space_barrier requires n >= k >= 2");
    int y = n / 2;
    if (y % 2 == 0) --y;
    return {n, k, {n - y, y}, BarrierKind::space};
}

Hypergraph space_barrier(int n, int k)
{
    const BarrierSpec spec = space_barrier_spec(n, k);
    const int x_size = spec.part_sizes[0];
    std::vector<Edge> edges;
    for_each_subset(iota_set(0, n), k, [&](const VertexSet& s) {
        const auto in_y = std::count_if(s.begin(), s.end(), [&](Vertex v) { return v >= x_size; });
        if (in_y % 2 == 0) edges.push_back(s);
        return true;
    });
    return Hypergraph(n, k, std::move(edges));
}

Hypergraph cover_barrier(int n, int k)
{
    if (k < 2 || n % k != 0 || n < 2 * k)
        throw std::invalid_argument("cover_barrier requires k | n and n >= 2k");
    const int w_size = n / k - 1;
    std::vector<Edge> edges;
    for_each_subset(iota_set(0, n), k, [&](const VertexSet& s) {
        if (s.front() < w_size) edges.push_back(s);
        return true;
    });
    return Hypergraph(n, k, std::move(edges));
}

Hypergraph lattice_barrier(const std::vector<int>& part_sizes, int k,
                           const std::vector<IndexVector>& allowed)
{
    for (int size : part_sizes)
        if (size < 0) throw std::invalid_argument("negative part size");
    for (const IndexVector& v : allowed) {
        if (v.size() != part_sizes.size())
            throw std::invalid_argument("allowed vector has wrong dimension");
        if (std::any_of(v.begin(), v.end(), [](long c) { return c < 0; }) ||
            std::accumulate(v.begin(), v.end(), 0L) != k)
            throw std::invalid_argument("allowed vector is not a k-vector");
    }
    const int n = std::accumulate(part_sizes.begin(), part_sizes.end(), 0);
    std::vector<int> part_of(n);
    for (int p = 0, v = 0; p < static_cast<int>(part_sizes.size()); ++p)
        for (int j = 0; j < part_sizes[p]; ++j) part_of[v++] = p;

    std::vector<IndexVector> sorted_allowed = allowed;
    std::sort(sorted_allowed.begin(), sorted_allowed.end());
    std::vector<Edge> edges;
    IndexVector idx(part_sizes.size());
    for_each_subset(iota_set(0, n), k, [&](const VertexSet& s) {
        std::fill(idx.begin(), idx.end(), 0);
        for (Vertex v : s) ++idx[part_of[v]];
        if (std::binary_search(sorted_allowed.begin(), sorted_allowed.end(), idx)) edges.push_back(s);
        return true;
    });
    return Hypergraph(n, k, std::move(edges));
}

Hypergraph random_kgraph(int n, int k, const Rational& p, std::uint64_t seed)
{
    if (p < 0 || p > 1) throw std::invalid_argument("probability must lie in [0, 1]");
    __extension__ typedef unsigned __int128 u128;
    const BigInt num = boost::multiprecision::numerator(p);
    const BigInt den = boost::multiprecision::denominator(p);
    // Keep a k-set iff draw / 2^64 < p, i.e. draw * den < num * 2^64 (exact).
    if (den > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw std::invalid_argument("probability denominator must fit in 64 bits");
    const auto den64 = static_cast<std::uint64_t>(den);
    const auto num64 = static_cast<std::uint64_t>(num);
    const bool always = p == 1;

    std::mt19937_64 engine(seed);
    std::vector<Edge> edges;
    for_each_subset(iota_set(0, n), k, [&](const VertexSet& s) {
        const std::uint64_t draw = engine();
        if (always || static_cast<u128>(draw) * den64 < (static_cast<u128>(num64) << 64)) edges.push_back(s);
        return true;
    });
    return Hypergraph(n, k, std::move(edges));
}

}  // namespace hypermatch
