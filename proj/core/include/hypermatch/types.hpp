#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hypermatch {

using Vertex = int;

/// Sorted list of distinct vertex ids.
using VertexSet = std::vector<Vertex>;

/// A hyperedge: strictly increasing vertex ids.
using Edge = std::vector<Vertex>;

/// Bit i set iff vertex i is present. Only valid for n <= kMaxSearchVertices.
using Mask = std::uint64_t;

/// Integer vector over the parts V_1..V_r of a partition (V_0 excluded).
using IndexVector = std::vector<long>;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxSearchVertices = 64;

Mask to_mask(const VertexSet& vs);
VertexSet from_mask(Mask m);
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest_vertex(Mask m) { return __builtin_ctzll(m); }

BigInt binomial(long n, long k);
BigInt ipow(const BigInt& base, unsigned exp);

/// Parses "p/q", "p" or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const BigInt& v);

/// floor(r) for r >= 0.
BigInt floor_of(const Rational& r);

/// Throws std::invalid_argument if vs is not sorted-unique within [0, n).
void check_vertex_set(const VertexSet& vs, int n);

/// All size-k subsets of `pool` (sorted input) in lexicographic order.
std::vector<VertexSet> subsets_of_size(const VertexSet& pool, int k);

/// Calls f(subset) for every size-k subset of `pool` in lexicographic order.
/// f returns false to stop early.
template <class F>
void for_each_subset(const VertexSet& pool, int k, F&& f)
{
    const int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    VertexSet cur(k);
    while (true) {
        for (int i = 0; i < k; ++i) cur[i] = pool[idx[i]];
        if (!f(static_cast<const VertexSet&>(cur))) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet iota_set(int begin, int end);

}  // namespace hypermatch
