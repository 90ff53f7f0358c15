#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypermatch {

enum class BarrierKind { space, cover, lattice };

std::string to_string(BarrierKind kind);

/// Describes how a barrier instance splits its vertex set into named parts.
struct BarrierSpec {
    int n = 0;
    int k = 0;
    /// Space barrier: {|X|, |Y|}. Cover barrier: {|W|, n - |W|}. Lattice barrier:
    /// the part sizes as given.
    std::vector<int> part_sizes;
    BarrierKind kind = BarrierKind::space;
};

/// Part sizes used by space_barrier(n, k): |Y| is the largest odd integer
/// <= floor(n/2), X takes the remaining low-numbered vertices.
BarrierSpec space_barrier_spec(int n, int k);

/// X = {0..|X|-1}, Y = the rest; edges are all k-sets meeting Y in an even
/// number of vertices. Requires n >= k >= 2.
Hypergraph space_barrier(int n, int k);

/// W = {0..n/k-2}; edges are all k-sets meeting W. Requires k | n, n >= 2k.
Hypergraph cover_barrier(int n, int k);

/// Parts are consecutive vertex ranges of the given sizes; edges are all k-sets
/// whose per-part intersection vector lies in `allowed`. Throws
/// std::invalid_argument if an allowed vector is not a k-vector over the parts.
Hypergraph lattice_barrier(const std::vector<int>& part_sizes, int k,
                           const std::vector<IndexVector>& allowed);

/// Each k-set is kept independently with probability p, in lexicographic order,
/// driven by std::mt19937_64 seeded with `seed`.
Hypergraph random_kgraph(int n, int k, const Rational& p, std::uint64_t seed);

}  // namespace hypermatch
