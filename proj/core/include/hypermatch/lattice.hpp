#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/partition.hpp"
#include "hypermatch/types.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hypermatch {

/// Coordinate i-1 is |A ∩ V_i| for i in [r]; V_0 is ignored.
IndexVector index_vector(const Partition& p, const VertexSet& a);
/// Same, with a precomputed label array from Partition::labels.
IndexVector index_vector(const std::vector<int>& labels, int r, const VertexSet& a);

long vector_sum(const IndexVector& v);
bool is_k_vector(const IndexVector& v, int k);
IndexVector unit_vector(int r, int i);  // i in [1, r]

struct RobustVectors {
    /// k-vectors vanishing on [s] with at least mu * n^k edges.
    std::vector<IndexVector> type1;
    /// k-vectors with a single 1 at some i in [s], 0 elsewhere on [s], such that
    /// every vertex of V_i lies in at least mu * n^(k-1) edges of that vector.
    std::vector<IndexVector> type2;

    /// type1 and type2 merged, sorted.
    std::vector<IndexVector> all() const;
    bool contains(const IndexVector& v) const;
};

RobustVectors robust_vectors(const Hypergraph& h, const Partition& p, const Rational& mu);

/// Integer span of a set of vectors in Z^dim, kept as a row-style Hermite
/// normal form: pivots strictly increase, are positive, and entries above a
/// pivot are reduced into [0, pivot).
class Lattice {
public:
    Lattice() = default;
    Lattice(int dim, const std::vector<IndexVector>& generators);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::vector<BigInt>>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const std::vector<IndexVector>& generators() const { return generators_; }

    bool contains(const IndexVector& v) const;
    bool contains(const std::vector<BigInt>& v) const;
    /// |det| of the basis when rank == dim (the index [Z^dim : L]); nullopt otherwise.
    std::optional<BigInt> index_in_ambient() const;

    /// Same subgroup (HNF is canonical).
    friend bool operator==(const Lattice& a, const Lattice& b)
    {
        return a.dim_ == b.dim_ && a.basis_ == b.basis_;
    }

private:
    int dim_ = 0;
    std::vector<IndexVector> generators_;
    std::vector<std::vector<BigInt>> basis_;
    std::vector<int> pivots_;
};

Lattice lattice_generate(int dim, const std::vector<IndexVector>& generators);

/// All v in Z^r with k | sum(v), from the basis {u_i - u_{i+1}} + {k u_r}.
Lattice lmax(int r, int k);

/// L_max / L through a Smith normal form of L written in L_max coordinates.
class CosetGroup {
public:
    /// Throws std::invalid_argument unless L is a sublattice of lmax(L.dim(), k).
    CosetGroup(const Lattice& l, int k);

    int dim() const { return dim_; }
    int k() const { return k_; }
    /// Diagonal of the Smith form, d_1 | d_2 | ...; length rank(L).
    const std::vector<BigInt>& invariant_factors() const { return factors_; }
    bool finite() const { return rank_ == dim_; }
    /// |Q| when finite.
    std::optional<BigInt> order() const;

    /// Canonical coordinates of v + L: component j is reduced mod d_j for
    /// j < rank and is a free integer for j >= rank. Throws
    /// std::invalid_argument if v is not in L_max.
    std::vector<BigInt> residue(const IndexVector& v) const;
    std::vector<BigInt> add(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const;
    std::vector<BigInt> negate(const std::vector<BigInt>& a) const;
    bool is_identity(const std::vector<BigInt>& a) const;

private:
    std::vector<BigInt> reduce(std::vector<BigInt> y) const;

    int dim_ = 0;
    int k_ = 0;
    int rank_ = 0;
    std::vector<BigInt> factors_;
    /// Column transform: residue coordinates are (coords in L_max basis) * v_.
    std::vector<std::vector<BigInt>> v_;
};

/// Coordinates of v in the basis {u_i - u_{i+1}} + {k u_r}; v must be in L_max.
std::vector<BigInt> lmax_coordinates(const IndexVector& v, int k);

/// u_i - u_j in L, with parts numbered 1..dim.
bool has_transferral(const Lattice& l, int i, int j);

struct MergeStep {
    int i = 0;
    int j = 0;
};

struct MergeResult {
    Partition partition;
    std::vector<MergeStep> merges;
};

/// While some transferral u_i - u_j (s < i < j) lies in the mu-robust lattice
/// of the current partition, merge V_j into V_i (smallest (i, j) first) and
/// recompute the robust vectors.
MergeResult merge_transferral_parts(const Hypergraph& h, const Partition& p, const Rational& mu);

/// Integer coefficients a with sum a_g * gens[g] = v minimising max |a_g|,
/// found by iterative deepening over the bound; nullopt if none exists with
/// max |a_g| <= cap.
std::optional<std::vector<long>> min_norm_representation(const std::vector<IndexVector>& gens,
                                                         const IndexVector& v, long cap);

struct CoefficientBound {
    long value = 0;
    /// A vector attaining the maximum (empty when no vector was considered).
    IndexVector witness;
    std::size_t vectors_checked = 0;
    /// Some lattice vector needed coefficients beyond the cap; value is then a lower bound.
    bool cap_hit = false;
};

/// Max over nonnegative v in the lattice of `gens` with |v| <= m of the
/// minimal max-norm of an integer representation of v over `gens`.
CoefficientBound coefficient_bound(int r, int k, const std::vector<IndexVector>& gens, long m,
                                   long cap);

struct SolubilitySearch {
    std::optional<Matching> solution;
    long size_bound = 0;
    std::uint64_t nodes = 0;
    std::uint64_t leftover_checks = 0;
    bool exhausted = false;
};

/// Smallest matching M with |M| <= |U| + q, U ⊆ V(M) and
/// index(V(H) - V(M)) in L, by iterative deepening on |M|. Edges covering U
/// are branched on the least uncovered U-vertex; the remaining edges are
/// taken in increasing canonical index.
SolubilitySearch is_soluble(const Hypergraph& h, const Partition& p, const Lattice& l,
                            const VertexSet& u, long q);

/// Indices of a shortest sub-list of `vectors` whose residues sum to `target`,
/// by dynamic programming over residues; nullopt if no sub-list does.
std::optional<std::vector<std::size_t>> find_residue_subset(const CosetGroup& q,
                                                            const std::vector<IndexVector>& vectors,
                                                            const std::vector<BigInt>& target);

/// All (i, j) with i <= j in [1, dim] and index_u - u_i - u_j in L.
std::vector<std::pair<int, int>> pair_removal_queries(const Lattice& l, const IndexVector& index_u);
/// All i in [1, dim] with index_u - u_i in L.
std::vector<int> single_removal_queries(const Lattice& l, const IndexVector& index_u);

}  // namespace hypermatch
