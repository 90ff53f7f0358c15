#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/types.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypermatch {

/// Ordered partition V_0, V_1..V_s, V_{s+1}..V_r of V(H).
/// parts[0] is the exceptional set V_0 (possibly empty); parts[1..s] are the
/// small robust clusters; parts[s+1..r] are the closed parts.
struct Partition {
    std::vector<VertexSet> parts{VertexSet{}};
    int s = 0;

    int r() const { return static_cast<int>(parts.size()) - 1; }
    const VertexSet& exceptional() const { return parts.front(); }
    /// label[v] = index of the part containing v. Throws std::invalid_argument
    /// unless the parts are sorted, disjoint and cover [0, n).
    std::vector<int> labels(int n) const;
    /// Union of V_{s+1}..V_r, sorted.
    VertexSet closed_union() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Throws std::invalid_argument unless p is a partition of [0, n) with 0 <= s <= r
/// and non-empty parts V_1..V_r.
void check_partition(const Partition& p, int n);

/// Explicit desk-scale values for every threshold of the asymptotic hierarchy.
struct PipelineParams {
    Rational delta = Rational(1, 3);
    Rational delta_prime = Rational(1, 4);
    Rational gamma = Rational(1, 100);
    Rational alpha = Rational(1, 50);
    Rational beta = Rational(1, 100);
    Rational mu = Rational(1, 1000);
    /// Closedness depth used for the closed parts and the absorbing sets (size t*k^2).
    int t = 1;
    /// Solubility budget; 0 means "use |Q|".
    long q = 0;
    /// Cap on coefficient magnitudes in minimal lattice representations.
    long coefficient_cap = 12;
    /// Cluster floor b in |V_I| < (k-1)|V_0| + b; negative means "use k".
    long cluster_floor = -1;
    /// decide cross-checks every "no" verdict with the oracle when n <= oracle_cap.
    int oracle_cap = 16;
    /// Upper bound on the number of absorbing-set candidates enumerated.
    std::size_t absorber_candidate_cap = 6000;

    /// c = floor(1/delta).
    int c() const;
    long cluster_floor_for(int k) const { return cluster_floor < 0 ? k : cluster_floor; }
};

/// Defaults with delta = conjectured_cstar(k, l).
PipelineParams default_params(int k, int l);

/// Throws std::invalid_argument if a threshold is out of range.
void validate(const PipelineParams& p);

class PartitionNotCertified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PruneResult {
    VertexSet survivors;
    /// A_j = {v_j} + reachable neighbourhood of v_j in H[V_j], in removal order.
    std::vector<VertexSet> removed;
    std::vector<Vertex> pivots;
};

/// Greedy removal: while some v in the current set V_j has fewer than
/// delta_prime * n vertices (alpha,1)-reachable to it inside H[V_j], remove v
/// together with those vertices. Least vertex id first.
PruneResult prune_low_reachability(const Hypergraph& h, const Rational& alpha,
                                   const Rational& delta_prime);

struct ClosedParts {
    std::vector<VertexSet> parts;
    /// Depth at which every part was verified (beta, depth)-closed in H[S].
    int certified_depth = 1;
};

/// Partition of S into (beta, t)-closed parts of size >= (delta' - alpha) n,
/// at most min(c, 1/delta') of them. Seeds from the components of the
/// (alpha,1)-reachability graph on S, splits components that are not closed,
/// then merges parts whose union stays closed. Throws PartitionNotCertified
/// when the verified output violates the size or count bounds.
ClosedParts closed_partition(const Hypergraph& h, const VertexSet& s, const PipelineParams& p);

/// (k-1)-vector sets keyed to the vertices that carry exactly those vectors.
using ClusterMap = std::map<std::vector<IndexVector>, VertexSet>;

/// v lands in V_I where I is the set of (k-1)-vectors i over `p1` such that at
/// least mu * n^(k-1) edges e contain v with e - v inside the union of p1 and
/// index(e - v) = i.
ClusterMap classify_leftover(const Hypergraph& h, const std::vector<VertexSet>& p1,
                             const VertexSet& vprime, const Rational& mu);

struct ClusterFate {
    std::vector<IndexVector> signature;
    VertexSet vertices;
    bool to_exceptional = false;
};

struct PartitionBuild {
    Partition partition;
    PruneResult prune;
    ClosedParts closed;
    /// Clusters in processing order (V_empty first, then by size, then signature).
    std::vector<ClusterFate> clusters;
    /// V_empty was non-empty and was routed into V_0.
    bool empty_cluster_flagged = false;
    long cluster_floor = 0;
};

/// prune -> closed_partition -> classify_leftover -> recursive small-cluster
/// absorption into V_0 -> relabel (clusters by signature, closed parts by
/// least vertex). Propagates PartitionNotCertified.
PartitionBuild build_partition(const Hypergraph& h, const PipelineParams& p);

struct ItemCheck {
    bool pass = true;
    std::string detail;
};

struct PartitionReport {
    /// items[i] is item (i+1) of the partition contract.
    std::vector<ItemCheck> items = std::vector<ItemCheck>(5);
    bool all() const;
};

/// Checks the five partition properties against the supplied params; closedness
/// at depth p.t inside H[closed union], and the cluster floor p.cluster_floor_for(k).
PartitionReport validate_partition(const Hypergraph& h, const Partition& part,
                                   const PipelineParams& p);

/// The asymptotic constants of the partition contract, for reporting only.
struct FormulaConstants {
    /// binom(c+k-2, k-1) and binom(c+k-2, c-1); equal by symmetry since (k-1) + (c-1) = c+k-2.
    BigInt binom_statement;
    BigInt binom_proof;
    /// b = k * binom(k + 2^B + c - 1, k) + B' * C with each binomial variant;
    /// nullopt when 2^B is too large to evaluate.
    std::optional<BigInt> b_statement;
    std::optional<BigInt> b_proof;
    /// Bit length of k^(2^B) * b (statement variant) when representable.
    std::optional<long> v0_bound_bits;
};

FormulaConstants formula_constants(int k, int c, long coefficient_cap);

}  // namespace hypermatch
