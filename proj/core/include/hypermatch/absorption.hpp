#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/partition.hpp"
#include "hypermatch/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hypermatch {

/// Memoised perfect-matchability of induced sub-hypergraphs.
class MatchabilityCache {
public:
    explicit MatchabilityCache(const Hypergraph& h) : h_(&h) {}
    bool matchable(Mask vertices);
    std::size_t size() const { return cache_.size(); }

private:
    const Hypergraph* h_;
    std::unordered_map<Mask, bool> cache_;
};

/// True iff H[A] and H[A + S] both have perfect matchings.
/// Throws std::invalid_argument if A and S intersect.
bool is_absorbing_set(const Hypergraph& h, const VertexSet& a, const VertexSet& s);

/// Bipartite demand side U and candidate side W, plus a conflict graph on W.
class AuxiliaryGraph {
public:
    AuxiliaryGraph(std::size_t demands, std::size_t candidates);

    std::size_t demand_count() const { return demand_.size(); }
    std::size_t candidate_count() const { return supply_.size(); }
    /// m = |E(G[W])|.
    std::size_t conflict_edges() const { return conflict_edges_; }

    /// Each (u, w) pair must be added at most once.
    void add_demand_edge(std::size_t u, std::size_t w);
    void add_conflict(std::size_t w1, std::size_t w2);
    bool conflicts(std::size_t w1, std::size_t w2) const;

    const std::vector<std::size_t>& demand_neighbours(std::size_t u) const { return demand_[u]; }
    const std::vector<std::size_t>& supplied_demands(std::size_t w) const { return supply_[w]; }
    /// Bit x of the row is set iff w conflicts with x.
    const std::vector<std::uint64_t>& conflict_row(std::size_t w) const { return bits_[w]; }

private:
    std::vector<std::vector<std::size_t>> demand_;
    std::vector<std::vector<std::size_t>> supply_;
    std::vector<std::vector<std::uint64_t>> bits_;
    std::size_t conflict_edges_ = 0;
};

struct SelectionResult {
    /// Chosen candidates in selection order.
    std::vector<std::size_t> chosen;
    Rational nu;
    /// (beta - tau - nu) * r.
    Rational degree_target;
    std::size_t min_degree = 0;
    bool independent = false;
    bool size_ok = false;
    bool degree_ok = false;
    /// deg(u) >= beta N for all u and r <= N.
    bool preconditions_met = false;
    /// M <= exp(tau^2 r / (3 beta)) / 8, evaluated in floating point.
    bool size_condition_met = false;

    bool contract_met() const { return independent && size_ok && degree_ok; }
};

/// Greedy selection of an independent R ⊆ W with |R| <= r. Each step takes the
/// available candidate maximising sum over its demands u of 2^(-X_u), where
/// X_u counts the chosen neighbours of u; ties prefer fewer available
/// conflicting candidates, then the lower index. The contract is checked
/// afterwards with exact arithmetic; unmet preconditions are reported, not
/// enforced. Throws std::invalid_argument if tau >= beta, tau < 0 or r < 0.
SelectionResult derandomized_select(const AuxiliaryGraph& g, const Rational& beta, const Rational& tau,
                                    long r);

struct AbsorbingFamily {
    std::vector<VertexSet> sets;
    /// matchings[i] is a perfect matching of H[sets[i]].
    std::vector<Matching> matchings;

    std::size_t size() const { return sets.size(); }
    VertexSet covered() const;
};

struct FamilyBuild {
    AbsorbingFamily family;
    /// k-sets with a robust index vector, in lexicographic order.
    std::vector<VertexSet> demands;
    /// absorber_counts[i] = members of the family absorbing demands[i].
    std::vector<std::size_t> absorber_counts;
    std::size_t candidates = 0;
    bool candidates_truncated = false;
    long r = 0;
    SelectionResult selection;
    std::size_t dropped_without_pm = 0;
    /// alpha * n_1.
    Rational absorber_target;
    std::size_t demands_below_target = 0;
    /// Same count restricted to demands disjoint from V(family).
    std::size_t outside_below_target = 0;
    std::size_t outside_demands = 0;

    bool contract_met() const { return demands_below_target == 0; }
};

/// Auxiliary graph with U = k-sets whose index vector is mu-robust and W =
/// the (t k^2)-subsets of the closed union avoiding `avoid` (lexicographic, at
/// most p.absorber_candidate_cap of them); T ~ S iff T is absorbing for S, and
/// candidates conflict iff they intersect. Selects r = max(1, floor(beta n_1))
/// members with beta' = mu^(t+1) beta^(k+1), tau = beta'/3, then drops
/// members without an internal perfect matching.
FamilyBuild build_absorbing_family(const Hypergraph& h, const Partition& part, const PipelineParams& p,
                                   const VertexSet& avoid = {});

/// Disjoint e1, e2 with |e1 ∩ S| = k - floor(l/2), |e1 ∩ e| = floor(l/2),
/// |e2 ∩ S| = k - ceil(l/2), |e2 ∩ e| = ceil(l/2).
std::optional<std::pair<Edge, Edge>> s_absorbing_witness(const Hypergraph& h, const Edge& e,
                                                         const VertexSet& s, int l);
/// Throws std::invalid_argument unless |S| = 2k - l, 1 <= l <= k-1, and e ∩ S = ∅.
bool is_s_absorbing_edge(const Hypergraph& h, const Edge& e, const VertexSet& s, int l);

struct SAbsorbingBuild {
    Matching matching;
    SelectionResult selection;
    long r = 0;
    /// ceil(2k/3) <= l <= k-1.
    bool l_in_intended_range = false;
    /// Minimum number of S-absorbing edges of the matching over all (2k-l)-sets S.
    std::size_t min_count_all = 0;
    /// Same, over the (2k-l)-sets disjoint from V(matching); nullopt if there are none.
    std::optional<std::size_t> min_count_outside;
};

/// U = all (2k-l)-sets, W = E(H), S ~ e iff e is S-absorbing, edges conflict iff
/// they intersect; r = floor(beta n / k). beta' = gamma'^3 / (2 k!) with
/// gamma' = delta_l(H) / n^(k-l), tau = beta'/3.
SAbsorbingBuild build_s_absorbing_matching(const Hypergraph& h, int l, const Rational& beta);

struct CoverAbsorberBuild {
    /// 1, 2 or 3: trivial partition; pruned partition with c = 3; (k, l) = (5, 2).
    int case_id = 0;
    Partition partition;
    FamilyBuild family;
    Matching reservoir;
    Matching exceptional_cover;
    /// Union of the family's matchings, the reservoir and the exceptional cover.
    Matching matching;
    bool built = false;
    std::string failure;
};

/// The matching M of the cover-absorber construction: absorbing family on a
/// (trivial or pruned and transferral-merged) partition with s = 0, a
/// reservoir of robust edges per robust vector, and a greedy cover of V_0.
/// Throws std::invalid_argument unless l < ceil(2k/3) or (k, l) = (5, 2).
CoverAbsorberBuild build_cover_absorber(const Hypergraph& h, int l, const PipelineParams& p);

/// True iff H[R + V(M)] has a matching leaving at most k + 1 vertices uncovered.
bool cover_absorber_holds(const Hypergraph& h, const CoverAbsorberBuild& b, const VertexSet& r);

struct AbsorbResult {
    Matching matching;
    bool success = false;
    /// used[i] = family member that absorbed leftovers[i].
    std::vector<std::size_t> used;
    std::string failure;
};

/// Absorbs each leftover k-set S (in order) into the lowest-index unused member
/// A whose stored matching is still inside M and for which H[A + S] has a
/// perfect matching, swapping A's matching for that one. On supply exhaustion
/// returns success = false with the partial matching.
AbsorbResult absorb_leftover(const Hypergraph& h, const Matching& m, const AbsorbingFamily& family,
                             const std::vector<VertexSet>& leftovers);

}  // namespace hypermatch
