#include "hypermatch/absorption.hpp"

#include "hypermatch/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace hypermatch {

bool MatchabilityCache::matchable(Mask vertices)
{
    auto it = cache_.find(vertices);
    if (it != cache_.end()) return it->second;
    const bool ok = has_perfect_matching_on(*h_, vertices);
    cache_.emplace(vertices, ok);
    return ok;
}

bool is_absorbing_set(const Hypergraph& h, const VertexSet& a, const VertexSet& s)
{
    check_vertex_set(a, h.n());
    check_vertex_set(s, h.n());
    if (!set_intersection(a, s).empty()) throw std::invalid_argument("absorbing set must avoid S");
    const Mask ma = to_mask(a);
    return has_perfect_matching_on(h, ma) && has_perfect_matching_on(h, ma | to_mask(s));
}

AuxiliaryGraph::AuxiliaryGraph(std::size_t demands, std::size_t candidates)
    : demand_(demands), supply_(candidates),
      bits_(candidates, std::vector<std::uint64_t>((candidates + 63) / 64, 0))
{
}

void AuxiliaryGraph::add_demand_edge(std::size_t u, std::size_t w)
{
    if (u >= demand_.size() || w >= supply_.size()) throw std::out_of_range("auxiliary vertex");
    demand_[u].push_back(w);
    supply_[w].push_back(u);
}

void AuxiliaryGraph::add_conflict(std::size_t w1, std::size_t w2)
{
    if (w1 >= supply_.size() || w2 >= supply_.size()) throw std::out_of_range("auxiliary vertex");
    if (w1 == w2 || conflicts(w1, w2)) return;
    bits_[w1][w2 / 64] |= std::uint64_t{1} << (w2 % 64);
    bits_[w2][w1 / 64] |= std::uint64_t{1} << (w1 % 64);
    ++conflict_edges_;
}

bool AuxiliaryGraph::conflicts(std::size_t w1, std::size_t w2) const
{
    return (bits_[w1][w2 / 64] >> (w2 % 64)) & 1;
}

SelectionResult derandomized_select(const AuxiliaryGraph& g, const Rational& beta, const Rational& tau, long r)
{
    if (tau >= beta) throw std::invalid_argument("derandomized_select needs tau < beta");
    if (tau < 0) throw std::invalid_argument("derandomized_select needs tau >= 0");
    if (r < 0) throw std::invalid_argument("derandomized_select needs r >= 0");

    const std::size_t big_n = g.candidate_count();
    const std::size_t big_m = g.demand_count();
    SelectionResult out;

    std::size_t min_deg = std::numeric_limits<std::size_t>::max();
    for (std::size_t u = 0; u < big_m; ++u) min_deg = std::min(min_deg, g.demand_neighbours(u).size());
    const bool degrees_ok = big_m == 0 || Rational(min_deg) >= beta * big_n;
    out.preconditions_met = degrees_ok && static_cast<std::size_t>(r) <= big_n;
    if (beta > 0) {
        const long double exponent =
            static_cast<long double>(tau * tau * r / (3 * beta));
        out.size_condition_met = static_cast<long double>(big_m) <= std::exp(exponent) / 8;
    }

    // X_u = chosen neighbours of u; a candidate is available while no chosen one conflicts.
    std::vector<int> hits(big_m, 0);
    std::vector<std::uint64_t> available((big_n + 63) / 64, 0);
    for (std::size_t w = 0; w < big_n; ++w) available[w / 64] |= std::uint64_t{1} << (w % 64);
    auto is_available = [&](std::size_t w) { return (available[w / 64] >> (w % 64)) & 1; };
    auto blocked_by = [&](std::size_t w) {
        std::size_t c = 0;
        const auto& row = g.conflict_row(w);
        for (std::size_t i = 0; i < row.size(); ++i) c += popcount(row[i] & available[i]);
        return c;
    };

    while (out.chosen.size() < static_cast<std::size_t>(r)) {
        std::size_t best = big_n;
        long double best_score = -1;
        std::size_t best_blocked = 0;
        for (std::size_t w = 0; w < big_n; ++w) {
            if (!is_available(w)) continue;
            long double score = 0;
            for (std::size_t u : g.supplied_demands(w)) score += std::ldexp(1.0L, -hits[u]);
            if (best != big_n && score < best_score) continue;
            const std::size_t blocked = blocked_by(w);
            if (best == big_n || score > best_score || blocked < best_blocked) {
                best = w;
                best_score = score;
                best_blocked = blocked;
            }
        }
        if (best == big_n) break;
        out.chosen.push_back(best);
        for (std::size_t u : g.supplied_demands(best)) ++hits[u];
        const auto& row = g.conflict_row(best);
        for (std::size_t i = 0; i < row.size(); ++i) available[i] &= ~row[i];
        available[best / 64] &= ~(std::uint64_t{1} << (best % 64));
    }

    // Post-hoc contract with exact arithmetic.
    out.nu = big_n == 0 ? Rational(0) : Rational(2 * g.conflict_edges()) * r / (Rational(big_n) * big_n);
    out.degree_target = (beta - tau - out.nu) * r;
    out.independent = true;
    for (std::size_t i = 0; i < out.chosen.size(); ++i)
        for (std::size_t j = i + 1; j < out.chosen.size(); ++j)
            if (g.conflicts(out.chosen[i], out.chosen[j])) out.independent = false;
    const Rational size(static_cast<long>(out.chosen.size()));
    out.size_ok = (1 - out.nu) * r <= size && size <= r;
    std::vector<char> in_r(big_n, 0);
    for (std::size_t w : out.chosen) in_r[w] = 1;
    out.min_degree = big_m == 0 ? 0 : std::numeric_limits<std::size_t>::max();
    for (std::size_t u = 0; u < big_m; ++u) {
        std::size_t d = 0;
        for (std::size_t w : g.demand_neighbours(u)) d += in_r[w];
        out.min_degree = std::min(out.min_degree, d);
    }
    out.degree_ok = big_m == 0 || Rational(static_cast<long>(out.min_degree)) >= out.degree_target;
    return out;
}

VertexSet AbsorbingFamily::covered() const
{
    VertexSet out;
    for (const auto& a : sets) out = set_union(out, a);
    return out;
}

FamilyBuild build_absorbing_family(const Hypergraph& h, const Partition& part, const PipelineParams& p,
                                   const VertexSet& avoid)
{
    if (!h.searchable()) throw std::domain_error("absorbing family needs n <= 64");
    check_partition(part, h.n());
    validate(p);
    const int k = h.k();
    const int r = part.r();
    const auto labels = part.labels(h.n());
    const VertexSet closed = part.closed_union();
    const long n1 = static_cast<long>(closed.size());

    FamilyBuild out;
    out.r = std::max<long>(1, static_cast<long>(floor_of(p.beta * n1)));
    out.absorber_target = p.alpha * n1;

    const RobustVectors robust = robust_vectors(h, part, p.mu);
    for_each_subset(iota_set(0, h.n()), k, [&](const VertexSet& s) {
        if (robust.contains(index_vector(labels, r, s))) out.demands.push_back(s);
        return true;
    });

    const int size = p.t * k * k;
    std::vector<VertexSet> candidates;
    for_each_subset(set_difference(closed, avoid), size, [&](const VertexSet& t) {
        if (candidates.size() >= p.absorber_candidate_cap) {
            out.candidates_truncated = true;
            return false;
        }
        candidates.push_back(t);
        return true;
    });
    out.candidates = candidates.size();

    MatchabilityCache cache(h);
    std::vector<Mask> cmask(candidates.size());
    for (std::size_t w = 0; w < candidates.size(); ++w) cmask[w] = to_mask(candidates[w]);
    std::vector<Mask> dmask(out.demands.size());
    for (std::size_t u = 0; u < out.demands.size(); ++u) dmask[u] = to_mask(out.demands[u]);

    AuxiliaryGraph g(out.demands.size(), candidates.size());
    for (std::size_t w = 0; w < candidates.size(); ++w) {
        if (!cache.matchable(cmask[w])) continue;
        for (std::size_t u = 0; u < out.demands.size(); ++u)
            if (!(cmask[w] & dmask[u]) && cache.matchable(cmask[w] | dmask[u])) g.add_demand_edge(u, w);
    }
    for (std::size_t a = 0; a < candidates.size(); ++a)
        for (std::size_t b = a + 1; b < candidates.size(); ++b)
            if (cmask[a] & cmask[b]) g.add_conflict(a, b);

    Rational beta_prime = 1;
    for (int i = 0; i < p.t + 1; ++i) beta_prime *= p.mu;
    for (int i = 0; i < k + 1; ++i) beta_prime *= p.beta;
    const long r_eff = std::min<long>(out.r, static_cast<long>(candidates.size()));
    out.selection = derandomized_select(g, beta_prime, beta_prime / 3, r_eff);

    std::vector<std::size_t> members;
    for (std::size_t w : out.selection.chosen) {
        auto pm = perfect_matching_on(h, cmask[w]);
        if (!pm) {
            ++out.dropped_without_pm;
            continue;
        }
        members.push_back(w);
        out.family.sets.push_back(candidates[w]);
        out.family.matchings.push_back(*pm);
    }

    const Mask used = to_mask(out.family.covered());
    out.absorber_counts.assign(out.demands.size(), 0);
    for (std::size_t u = 0; u < out.demands.size(); ++u) {
        for (std::size_t w : members)
            if (!(cmask[w] & dmask[u]) && cache.matchable(cmask[w] | dmask[u])) ++out.absorber_counts[u];
        const bool below = Rational(static_cast<long>(out.absorber_counts[u])) < out.absorber_target;
        out.demands_below_target += below;
        if (!(dmask[u] & used)) {
            ++out.outside_demands;
            out.outside_below_target += below;
        }
    }
    return out;
}

std::optional<std::pair<Edge, Edge>> s_absorbing_witness(const Hypergraph& h, const Edge& e, const VertexSet& s,
                                                         int l)
{
    const int k = h.k();
    if (l < 1 || l > k - 1) throw std::invalid_argument("l must lie in [1, k-1]");
    check_vertex_set(s, h.n());
    if (static_cast<int>(s.size()) != 2 * k - l) throw std::invalid_argument("|S| must be 2k - l");
    if (static_cast<int>(e.size()) != k) throw std::invalid_argument("e must have k vertices");
    if (!set_intersection(e, s).empty()) throw std::invalid_argument("e must avoid S");

    const int lo = l / 2;
    const int hi = l - lo;
    std::optional<std::pair<Edge, Edge>> found;
    for_each_subset(s, k - lo, [&](const VertexSet& s1) {
        const VertexSet s2 = set_difference(s, s1);
        for_each_subset(e, lo, [&](const VertexSet& f1) {
            const Edge e1 = set_union(s1, f1);
            if (!h.has_edge(e1)) return true;
            for_each_subset(set_difference(e, f1), hi, [&](const VertexSet& f2) {
                const Edge e2 = set_union(s2, f2);
                if (h.has_edge(e2)) found.emplace(e1, e2);
                return !found;
            });
            return !found;
        });
        return !found;
    });
    return found;
}

bool is_s_absorbing_edge(const Hypergraph& h, const Edge& e, const VertexSet& s, int l)
{
    return s_absorbing_witness(h, e, s, l).has_value();
}

SAbsorbingBuild build_s_absorbing_matching(const Hypergraph& h, int l, const Rational& beta)
{
    if (!h.searchable()) throw std::domain_error("S-absorbing matching needs n <= 64");
    const int k = h.k();
    const int n = h.n();
    if (l < 1 || l > k - 1) throw std::invalid_argument("l must lie in [1, k-1]");
    if (beta <= 0) throw std::invalid_argument("beta must be positive");

    SAbsorbingBuild out;
    out.l_in_intended_range = 3 * l >= 2 * k && l <= k - 1;
    out.r = static_cast<long>(floor_of(beta * n / k));

    std::vector<VertexSet> demands = subsets_of_size(iota_set(0, n), 2 * k - l);
    const auto& edges = h.edges();
    AuxiliaryGraph g(demands.size(), edges.size());
    std::vector<Mask> dmask(demands.size());
    for (std::size_t u = 0; u < demands.size(); ++u) dmask[u] = to_mask(demands[u]);
    for (std::size_t w = 0; w < edges.size(); ++w)
        for (std::size_t u = 0; u < demands.size(); ++u)
            if (!(h.edge_mask(w) & dmask[u]) && is_s_absorbing_edge(h, edges[w], demands[u], l))
                g.add_demand_edge(u, w);
    for (std::size_t a = 0; a < edges.size(); ++a)
        for (std::size_t b = a + 1; b < edges.size(); ++b)
            if (h.edge_mask(a) & h.edge_mask(b)) g.add_conflict(a, b);

    const Rational gamma = Rational(static_cast<long>(min_l_degree(h, l))) / ipow(BigInt(n), k - l);
    BigInt factorial = 1;
    for (int i = 2; i <= k; ++i) factorial *= i;
    const Rational beta_prime = gamma * gamma * gamma / (2 * Rational(factorial));
    const long r_eff = std::min<long>(out.r, static_cast<long>(edges.size()));
    if (beta_prime > 0) {
        out.selection = derandomized_select(g, beta_prime, beta_prime / 3, r_eff);
    }
    for (std::size_t w : out.selection.chosen) out.matching.edges.push_back(edges[w]);
    out.matching.canonicalize();

    const Mask covered = to_mask(out.matching.covered());
    out.min_count_all = std::numeric_limits<std::size_t>::max();
    for (std::size_t u = 0; u < demands.size(); ++u) {
        std::size_t count = 0;
        for (std::size_t w : out.selection.chosen)
            if (!(h.edge_mask(w) & dmask[u]) && is_s_absorbing_edge(h, edges[w], demands[u], l)) ++count;
        out.min_count_all = std::min(out.min_count_all, count);
        if (!(dmask[u] & covered))
            out.min_count_outside = std::min(out.min_count_outside.value_or(count), count);
    }
    if (demands.empty()) out.min_count_all = 0;
    return out;
}

namespace {

int cover_case(int k, int l)
{
    if ((l == 1 && k >= 3) || (l == 2 && k >= 6)) return 1;
    if (k == 5 && l == 2) return 3;
    // min{3, k/2} <= l < ceil(2k/3), in integers.
    if (l >= 3 || 2 * l >= k) {
        if (3 * l < 2 * k) return 2;
    }
    return 0;
}

}  // namespace

CoverAbsorberBuild build_cover_absorber(const Hypergraph& h, int l, const PipelineParams& p)
{
    if (!h.searchable()) throw std::domain_error("cover absorber needs n <= 64");
    validate(p);
    const int k = h.k();
    const int n = h.n();
    CoverAbsorberBuild out;
    out.case_id = cover_case(k, l);
    if (out.case_id == 0) throw std::invalid_argument("no cover-absorber case for this (k, l)");

    if (out.case_id == 1) {
        out.partition.parts = {VertexSet{}, iota_set(0, n)};
        out.partition.s = 0;
    } else {
        // c = 3 for the pruning and the closed partition.
        PipelineParams q = p;
        q.delta = Rational(1, 4) + Rational(1, 1000);
        const PruneResult pruned = prune_low_reachability(h, q.alpha, q.delta_prime);
        ClosedParts closed;
        try {
            closed = closed_partition(h, pruned.survivors, q);
        } catch (const PartitionNotCertified& ex) {
            out.failure = std::string("partition: ") + ex.what();
            return out;
        }
        Partition base;
        base.parts = {set_difference(iota_set(0, n), pruned.survivors)};
        for (const auto& part : closed.parts) base.parts.push_back(part);
        base.s = 0;
        out.partition = merge_transferral_parts(h, base, p.mu).partition;
    }

    out.family = build_absorbing_family(h, out.partition, p);
    Mask used = 0;
    for (const auto& m : out.family.family.matchings) {
        for (const auto& e : m.edges) out.matching.edges.push_back(e);
        used |= to_mask(m.covered());
    }

    if (out.case_id != 1) {
        const auto labels = out.partition.labels(n);
        const int r = out.partition.r();
        const auto gens = robust_vectors(h, out.partition, p.mu).all();
        const CoefficientBound cb = coefficient_bound(r, k, gens, 2L * k, p.coefficient_cap);
        const long per_vector = std::max<long>(
            1, static_cast<long>(floor_of(Rational(cb.value) * p.alpha * p.alpha * n)));
        const Mask v0 = to_mask(out.partition.exceptional());
        for (const auto& v : gens) {
            long taken = 0;
            for (std::size_t i = 0; i < h.edge_count() && taken < per_vector; ++i) {
                const Mask em = h.edge_mask(i);
                if (em & (used | v0)) continue;
                if (index_vector(labels, r, h.edge(i)) != v) continue;
                out.reservoir.edges.push_back(h.edge(i));
                used |= em;
                ++taken;
            }
        }
        for (Vertex v : out.partition.exceptional()) {
            if (used >> v & 1) continue;
            bool placed = false;
            for (std::size_t i : h.incident(v)) {
                if (h.edge_mask(i) & used) continue;
                out.exceptional_cover.edges.push_back(h.edge(i));
                used |= h.edge_mask(i);
                placed = true;
                break;
            }
            if (!placed) {
                out.failure = "exceptional cover: vertex " + std::to_string(v) + " has no free edge";
                return out;
            }
        }
        for (const auto& e : out.reservoir.edges) out.matching.edges.push_back(e);
        for (const auto& e : out.exceptional_cover.edges) out.matching.edges.push_back(e);
    }
    out.matching.canonicalize();
    out.built = true;
    return out;
}

bool cover_absorber_holds(const Hypergraph& h, const CoverAbsorberBuild& b, const VertexSet& r)
{
    check_vertex_set(r, h.n());
    const Mask host = to_mask(r) | to_mask(b.matching.covered());
    const Matching m = max_matching_on(h, host);
    return popcount(host) - static_cast<int>(m.size()) * h.k() <= h.k() + 1;
}

AbsorbResult absorb_leftover(const Hypergraph& h, const Matching& m, const AbsorbingFamily& family,
                             const std::vector<VertexSet>& leftovers)
{
    if (!h.searchable()) throw std::domain_error("absorption needs n <= 64");
    if (!is_matching_of(h, m)) throw std::invalid_argument("M is not a matching of H");
    Mask taken = to_mask(m.covered());
    for (const auto& s : leftovers) {
        check_vertex_set(s, h.n());
        if (static_cast<int>(s.size()) != h.k()) throw std::invalid_argument("leftover sets must have k vertices");
        const Mask ms = to_mask(s);
        if (ms & taken) throw std::invalid_argument("leftover sets must be disjoint from M and each other");
        taken |= ms;
    }

    AbsorbResult out;
    std::set<Edge> current(m.edges.begin(), m.edges.end());
    std::vector<char> spent(family.size(), 0);
    for (const auto& s : leftovers) {
        const Mask ms = to_mask(s);
        bool absorbed = false;
        for (std::size_t i = 0; i < family.size() && !absorbed; ++i) {
            if (spent[i]) continue;
            const auto& own = family.matchings[i].edges;
            if (!std::all_of(own.begin(), own.end(), [&](const Edge& e) { return current.count(e) > 0; }))
                continue;
            auto pm = perfect_matching_on(h, to_mask(family.sets[i]) | ms);
            if (!pm) continue;
            for (const auto& e : own) current.erase(e);
            current.insert(pm->edges.begin(), pm->edges.end());
            spent[i] = 1;
            out.used.push_back(i);
            absorbed = true;
        }
        if (!absorbed) {
            out.failure = "no unused absorber for leftover set";
            break;
        }
    }
    out.matching.edges.assign(current.begin(), current.end());
    out.success = out.failure.empty();
    return out;
}

}  // namespace hypermatch
