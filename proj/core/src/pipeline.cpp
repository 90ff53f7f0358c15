#include "hypermatch/pipeline.hpp"

#include "hypermatch/absorption.hpp"
#include "hypermatch/instances.hpp"
#include "hypermatch/lattice.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypermatch {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::perfect_matching: return "perfect_matching";
    case Verdict::no_perfect_matching: return "no_perfect_matching";
    case Verdict::oracle_fallback: return "oracle_fallback";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
    StageTimer(Decision& d, std::string name) : d_(d), name_(std::move(name)), start_(Clock::now()) {}
    void finish(bool ok, std::string detail)
    {
        const double s = std::chrono::duration<double>(Clock::now() - start_).count();
        d_.trace.push_back({name_, ok, std::move(detail), s});
    }

private:
    Decision& d_;
    std::string name_;
    Clock::time_point start_;
};

/// Edges of the structural construction, tracked by role until the final union.
struct Construction {
    std::vector<Edge> m1;
    std::vector<Edge> m2;
    std::vector<Edge> m3;
    AbsorbingFamily family;
};

Decision fallback(const Hypergraph& h, Decision d, std::string stage, std::string reason)
{
    d.verdict = Verdict::oracle_fallback;
    d.fallback_stage = std::move(stage);
    d.fallback_reason = std::move(reason);
    d.matching = perfect_matching_oracle(h);
    d.certificate.reset();
    d.oracle_checked = true;
    return d;
}

std::string describe(const IndexVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

void check_l(const Hypergraph& h, int l)
{
    if (l < 1 || l > h.k() - 1) throw std::invalid_argument("l must lie in [1, k-1]");
}

/// Splits `pool` (vertices avoiding V_0) into k-sets with b[v] sets of index
/// vector gens[v]; nullopt if the part counts do not match exactly.
std::optional<std::vector<VertexSet>> regroup(const std::vector<int>& labels, int r, const VertexSet& pool,
                                              const std::vector<IndexVector>& gens, const std::vector<long>& b)
{
    std::vector<std::vector<Vertex>> by_part(r + 1);
    for (Vertex v : pool) by_part[labels[v]].push_back(v);
    if (!by_part[0].empty()) return std::nullopt;
    std::vector<std::size_t> next(r + 1, 0);
    std::vector<VertexSet> out;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (long rep = 0; rep < b[g]; ++rep) {
            VertexSet s;
            for (int i = 1; i <= r; ++i) {
                for (long c = 0; c < gens[g][i - 1]; ++c) {
                    if (next[i] >= by_part[i].size()) return std::nullopt;
                    s.push_back(by_part[i][next[i]++]);
                }
            }
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
    }
    for (int i = 1; i <= r; ++i)
        if (next[i] != by_part[i].size()) return std::nullopt;
    return out;
}

}  // namespace

bool budget_certifies(const BigInt& order, long q, std::size_t exceptional, long max_matching_size)
{
    return BigInt(q) >= order || static_cast<long>(exceptional) + q >= max_matching_size;
}

Decision decide(const Hypergraph& h, int l, const PipelineParams& p)
{
    check_l(h, l);
    validate(p);
    if (!h.searchable()) throw std::domain_error("decide supports at most 64 vertices");
    const int n = h.n();
    const int k = h.k();
    Decision d;

    auto confirm_no = [&](Decision out) {
        if (n <= p.oracle_cap) {
            out.oracle_checked = true;
            if (perfect_matching_oracle(h)) throw std::logic_error("certificate contradicted by the oracle");
        }
        return out;
    };

    if (n % k != 0) {
        Certificate cert;
        cert.reason = "divisibility";
        cert.n = n;
        cert.k = k;
        cert.fingerprint = h.fingerprint();
        cert.mu = p.mu;
        cert.exhausted = true;
        d.verdict = Verdict::no_perfect_matching;
        d.certificate = std::move(cert);
        d.trace.push_back({"divisibility", true, std::to_string(k) + " does not divide " + std::to_string(n), 0});
        return confirm_no(std::move(d));
    }

    // Partition.
    Partition part;
    {
        StageTimer timer(d, "partition");
        try {
            const PartitionBuild built = build_partition(h, p);
            const MergeResult merged = merge_transferral_parts(h, built.partition, p.mu);
            part = merged.partition;
            std::ostringstream os;
            os << "r=" << part.r() << " s=" << part.s << " |V0|=" << part.exceptional().size()
               << " merges=" << merged.merges.size();
            timer.finish(true, os.str());
        } catch (const PartitionNotCertified& ex) {
            timer.finish(false, ex.what());
            return fallback(h, std::move(d), "partition", ex.what());
        }
    }
    const int r = part.r();
    const auto labels = part.labels(n);

    // Robust vectors, lattice and coset group.
    const RobustVectors robust = robust_vectors(h, part, p.mu);
    const std::vector<IndexVector> gens = robust.all();
    const Lattice lat(r, gens);
    BigInt order;
    {
        StageTimer timer(d, "lattice");
        const CosetGroup cg(lat, k);
        if (!cg.finite()) {
            timer.finish(false, "infinite coset group");
            return fallback(h, std::move(d), "lattice", "robust lattice has infinite index in L_max");
        }
        order = *cg.order();
        std::ostringstream os;
        os << "robust=" << gens.size() << " rank=" << lat.rank() << " |Q|=" << order;
        timer.finish(true, os.str());
    }
    // The search never uses more than n/k edges, so a clamped budget explores the same space.
    const long q_order = order > BigInt(n / k) ? static_cast<long>(n / k) : static_cast<long>(order);
    const long q = p.q != 0 ? p.q : q_order;

    // Solubility.
    SolubilitySearch sol;
    {
        StageTimer timer(d, "solubility");
        sol = is_soluble(h, part, lat, part.exceptional(), q);
        std::ostringstream os;
        os << "q=" << q << " bound=" << sol.size_bound << " nodes=" << sol.nodes
           << (sol.solution ? " soluble" : " insoluble");
        timer.finish(true, os.str());
    }
    if (!sol.solution) {
        if (!budget_certifies(order, q, part.exceptional().size(), n / k) || !sol.exhausted)
            return fallback(h, std::move(d), "solubility", "budget below |Q|; insolubility is not a certificate");
        Certificate cert;
        cert.reason = "insoluble";
        cert.n = n;
        cert.k = k;
        cert.fingerprint = h.fingerprint();
        cert.mu = p.mu;
        cert.partition = part;
        cert.generators = gens;
        cert.basis = lat.basis();
        cert.coset_order = order;
        cert.q = q;
        cert.leftover = index_vector(labels, r, set_difference(iota_set(0, n), part.exceptional()));
        if (vector_sum(cert.leftover) % k == 0) cert.leftover_residue = CosetGroup(lat, k).residue(cert.leftover);
        cert.size_bound = sol.size_bound;
        cert.nodes = sol.nodes;
        cert.exhausted = sol.exhausted;
        d.verdict = Verdict::no_perfect_matching;
        d.certificate = std::move(cert);
        return confirm_no(std::move(d));
    }

    // Construction: M1, absorbing family, reservoir, near-perfect matching.
    Construction c;
    c.m1 = sol.solution->edges;
    Mask used = to_mask(sol.solution->covered());
    {
        StageTimer timer(d, "absorbing-family");
        const FamilyBuild fb = build_absorbing_family(h, part, p, sol.solution->covered());
        c.family = fb.family;
        for (const auto& m : c.family.matchings) used |= to_mask(m.covered());
        std::ostringstream os;
        os << "members=" << c.family.size() << " candidates=" << fb.candidates
           << " demands_below_target=" << fb.demands_below_target;
        timer.finish(fb.contract_met(), os.str());
    }

    const CosetGroup cg(lat, k);
    const Mask v0 = to_mask(part.exceptional());
    {
        StageTimer timer(d, "reservoir");
        const CoefficientBound cb = gens.empty() ? CoefficientBound{}
                                                 : coefficient_bound(r, k, gens, static_cast<long>(k) * q + k,
                                                                     p.coefficient_cap);
        const long per_vector = cb.value;
        bool full = true;
        for (const auto& v : gens) {
            long taken = 0;
            for (std::size_t i = 0; i < h.edge_count() && taken < per_vector; ++i) {
                const Mask em = h.edge_mask(i);
                if (em & (used | v0)) continue;
                if (index_vector(labels, r, h.edge(i)) != v) continue;
                c.m2.push_back(h.edge(i));
                used |= em;
                ++taken;
            }
            full = full && taken == per_vector;
        }
        // Vertices of V_1..V_s must be covered by type-2 robust edges.
        for (int i = 1; i <= part.s; ++i) {
            for (Vertex v : part.parts[i]) {
                if (used >> v & 1) continue;
                bool placed = false;
                for (std::size_t ei : h.incident(v)) {
                    const Mask em = h.edge_mask(ei);
                    if (em & (used | v0)) continue;
                    const IndexVector iv = index_vector(labels, r, h.edge(ei));
                    if (std::find(robust.type2.begin(), robust.type2.end(), iv) == robust.type2.end()) continue;
                    c.m2.push_back(h.edge(ei));
                    used |= em;
                    placed = true;
                    break;
                }
                if (!placed) {
                    timer.finish(false, "vertex " + std::to_string(v) + " of a small cluster has no free robust edge");
                    return fallback(h, std::move(d), "reservoir", "cannot cover the small clusters");
                }
            }
        }
        std::ostringstream os;
        os << "C'=" << per_vector << (cb.cap_hit ? "+" : "") << " edges=" << c.m2.size()
           << (full ? "" : " (short)");
        timer.finish(full, os.str());
    }

    VertexSet u_set;
    {
        StageTimer timer(d, "almost-perfect");
        const Mask rest = h.all_vertices() & ~used;
        c.m3 = max_matching_on(h, rest).edges;
        for (const auto& e : c.m3) used |= to_mask(e);
        u_set = from_mask(h.all_vertices() & ~used);
        timer.finish(true, "uncovered=" + std::to_string(u_set.size()));
    }

    std::vector<Edge> m0;
    for (const auto& m : c.family.matchings) m0.insert(m0.end(), m.edges.begin(), m.edges.end());

    std::vector<VertexSet> leftovers;
    std::set<Edge> removed;
    if (!u_set.empty()) {
        StageTimer timer(d, "residue-repair");
        // Pigeonhole over Q: some p <= q-1 edges of M0 + M3 have residues summing to -R(U).
        std::vector<Edge> pool = m0;
        pool.insert(pool.end(), c.m3.begin(), c.m3.end());
        std::vector<IndexVector> pool_vectors;
        for (const auto& e : pool) pool_vectors.push_back(index_vector(labels, r, e));
        const IndexVector iu = index_vector(labels, r, u_set);
        const auto target = cg.negate(cg.residue(iu));
        const auto picks = find_residue_subset(cg, pool_vectors, target);
        if (!picks) {
            timer.finish(false, "no residue subset");
            return fallback(h, std::move(d), "residue-repair", "no edges with the required residue sum");
        }
        VertexSet y = u_set;
        for (std::size_t i : *picks) {
            y = set_union(y, pool[i]);
            removed.insert(pool[i]);
        }
        const IndexVector iy = index_vector(labels, r, y);
        const auto coeffs = min_norm_representation(gens, iy, p.coefficient_cap);
        if (!coeffs) {
            timer.finish(false, "no bounded representation of i(Y)");
            return fallback(h, std::move(d), "residue-repair", "i(Y) has no representation within the cap");
        }
        // c_v edges of index v come out of the reservoir; Y plus them splits into b_v k-sets of index v.
        std::vector<long> b(gens.size(), 0);
        VertexSet regroup_pool = y;
        std::vector<Edge> m2_left = c.m2;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const long a = (*coeffs)[g];
            if (a >= 0) {
                b[g] = a;
                continue;
            }
            long need = -a;
            for (auto it = m2_left.begin(); it != m2_left.end() && need > 0;) {
                if (index_vector(labels, r, *it) == gens[g]) {
                    regroup_pool = set_union(regroup_pool, *it);
                    it = m2_left.erase(it);
                    --need;
                } else {
                    ++it;
                }
            }
            if (need > 0) {
                timer.finish(false, "reservoir short for " + describe(gens[g]));
                return fallback(h, std::move(d), "reservoir", "reservoir cannot supply the regrouping");
            }
        }
        c.m2 = m2_left;
        auto sets = regroup(labels, r, regroup_pool, gens, b);
        if (!sets) {
            timer.finish(false, "regrouping identity does not balance");
            return fallback(h, std::move(d), "residue-repair", "regrouping failed");
        }
        leftovers = std::move(*sets);
        timer.finish(true, "p=" + std::to_string(picks->size()) + " leftover_sets=" + std::to_string(leftovers.size()));
    }

    Matching current;
    for (const auto* part_edges : {&c.m1, &c.m2, &c.m3, &m0})
        for (const auto& e : *part_edges)
            if (!removed.count(e)) current.edges.push_back(e);

    Matching final_matching = current;
    if (!leftovers.empty()) {
        StageTimer timer(d, "absorption");
        const AbsorbResult ar = absorb_leftover(h, current, c.family, leftovers);
        if (!ar.success) {
            timer.finish(false, ar.failure);
            return fallback(h, std::move(d), "absorption", ar.failure);
        }
        final_matching = ar.matching;
        timer.finish(true, "absorbed=" + std::to_string(ar.used.size()));
    }
    final_matching.canonicalize();
    if (!is_perfect_matching_of(h, final_matching))
        return fallback(h, std::move(d), "verification", "constructed matching is not perfect");
    d.verdict = Verdict::perfect_matching;
    d.matching = std::move(final_matching);
    return d;
}

bool verify_certificate(const Hypergraph& h, const Certificate& cert, const PipelineParams& p)
{
    if (cert.n != h.n() || cert.k != h.k() || cert.fingerprint != h.fingerprint())
        throw std::invalid_argument("certificate was issued for a different hypergraph");
    if (cert.mu != p.mu) throw std::invalid_argument("certificate mu differs from params");
    if (cert.reason == "divisibility") return h.n() % h.k() != 0;
    if (cert.reason != "insoluble") return false;
    if (!h.searchable()) throw std::domain_error("certificate verification supports at most 64 vertices");

    try {
        check_partition(cert.partition, h.n());
    } catch (const std::invalid_argument&) {
        return false;
    }
    const std::vector<IndexVector> gens = robust_vectors(h, cert.partition, p.mu).all();
    if (gens != cert.generators) return false;
    const Lattice lat(cert.partition.r(), gens);
    if (lat.basis() != cert.basis) return false;
    const CosetGroup cg(lat, h.k());
    if (!cg.finite() || *cg.order() != cert.coset_order) return false;
    if (!budget_certifies(cert.coset_order, cert.q, cert.partition.exceptional().size(), h.n() / h.k()))
        return false;
    const SolubilitySearch sol = is_soluble(h, cert.partition, lat, cert.partition.exceptional(), cert.q);
    return !sol.solution && sol.exhausted;
}

AlmostPerfect almost_perfect_matching(const Hypergraph& h, int l)
{
    check_l(h, l);
    AlmostPerfect out;
    out.matching = max_matching(h);
    out.uncovered = h.n() - static_cast<int>(out.matching.size()) * h.k();
    out.bound = 2 * h.k() - l - 1;
    out.within_bound = out.uncovered <= out.bound;
    return out;
}

std::size_t CrossValidationReport::structural() const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CrossValidationRow& row) {
        return row.verdict != Verdict::oracle_fallback;
    }));
}

GeneratedInstance cross_validation_instance(const CrossValidationSpec& spec, std::size_t i)
{
    if (spec.sizes.empty() || spec.densities.empty()) throw std::invalid_argument("empty size or density list");
    static const char* const kMixed[] = {"random", "random", "space", "cover", "lattice"};
    const std::string family = spec.family == "mixed" ? kMixed[i % 5] : spec.family;
    const std::size_t slot = spec.family == "mixed" ? i / 5 : i;
    const int n = spec.sizes[slot % spec.sizes.size()];
    const int k = spec.k;
    std::mt19937_64 rng(spec.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    const std::uint64_t sub_seed = rng();

    Hypergraph g;
    if (family == "random") {
        g = random_kgraph(n, k, spec.densities[(slot / spec.sizes.size()) % spec.densities.size()], sub_seed);
    } else if (family == "complete") {
        g = Hypergraph::complete(n, k);
    } else if (family == "space") {
        g = space_barrier(n, k);
    } else if (family == "cover") {
        if (n % k != 0 || n < 2 * k) throw std::invalid_argument("cover barrier needs k | n and n >= 2k");
        g = cover_barrier(n, k);
    } else if (family == "lattice") {
        std::uniform_int_distribution<int> split(1, n - 1);
        const int a = split(rng);
        IndexVector first(2, 0), second(2, 0);
        first[0] = k;
        second[1] = k;
        g = lattice_barrier({a, n - a}, k, {first, second});
    } else {
        throw std::invalid_argument("unknown instance family: " + family);
    }

    // Odd slots of the barrier families are perturbed: drop 1/10 of the edges, add 1/20 of the non-edges.
    if (family != "random" && family != "complete" && (slot / spec.sizes.size()) % 2 == 1) {
        std::bernoulli_distribution drop(0.1), add(0.05);
        std::vector<Edge> edges;
        for_each_subset(iota_set(0, n), k, [&](const VertexSet& e) {
            const bool present = g.has_edge(e);
            if (present ? !drop(rng) : add(rng)) edges.push_back(e);
            return true;
        });
        g = Hypergraph(n, k, std::move(edges));
    }
    return {family, std::move(g)};
}

CrossValidationReport cross_validate(const CrossValidationSpec& spec, const PipelineParams& p)
{
    CrossValidationReport report;
    for (std::size_t i = 0; i < spec.count; ++i) {
        GeneratedInstance inst = cross_validation_instance(spec, i);
        const auto start = Clock::now();
        const Decision d = decide(inst.graph, spec.l, p);
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        CrossValidationRow row;
        row.fingerprint = inst.graph.fingerprint();
        row.family = inst.family;
        row.n = inst.graph.n();
        row.verdict = d.verdict;
        row.decided_yes = d.has_perfect_matching();
        row.oracle_yes = perfect_matching_oracle(inst.graph).has_value();
        row.stage = d.verdict == Verdict::oracle_fallback ? d.fallback_stage : "structural";
        row.seconds = seconds;
        if (row.decided_yes != row.oracle_yes) report.disagreements.push_back(inst.graph);
        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_csv(std::ostream& out, const CrossValidationReport& report, bool timings)
{
    out << "fingerprint,family,n,verdict,decide_yes,oracle_yes,stage" << (timings ? ",seconds" : "") << '\n';
    for (const auto& row : report.rows) {
        out << std::hex << std::setw(16) << std::setfill('0') << row.fingerprint << std::dec << std::setfill(' ')
            << ',' << row.family << ',' << row.n << ','
            << to_string(row.verdict) << ',' << row.decided_yes << ',' << row.oracle_yes << ',' << row.stage;
        if (timings) out << ',' << row.seconds;
        out << '\n';
    }
}

}  // namespace hypermatch
