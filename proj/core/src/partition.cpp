#include "hypermatch/partition.hpp"

#include "hypermatch/fractional.hpp"
#include "hypermatch/lattice.hpp"
#include "hypermatch/reachability.hpp"

#include <algorithm>
#include <sstream>

namespace hypermatch {

namespace {

// x < r * n, exactly.
bool below_fraction_of(std::size_t x, const Rational& r, int n)
{
    return Rational(static_cast<long long>(x)) < r * n;
}

std::string set_text(const VertexSet& s)
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << '}';
    return out.str();
}

}  // namespace

std::vector<int> Partition::labels(int n) const
{
    std::vector<int> label(n, -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        check_vertex_set(parts[i], n);
        for (Vertex v : parts[i]) {
            if (label[v] != -1) throw std::invalid_argument("partition parts overlap");
            label[v] = static_cast<int>(i);
        }
    }
    if (std::find(label.begin(), label.end(), -1) != label.end())
        throw std::invalid_argument("partition does not cover every vertex");
    return label;
}

VertexSet Partition::closed_union() const
{
    VertexSet u;
    for (int i = s + 1; i <= r(); ++i) u = set_union(u, parts[i]);
    return u;
}

void check_partition(const Partition& p, int n)
{
    if (p.parts.empty()) throw std::invalid_argument("partition needs the exceptional part V_0");
    if (p.s < 0 || p.s > p.r()) throw std::invalid_argument("partition needs 0 <= s <= r");
    for (int i = 1; i <= p.r(); ++i)
        if (p.parts[i].empty()) throw std::invalid_argument("partition parts V_1..V_r must be non-empty");
    (void)p.labels(n);
}

int PipelineParams::c() const { return static_cast<int>(floor_of(1 / delta)); }

PipelineParams default_params(int k, int l)
{
    PipelineParams p;
    p.delta = conjectured_cstar(k, l);
    return p;
}

void validate(const PipelineParams& p)
{
    auto in_unit = [](const Rational& x, const char* name) {
        if (x <= 0 || x > 1) throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
    };
    in_unit(p.delta, "delta");
    in_unit(p.delta_prime, "delta_prime");
    in_unit(p.gamma, "gamma");
    in_unit(p.alpha, "alpha");
    in_unit(p.beta, "beta");
    in_unit(p.mu, "mu");
    if (p.t < 1) throw std::invalid_argument("t must be at least 1");
    if (p.q < 0) throw std::invalid_argument("q must be nonnegative");
    if (p.coefficient_cap < 1) throw std::invalid_argument("coefficient cap must be positive");
    if (p.oracle_cap < 0) throw std::invalid_argument("oracle cap must be nonnegative");
}

PruneResult prune_low_reachability(const Hypergraph& h, const Rational& alpha, const Rational& delta_prime)
{
    const ReachabilityParams rp{alpha, 1};
    validate(rp);
    PruneResult out;
    VertexSet current = iota_set(0, h.n());
    while (true) {
        const ReachabilityTable table(h, current, rp);
        bool removed = false;
        for (Vertex v : current) {
            VertexSet nb = table.neighborhood(v);
            if (!below_fraction_of(nb.size(), delta_prime, h.n())) continue;
            VertexSet a = set_union(VertexSet{v}, nb);
            current = set_difference(current, a);
            out.pivots.push_back(v);
            out.removed.push_back(std::move(a));
            removed = true;
            break;
        }
        if (!removed) break;
    }
    out.survivors = std::move(current);
    return out;
}

ClosedParts closed_partition(const Hypergraph& h, const VertexSet& s, const PipelineParams& p)
{
    ClosedParts out;
    out.certified_depth = p.t;
    if (s.empty()) return out;

    const ReachabilityTable seed(h, s, {p.alpha, 1});
    const ReachabilityTable closed(h, s, {p.beta, p.t});

    // Components of the (alpha,1)-reachability graph, by least vertex.
    std::vector<VertexSet> components;
    std::vector<char> seen(h.n(), 0);
    for (Vertex root : s) {
        if (seen[root]) continue;
        VertexSet comp;
        std::vector<Vertex> stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (Vertex y : seed.neighborhood(x))
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }

    std::vector<VertexSet> parts;
    for (const VertexSet& comp : components) {
        if (closed.closed(comp)) {
            parts.push_back(comp);
            continue;
        }
        // First-fit into mutually reachable groups.
        std::vector<VertexSet> groups;
        for (Vertex v : comp) {
            bool placed = false;
            for (VertexSet& g : groups) {
                if (std::all_of(g.begin(), g.end(), [&](Vertex w) { return closed.reachable(v, w); })) {
                    g.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) groups.push_back({v});
        }
        parts.insert(parts.end(), groups.begin(), groups.end());
    }

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < parts.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < parts.size() && !merged; ++j) {
                VertexSet u = set_union(parts[i], parts[j]);
                if (!closed.closed(u)) continue;
                parts[i] = std::move(u);
                parts.erase(parts.begin() + static_cast<long>(j));
                merged = true;
            }
    }
    std::sort(parts.begin(), parts.end(), [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });

    const Rational min_size = (p.delta_prime - p.alpha) * h.n();
    for (const VertexSet& part : parts)
        if (Rational(static_cast<long long>(part.size())) < min_size)
            throw PartitionNotCertified("closed part " + set_text(part) + " is smaller than (delta' - alpha) n");
    const long max_parts = std::min<long>(p.c(), static_cast<long>(floor_of(1 / p.delta_prime)));
    if (static_cast<long>(parts.size()) > max_parts)
        throw PartitionNotCertified("closed partition needs " + std::to_string(parts.size()) +
                                    " parts, more than min(c, 1/delta')");
    out.parts = std::move(parts);
    return out;
}

ClusterMap classify_leftover(const Hypergraph& h, const std::vector<VertexSet>& p1, const VertexSet& vprime,
                             const Rational& mu)
{
    check_vertex_set(vprime, h.n());
    const int d = static_cast<int>(p1.size());
    std::vector<int> label(h.n(), -1);
    for (int i = 0; i < d; ++i)
        for (Vertex v : p1[i]) label[v] = i;

    const BigInt need = boost::multiprecision::numerator(mu) * ipow(BigInt(h.n()), h.k() - 1);
    const BigInt& den = boost::multiprecision::denominator(mu);

    ClusterMap out;
    for (Vertex v : vprime) {
        std::map<IndexVector, std::uint64_t> counts;
        for (std::size_t ei : h.incident(v)) {
            IndexVector iv(d, 0);
            bool inside = true;
            for (Vertex x : h.edge(ei)) {
                if (x == v) continue;
                if (label[x] < 0) {
                    inside = false;
                    break;
                }
                ++iv[label[x]];
            }
            if (inside) ++counts[iv];
        }
        std::vector<IndexVector> signature;
        for (const auto& [iv, c] : counts)
            if (BigInt(c) * den >= need) signature.push_back(iv);
        out[signature].push_back(v);
    }
    return out;
}

PartitionBuild build_partition(const Hypergraph& h, const PipelineParams& p)
{
    validate(p);
    PartitionBuild out;
    out.cluster_floor = p.cluster_floor_for(h.k());
    out.prune = prune_low_reachability(h, p.alpha, p.delta_prime);
    out.closed = closed_partition(h, out.prune.survivors, p);

    const VertexSet vprime = set_difference(iota_set(0, h.n()), out.prune.survivors);
    ClusterMap clusters = classify_leftover(h, out.closed.parts, vprime, p.mu);

    VertexSet v0;
    std::vector<ClusterFate> ordered;
    auto empty_it = clusters.find({});
    if (empty_it != clusters.end()) {
        out.empty_cluster_flagged = true;
        v0 = empty_it->second;
        ordered.push_back({{}, empty_it->second, true});
        clusters.erase(empty_it);
    }
    std::vector<ClusterFate> rest;
    for (auto& [sig, verts] : clusters) rest.push_back({sig, verts, false});
    std::stable_sort(rest.begin(), rest.end(), [](const ClusterFate& a, const ClusterFate& b) {
        return a.vertices.size() < b.vertices.size();
    });
    for (ClusterFate& c : rest) {
        const long floor = static_cast<long>(h.k() - 1) * static_cast<long>(v0.size()) + out.cluster_floor;
        if (static_cast<long>(c.vertices.size()) < floor) {
            c.to_exceptional = true;
            v0 = set_union(v0, c.vertices);
        }
        ordered.push_back(c);
    }
    out.clusters = ordered;

    std::vector<const ClusterFate*> kept;
    for (const ClusterFate& c : ordered)
        if (!c.to_exceptional) kept.push_back(&c);
    std::sort(kept.begin(), kept.end(),
              [](const ClusterFate* a, const ClusterFate* b) { return a->signature < b->signature; });

    Partition& part = out.partition;
    part.parts = {v0};
    for (const ClusterFate* c : kept) part.parts.push_back(c->vertices);
    part.s = static_cast<int>(kept.size());
    for (const VertexSet& w : out.closed.parts) part.parts.push_back(w);
    check_partition(part, h.n());
    return out;
}

bool PartitionReport::all() const
{
    return std::all_of(items.begin(), items.end(), [](const ItemCheck& c) { return c.pass; });
}

PartitionReport validate_partition(const Hypergraph& h, const Partition& part, const PipelineParams& p)
{
    check_partition(part, h.n());
    const int n = h.n();
    const int k = h.k();
    const int c = p.c();
    const int s = part.s;
    const int r = part.r();
    PartitionReport rep;

    {
        const BigInt cluster_cap = ipow(BigInt(2), static_cast<unsigned>(binomial(c + k - 2, k - 1)));
        ItemCheck& it = rep.items[0];
        if (BigInt(s) > cluster_cap) {
            it.pass = false;
            it.detail = "s = " + std::to_string(s) + " exceeds 2^binom(c+k-2,k-1)";
        } else if (r - s > c) {
            it.pass = false;
            it.detail = "r - s = " + std::to_string(r - s) + " exceeds c = " + std::to_string(c);
        }
    }
    {
        // |V_0| <= (k^|I| - 1)/(k - 1) * b from the recursive absorption, with
        // |I| = 2^binom(d+k-2, d-1) signatures over d = r - s closed parts.
        ItemCheck& it = rep.items[1];
        const long d = r - s;
        const long b = p.cluster_floor_for(k);
        if (d >= 1) {
            const BigInt sigs = binomial(d + k - 2, d - 1);
            if (sigs < 24) {
                const BigInt families = ipow(BigInt(2), static_cast<unsigned>(sigs));
                if (families < 4096) {
                    const BigInt bound = (ipow(BigInt(k), static_cast<unsigned>(families)) - 1) / (k - 1) * b;
                    if (BigInt(part.exceptional().size()) > bound) {
                        it.pass = false;
                        it.detail = "|V_0| = " + std::to_string(part.exceptional().size()) + " exceeds " +
                                    to_string(bound);
                    }
                }
            }
        }
        std::size_t low = 0;
        for (int i = 0; i <= s; ++i) low += part.parts[i].size();
        if (it.pass && Rational(static_cast<long long>(low)) > Rational(c) * p.delta_prime * n) {
            it.pass = false;
            it.detail = "|V_0 + ... + V_s| = " + std::to_string(low) + " exceeds c delta' n";
        }
    }
    {
        ItemCheck& it = rep.items[2];
        const long floor = static_cast<long>(k - 1) * static_cast<long>(part.exceptional().size()) +
                           p.cluster_floor_for(k);
        for (int i = 1; i <= s && it.pass; ++i)
            if (static_cast<long>(part.parts[i].size()) < floor) {
                it.pass = false;
                it.detail = "|V_" + std::to_string(i) + "| = " + std::to_string(part.parts[i].size()) +
                            " is below (k-1)|V_0| + b = " + std::to_string(floor);
            }
    }
    {
        ItemCheck& it = rep.items[3];
        const RobustVectors rv = robust_vectors(h, part, p.mu);
        for (int i = 1; i <= s && it.pass; ++i) {
            const bool has = std::any_of(rv.type2.begin(), rv.type2.end(),
                                         [&](const IndexVector& v) { return v[i - 1] == 1; });
            if (!has) {
                it.pass = false;
                it.detail = "no type-2 robust vector has coordinate " + std::to_string(i) + " equal to 1";
            }
        }
    }
    {
        ItemCheck& it = rep.items[4];
        const VertexSet ambient = part.closed_union();
        const ReachabilityParams rp{p.beta, p.t};
        for (int i = s + 1; i <= r && it.pass; ++i) {
            if (Rational(2 * static_cast<long long>(part.parts[i].size())) < p.delta_prime * n) {
                it.pass = false;
                it.detail = "|V_" + std::to_string(i) + "| = " + std::to_string(part.parts[i].size()) +
                            " is below delta' n / 2";
                break;
            }
            const VertexSet& vi = part.parts[i];
            for (std::size_t a = 0; a < vi.size() && it.pass; ++a)
                for (std::size_t b = a + 1; b < vi.size(); ++b)
                    if (!is_reachable(h, vi[a], vi[b], rp, ambient)) {
                        it.pass = false;
                        it.detail = "V_" + std::to_string(i) + " is not closed: " + std::to_string(vi[a]) +
                                    " and " + std::to_string(vi[b]) + " are not reachable";
                        break;
                    }
        }
    }
    return rep;
}

FormulaConstants formula_constants(int k, int c, long coefficient_cap)
{
    FormulaConstants out;
    out.binom_statement = binomial(c + k - 2, k - 1);
    out.binom_proof = binomial(c + k - 2, c - 1);
    auto b_for = [&](const BigInt& inner) -> std::optional<BigInt> {
        if (inner > 62) return std::nullopt;
        const BigInt pow2 = ipow(BigInt(2), static_cast<unsigned>(inner));
        const long top = static_cast<long>(k + pow2 + c - 1);
        return BigInt(k) * binomial(top, k) + inner * coefficient_cap;
    };
    out.b_statement = b_for(out.binom_statement);
    out.b_proof = b_for(out.binom_proof);
    if (out.b_statement && out.binom_statement <= 20) {
        const BigInt pow2 = ipow(BigInt(2), static_cast<unsigned>(out.binom_statement));
        const BigInt bound = ipow(BigInt(k), static_cast<unsigned>(pow2)) * *out.b_statement;
        out.v0_bound_bits = static_cast<long>(msb(bound)) + 1;
    }
    return out;
}

}  // namespace hypermatch
