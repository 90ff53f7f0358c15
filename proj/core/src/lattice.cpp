#include "hypermatch/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hypermatch {

namespace {

using Row = std::vector<BigInt>;

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Row to_row(const IndexVector& v)
{
    Row r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

void axpy(Row& y, const BigInt& a, const Row& x)  // y -= a * x
{
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] -= a * x[i];
}

bool is_zero(const Row& r)
{
    return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; });
}

bool threshold_met(std::uint64_t count, const Rational& mu, int n, int exponent)
{
    return BigInt(count) * boost::multiprecision::denominator(mu) >=
           boost::multiprecision::numerator(mu) * ipow(BigInt(n), static_cast<unsigned>(exponent));
}

}  // namespace

IndexVector index_vector(const std::vector<int>& labels, int r, const VertexSet& a)
{
    IndexVector v(r, 0);
    for (Vertex x : a) {
        if (x < 0 || x >= static_cast<int>(labels.size()))
            throw std::invalid_argument("index_vector: vertex out of range");
        if (labels[x] > 0) ++v[labels[x] - 1];
    }
    return v;
}

IndexVector index_vector(const Partition& p, const VertexSet& a)
{
    IndexVector v(p.r(), 0);
    for (int i = 1; i <= p.r(); ++i)
        v[i - 1] = static_cast<long>(set_intersection(p.parts[i], a).size());
    return v;
}

long vector_sum(const IndexVector& v)
{
    long s = 0;
    for (long x : v) s += x;
    return s;
}

bool is_k_vector(const IndexVector& v, int k)
{
    return std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; }) && vector_sum(v) == k;
}

IndexVector unit_vector(int r, int i)
{
    if (i < 1 || i > r) throw std::invalid_argument("unit_vector: index out of range");
    IndexVector u(r, 0);
    u[i - 1] = 1;
    return u;
}

std::vector<IndexVector> RobustVectors::all() const
{
    std::vector<IndexVector> out = type1;
    out.insert(out.end(), type2.begin(), type2.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool RobustVectors::contains(const IndexVector& v) const
{
    return std::find(type1.begin(), type1.end(), v) != type1.end() ||
           std::find(type2.begin(), type2.end(), v) != type2.end();
}

RobustVectors robust_vectors(const Hypergraph& h, const Partition& p, const Rational& mu)
{
    const int n = h.n();
    const int k = h.k();
    const int r = p.r();
    const int s = p.s;
    const std::vector<int> labels = p.labels(n);

    std::map<IndexVector, std::uint64_t> global;
    std::map<std::pair<Vertex, IndexVector>, std::uint64_t> through;
    for (const Edge& e : h.edges()) {
        IndexVector v(r, 0);
        bool touches_v0 = false;
        Vertex small_vertex = -1;
        int small_count = 0;
        for (Vertex x : e) {
            const int part = labels[x];
            if (part == 0) {
                touches_v0 = true;
                break;
            }
            ++v[part - 1];
            if (part <= s) {
                ++small_count;
                small_vertex = x;
            }
        }
        if (touches_v0) continue;
        if (small_count == 0) ++global[v];
        else if (small_count == 1) ++through[{small_vertex, v}];
    }

    RobustVectors out;
    for (const auto& [v, count] : global)
        if (threshold_met(count, mu, n, k)) out.type1.push_back(v);

    // Candidate type-2 vectors per small part, then require every vertex of it.
    std::map<std::pair<int, IndexVector>, std::uint64_t> qualified;
    for (const auto& [key, count] : through)
        if (threshold_met(count, mu, n, k - 1)) ++qualified[{labels[key.first], key.second}];
    for (const auto& [key, hits] : qualified)
        if (hits == p.parts[key.first].size()) out.type2.push_back(key.second);
    std::sort(out.type2.begin(), out.type2.end());
    return out;
}

Lattice::Lattice(int dim, const std::vector<IndexVector>& generators) : dim_(dim), generators_(generators)
{
    if (dim < 0) throw std::invalid_argument("lattice dimension must be nonnegative");
    std::vector<Row> rows;
    for (const IndexVector& g : generators) {
        if (static_cast<int>(g.size()) != dim)
            throw std::invalid_argument("lattice generator has the wrong dimension");
        rows.push_back(to_row(g));
    }

    std::size_t top = 0;
    for (int col = 0; col < dim && top < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                axpy(rows[i], floor_div(rows[i][col], rows[top][col]), rows[top]);
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[top][col] == 0) continue;
        if (rows[top][col] < 0)
            for (BigInt& x : rows[top]) x = -x;
        for (std::size_t i = 0; i < top; ++i) axpy(rows[i], floor_div(rows[i][col], rows[top][col]), rows[top]);
        pivots_.push_back(col);
        ++top;
    }
    rows.resize(top);
    basis_ = std::move(rows);
}

bool Lattice::contains(const std::vector<BigInt>& v) const
{
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("membership: wrong dimension");
    Row w = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const BigInt& p = basis_[i][pivots_[i]];
        if (w[pivots_[i]] % p != 0) return false;
        axpy(w, w[pivots_[i]] / p, basis_[i]);
    }
    return is_zero(w);
}

bool Lattice::contains(const IndexVector& v) const { return contains(to_row(v)); }

std::optional<BigInt> Lattice::index_in_ambient() const
{
    if (rank() != dim_) return std::nullopt;
    BigInt det = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) det *= basis_[i][pivots_[i]];
    return det;
}

Lattice lattice_generate(int dim, const std::vector<IndexVector>& generators)
{
    return Lattice(dim, generators);
}

Lattice lmax(int r, int k)
{
    if (r < 1) throw std::invalid_argument("lmax needs r >= 1");
    if (k < 1) throw std::invalid_argument("lmax needs k >= 1");
    std::vector<IndexVector> gens;
    for (int i = 0; i + 1 < r; ++i) {
        IndexVector g(r, 0);
        g[i] = 1;
        g[i + 1] = -1;
        gens.push_back(g);
    }
    IndexVector last(r, 0);
    last[r - 1] = k;
    gens.push_back(last);
    return Lattice(r, gens);
}

std::vector<BigInt> lmax_coordinates(const IndexVector& v, int k)
{
    const std::size_t r = v.size();
    std::vector<BigInt> x(r);
    BigInt prefix = 0;
    for (std::size_t j = 0; j < r; ++j) {
        prefix += v[j];
        if (j + 1 < r) x[j] = prefix;
    }
    if (r == 0) return x;
    if (prefix % k != 0) throw std::invalid_argument("vector is not in L_max (coordinate sum not divisible by k)");
    x[r - 1] = prefix / k;
    return x;
}

CosetGroup::CosetGroup(const Lattice& l, int k) : dim_(l.dim()), k_(k), rank_(l.rank())
{
    if (k < 1) throw std::invalid_argument("coset group needs k >= 1");
    const int n = dim_;
    const int m = rank_;
    std::vector<Row> d;
    for (const Row& b : l.basis()) {
        IndexVector iv(n);
        for (int j = 0; j < n; ++j) iv[j] = static_cast<long>(b[j]);
        BigInt total = 0;
        for (const BigInt& x : b) total += x;
        if (total % k != 0) throw std::invalid_argument("lattice is not contained in L_max");
        d.push_back(lmax_coordinates(iv, k));
    }
    v_.assign(n, Row(n, 0));
    for (int i = 0; i < n; ++i) v_[i][i] = 1;

    auto col_axpy = [&](int dst, const BigInt& a, int src) {  // col dst -= a * col src
        if (a == 0) return;
        for (int i = 0; i < m; ++i) d[i][dst] -= a * d[i][src];
        for (int i = 0; i < n; ++i) v_[i][dst] -= a * v_[i][src];
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < m; ++i) std::swap(d[i][a], d[i][b]);
        for (int i = 0; i < n; ++i) std::swap(v_[i][a], v_[i][b]);
    };

    for (int t = 0; t < m; ++t) {
        while (true) {
            int bi = -1;
            int bj = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j)
                    if (d[i][j] != 0 && (bi < 0 || abs(d[i][j]) < abs(d[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) throw std::logic_error("coset group: lattice basis is rank deficient");
            std::swap(d[t], d[bi]);
            col_swap(t, bj);

            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (d[i][t] == 0) continue;
                axpy(d[i], floor_div(d[i][t], d[t][t]), d[t]);
                if (d[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (d[t][j] == 0) continue;
                col_axpy(j, floor_div(d[t][j], d[t][t]), t);
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            for (int j = 0; j < n; ++j) d[t][j] += d[bad][j];
        }
        if (d[t][t] < 0)
            for (BigInt& x : d[t]) x = -x;
        factors_.push_back(d[t][t]);
    }
}

std::optional<BigInt> CosetGroup::order() const
{
    if (!finite()) return std::nullopt;
    BigInt o = 1;
    for (const BigInt& f : factors_) o *= f;
    return o;
}

std::vector<BigInt> CosetGroup::reduce(std::vector<BigInt> y) const
{
    for (int j = 0; j < rank_; ++j) {
        y[j] %= factors_[j];
        if (y[j] < 0) y[j] += factors_[j];
    }
    return y;
}

std::vector<BigInt> CosetGroup::residue(const IndexVector& v) const
{
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("residue: wrong dimension");
    const std::vector<BigInt> x = lmax_coordinates(v, k_);
    std::vector<BigInt> y(dim_, 0);
    for (int i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim_; ++j)
            if (v_[i][j] != 0) y[j] += x[i] * v_[i][j];
    }
    return reduce(std::move(y));
}

std::vector<BigInt> CosetGroup::add(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const
{
    std::vector<BigInt> y(dim_);
    for (int j = 0; j < dim_; ++j) y[j] = a[j] + b[j];
    return reduce(std::move(y));
}

std::vector<BigInt> CosetGroup::negate(const std::vector<BigInt>& a) const
{
    std::vector<BigInt> y(dim_);
    for (int j = 0; j < dim_; ++j) y[j] = -a[j];
    return reduce(std::move(y));
}

bool CosetGroup::is_identity(const std::vector<BigInt>& a) const { return is_zero(a); }

bool has_transferral(const Lattice& l, int i, int j)
{
    if (i == j) throw std::invalid_argument("transferral needs distinct parts");
    if (j < 1 || j > l.dim()) throw std::invalid_argument("transferral: part index out of range");
    IndexVector v = unit_vector(l.dim(), i);
    --v[j - 1];
    return l.contains(v);
}

MergeResult merge_transferral_parts(const Hypergraph& h, const Partition& p, const Rational& mu)
{
    MergeResult out{p, {}};
    while (true) {
        Partition& cur = out.partition;
        const Lattice l(cur.r(), robust_vectors(h, cur, mu).all());
        bool merged = false;
        for (int i = cur.s + 1; i <= cur.r() && !merged; ++i)
            for (int j = i + 1; j <= cur.r() && !merged; ++j) {
                if (!has_transferral(l, i, j)) continue;
                cur.parts[i] = set_union(cur.parts[i], cur.parts[j]);
                cur.parts.erase(cur.parts.begin() + j);
                out.merges.push_back({i, j});
                merged = true;
            }
        if (!merged) return out;
    }
}

namespace {

// Bounded-box DFS for a representation with every |a_g| <= bound.
class RepresentationSearch {
public:
    RepresentationSearch(const std::vector<IndexVector>& gens, std::size_t dim) : gens_(gens), dim_(dim)
    {
        suffix_.assign(gens.size() + 1, std::vector<long>(dim, 0));
        for (std::size_t g = gens.size(); g-- > 0;)
            for (std::size_t j = 0; j < dim; ++j) suffix_[g][j] = suffix_[g + 1][j] + std::labs(gens[g][j]);
    }

    bool run(const IndexVector& target, long bound, std::vector<long>& coeffs)
    {
        bound_ = bound;
        coeffs.assign(gens_.size(), 0);
        IndexVector w = target;
        return dfs(0, w, coeffs);
    }

private:
    bool dfs(std::size_t g, IndexVector& w, std::vector<long>& coeffs)
    {
        for (std::size_t j = 0; j < dim_; ++j)
            if (std::labs(w[j]) > bound_ * suffix_[g][j]) return false;
        if (g == gens_.size()) return true;  // box check forced w == 0
        for (long step = 0; step <= 2 * bound_; ++step) {
            const long a = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
            for (std::size_t j = 0; j < dim_; ++j) w[j] -= a * gens_[g][j];
            coeffs[g] = a;
            const bool ok = dfs(g + 1, w, coeffs);
            for (std::size_t j = 0; j < dim_; ++j) w[j] += a * gens_[g][j];
            if (ok) return true;
        }
        coeffs[g] = 0;
        return false;
    }

    const std::vector<IndexVector>& gens_;
    std::size_t dim_;
    std::vector<std::vector<long>> suffix_;
    long bound_ = 0;
};

}  // namespace

std::optional<std::vector<long>> min_norm_representation(const std::vector<IndexVector>& gens,
                                                         const IndexVector& v, long cap)
{
    const std::size_t dim = v.size();
    for (const IndexVector& g : gens)
        if (g.size() != dim) throw std::invalid_argument("representation: generator dimension mismatch");
    if (!Lattice(static_cast<int>(dim), gens).contains(v)) return std::nullopt;
    RepresentationSearch search(gens, dim);
    std::vector<long> coeffs;
    for (long bound = 0; bound <= cap; ++bound)
        if (search.run(v, bound, coeffs)) return coeffs;
    return std::nullopt;
}

CoefficientBound coefficient_bound(int r, int k, const std::vector<IndexVector>& gens, long m, long cap)
{
    if (gens.empty()) throw std::invalid_argument("coefficient_bound needs a non-empty generator set");
    for (const IndexVector& g : gens)
        if (static_cast<int>(g.size()) != r || !is_k_vector(g, k))
            throw std::invalid_argument("coefficient_bound: generators must be k-vectors in Z^r");
    const Lattice l(r, gens);
    CoefficientBound out;
    IndexVector v(r, 0);
    RepresentationSearch search(gens, r);

    auto visit = [&](const IndexVector& vec) {
        if (!l.contains(vec)) return;
        ++out.vectors_checked;
        std::vector<long> coeffs;
        long bound = 0;
        while (bound <= cap && !search.run(vec, bound, coeffs)) ++bound;
        if (bound > cap) {
            out.cap_hit = true;
            bound = cap + 1;
        }
        if (out.witness.empty() || bound > out.value) {
            out.value = bound;
            out.witness = vec;
        }
    };

    // Nonnegative vectors with total t for each t in {0, k, 2k, ...} up to m.
    for (long total = 0; total <= m; total += k) {
        auto rec = [&](auto&& self, int coord, long left) -> void {
            if (coord == r - 1) {
                v[coord] = left;
                visit(v);
                return;
            }
            for (long x = 0; x <= left; ++x) {
                v[coord] = x;
                self(self, coord + 1, left - x);
            }
        };
        rec(rec, 0, total);
    }
    return out;
}

SolubilitySearch is_soluble(const Hypergraph& h, const Partition& p, const Lattice& l,
                            const VertexSet& u, long q)
{
    if (q < 0) throw std::invalid_argument("solubility budget q must be nonnegative");
    if (!h.searchable()) throw std::domain_error("solubility search supports at most 64 vertices");
    check_vertex_set(u, h.n());
    if (l.dim() != p.r()) throw std::invalid_argument("lattice dimension must equal the number of parts");

    const int r = p.r();
    std::vector<Mask> part_masks(r);
    for (int i = 1; i <= r; ++i) part_masks[i - 1] = to_mask(p.parts[i]);
    const Mask all = h.all_vertices();
    const Mask umask = to_mask(u);
    const std::size_t m = h.edge_count();

    SolubilitySearch out;
    out.size_bound = std::min<long>(static_cast<long>(u.size()) + q, h.n() / h.k());

    std::unordered_map<Mask, bool> leftover_cache;
    auto leftover_ok = [&](Mask covered) {
        const Mask left = all & ~covered;
        auto it = leftover_cache.find(left);
        if (it != leftover_cache.end()) return it->second;
        ++out.leftover_checks;
        IndexVector v(r);
        for (int i = 0; i < r; ++i) v[i] = popcount(left & part_masks[i]);
        const bool ok = l.contains(v);
        leftover_cache.emplace(left, ok);
        return ok;
    };

    struct Key {
        Mask covered;
        std::size_t start;
        long remaining;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const
        {
            return std::hash<Mask>()(k.covered) ^ (k.start * 0x9e3779b97f4a7c15ULL) ^
                   (static_cast<std::size_t>(k.remaining) << 58);
        }
    };
    std::unordered_set<Key, KeyHash> failed;
    std::vector<std::size_t> chosen;

    auto dfs = [&](auto&& self, Mask covered, std::size_t start, long remaining) -> bool {
        ++out.nodes;
        const Key key{covered, start, remaining};
        if (failed.count(key)) return false;
        bool found = false;
        const Mask open_u = umask & ~covered;
        if (open_u != 0) {
            if (remaining > 0) {
                for (std::size_t ei : h.incident(lowest_vertex(open_u))) {
                    const Mask em = h.edge_mask(ei);
                    if (em & covered) continue;
                    chosen.push_back(ei);
                    if (self(self, covered | em, start, remaining - 1)) {
                        found = true;
                        break;
                    }
                    chosen.pop_back();
                }
            }
        } else if (remaining == 0) {
            found = leftover_ok(covered);
        } else {
            for (std::size_t ei = start; ei < m; ++ei) {
                const Mask em = h.edge_mask(ei);
                if (em & covered) continue;
                chosen.push_back(ei);
                if (self(self, covered | em, ei + 1, remaining - 1)) {
                    found = true;
                    break;
                }
                chosen.pop_back();
            }
        }
        if (!found) failed.insert(key);
        return found;
    };

    for (long size = 0; size <= out.size_bound; ++size) {
        chosen.clear();
        if (dfs(dfs, 0, 0, size)) {
            Matching mm;
            for (std::size_t ei : chosen) mm.edges.push_back(h.edge(ei));
            mm.canonicalize();
            out.solution = std::move(mm);
            return out;
        }
    }
    out.exhausted = true;
    return out;
}

std::optional<std::vector<std::size_t>> find_residue_subset(const CosetGroup& q,
                                                            const std::vector<IndexVector>& vectors,
                                                            const std::vector<BigInt>& target)
{
    if (!q.finite()) throw std::invalid_argument("residue subset search needs a finite coset group");
    std::map<std::vector<BigInt>, std::vector<std::size_t>> best;
    best.emplace(std::vector<BigInt>(q.dim(), 0), std::vector<std::size_t>{});
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const std::vector<BigInt> ri = q.residue(vectors[i]);
        const auto snapshot = best;
        for (const auto& [res, picks] : snapshot) {
            std::vector<BigInt> next = q.add(res, ri);
            auto it = best.find(next);
            if (it == best.end() || it->second.size() > picks.size() + 1) {
                std::vector<std::size_t> np = picks;
                np.push_back(i);
                best[std::move(next)] = std::move(np);
            }
        }
    }
    auto it = best.find(target);
    if (it == best.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<int, int>> pair_removal_queries(const Lattice& l, const IndexVector& index_u)
{
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= l.dim(); ++i)
        for (int j = i; j <= l.dim(); ++j) {
            IndexVector v = index_u;
            --v[i - 1];
            --v[j - 1];
            if (l.contains(v)) out.emplace_back(i, j);
        }
    return out;
}

std::vector<int> single_removal_queries(const Lattice& l, const IndexVector& index_u)
{
    std::vector<int> out;
    for (int i = 1; i <= l.dim(); ++i) {
        IndexVector v = index_u;
        --v[i - 1];
        if (l.contains(v)) out.push_back(i);
    }
    return out;
}

}  // namespace hypermatch
