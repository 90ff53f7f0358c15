#include "hypermatch/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hypermatch {

Hypergraph::Hypergraph(int n, int k, std::vector<Edge> edges) : n_(n), k_(k)
{
    if (k < 2) throw std::invalid_argument("uniformity k must be at least 2");
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    for (Edge& e : edges) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("edge does not have exactly k vertices");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n)
                throw std::invalid_argument("edge vertex " + std::to_string(e[i]) + " out of range");
            if (i > 0 && e[i] == e[i - 1])
                throw std::invalid_argument("edge repeats a vertex");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    if (searchable()) {
        masks_.reserve(edges_.size());
        incident_.assign(n_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            masks_.push_back(to_mask(edges_[i]));
            for (Vertex v : edges_[i]) incident_[v].push_back(i);
        }
        sorted_masks_ = masks_;
        std::sort(sorted_masks_.begin(), sorted_masks_.end());
    }
}

Hypergraph Hypergraph::complete(int n, int k)
{
    std::vector<Edge> edges;
    for_each_subset(iota_set(0, n), k, [&](const VertexSet& s) {
        edges.push_back(s);
        return true;
    });
    return Hypergraph(n, k, std::move(edges));
}

bool Hypergraph::has_edge(const Edge& sorted_edge) const
{
    return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
}

bool Hypergraph::has_edge_mask(Mask m) const
{
    require_searchable();
    return std::binary_search(sorted_masks_.begin(), sorted_masks_.end(), m);
}

Mask Hypergraph::all_vertices() const
{
    require_searchable();
    return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
}

std::uint64_t Hypergraph::fingerprint() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(n_));
    mix(static_cast<std::uint64_t>(k_));
    mix(edges_.size());
    for (const Edge& e : edges_)
        for (Vertex v : e) mix(static_cast<std::uint64_t>(v));
    return h;
}

void Hypergraph::require_searchable() const
{
    if (!searchable())
        throw std::domain_error("exhaustive search supports at most 64 vertices");
}

VertexSet Matching::covered() const
{
    VertexSet out;
    for (const Edge& e : edges) out.insert(out.end(), e.begin(), e.end());
    std::sort(out.begin(), out.end());
    return out;
}

void Matching::canonicalize() { std::sort(edges.begin(), edges.end()); }

bool is_matching_of(const Hypergraph& h, const Matching& m)
{
    std::vector<char> used(h.n(), 0);
    for (const Edge& e : m.edges) {
        if (!std::is_sorted(e.begin(), e.end()) || !h.has_edge(e)) return false;
        for (Vertex v : e) {
            if (used[v]) return false;
            used[v] = 1;
        }
    }
    return true;
}

bool is_perfect_matching_of(const Hypergraph& h, const Matching& m)
{
    return is_matching_of(h, m) &&
           m.edges.size() * static_cast<std::size_t>(h.k()) == static_cast<std::size_t>(h.n());
}

std::size_t degree(const Hypergraph& h, const VertexSet& s)
{
    if (static_cast<int>(s.size()) > h.k())
        throw std::invalid_argument("degree: |S| exceeds k");
    check_vertex_set(s, h.n());
    std::size_t count = 0;
    for (const Edge& e : h.edges())
        if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++count;
    return count;
}

std::size_t min_l_degree(const Hypergraph& h, int l)
{
    if (l < 0 || l > h.k() - 1) throw std::invalid_argument("min_l_degree: l out of range");
    if (l == 0) return h.edge_count();
    std::map<VertexSet, std::size_t> counts;
    for (const Edge& e : h.edges())
        for_each_subset(e, l, [&](const VertexSet& s) {
            ++counts[s];
            return true;
        });
    if (binomial(h.n(), l) > counts.size()) return 0;
    std::size_t best = counts.begin()->second;
    for (const auto& [s, c] : counts) best = std::min(best, c);
    return best;
}

namespace {

class PerfectMatchingSearch {
public:
    explicit PerfectMatchingSearch(const Hypergraph& h) : h_(h) {}

    bool run(Mask remaining)
    {
        if (remaining == 0) return true;
        if (popcount(remaining) % h_.k() != 0) return false;
        if (failed_.count(remaining)) return false;
        const Vertex v = lowest_vertex(remaining);
        for (std::size_t ei : h_.incident(v)) {
            const Mask em = h_.edge_mask(ei);
            if ((em & ~remaining) != 0) continue;
            if (run(remaining & ~em)) {
                chosen_.push_back(ei);
                return true;
            }
        }
        failed_.insert(remaining);
        return false;
    }

    Matching matching() const
    {
        Matching m;
        for (auto it = chosen_.rbegin(); it != chosen_.rend(); ++it) m.edges.push_back(h_.edge(*it));
        return m;
    }

private:
    const Hypergraph& h_;
    std::unordered_set<Mask> failed_;
    std::vector<std::size_t> chosen_;
};

class MaxMatchingSearch {
public:
    explicit MaxMatchingSearch(const Hypergraph& h) : h_(h) {}

    void run(Mask remaining)
    {
        ceiling_ = static_cast<std::size_t>(popcount(remaining) / h_.k());
        dfs(remaining);
    }

    Matching matching() const
    {
        Matching m;
        for (std::size_t ei : best_) m.edges.push_back(h_.edge(ei));
        return m;
    }

private:
    void dfs(Mask remaining)
    {
        if (current_.size() > best_.size()) best_ = current_;
        if (best_.size() == ceiling_) return;
        if (remaining == 0) return;
        if (current_.size() + popcount(remaining) / h_.k() <= best_.size()) return;
        const Vertex v = lowest_vertex(remaining);
        for (std::size_t ei : h_.incident(v)) {
            const Mask em = h_.edge_mask(ei);
            if ((em & ~remaining) != 0) continue;
            current_.push_back(ei);
            dfs(remaining & ~em);
            current_.pop_back();
            if (best_.size() == ceiling_) return;
        }
        dfs(remaining & ~(Mask{1} << v));
    }

    const Hypergraph& h_;
    std::size_t ceiling_ = 0;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

void require_search(const Hypergraph& h)
{
    if (!h.searchable()) throw std::domain_error("exhaustive search supports at most 64 vertices");
}

}  // namespace

std::optional<Matching> perfect_matching_on(const Hypergraph& h, Mask vertices)
{
    require_search(h);
    if ((vertices & ~h.all_vertices()) != 0) throw std::invalid_argument("vertex mask out of range");
    PerfectMatchingSearch search(h);
    if (!search.run(vertices)) return std::nullopt;
    return search.matching();
}

bool has_perfect_matching_on(const Hypergraph& h, Mask vertices)
{
    require_search(h);
    PerfectMatchingSearch search(h);
    return search.run(vertices);
}

std::optional<Matching> perfect_matching_oracle(const Hypergraph& h)
{
    require_search(h);
    if (h.n() % h.k() != 0) return std::nullopt;
    return perfect_matching_on(h, h.all_vertices());
}

Matching max_matching_on(const Hypergraph& h, Mask vertices)
{
    require_search(h);
    MaxMatchingSearch search(h);
    search.run(vertices);
    return search.matching();
}

Matching max_matching(const Hypergraph& h) { return max_matching_on(h, h.all_vertices()); }

InducedSubgraph induced(const Hypergraph& h, const VertexSet& u)
{
    check_vertex_set(u, h.n());
    std::vector<int> relabel(h.n(), -1);
    for (std::size_t i = 0; i < u.size(); ++i) relabel[u[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        Edge mapped;
        mapped.reserve(e.size());
        for (Vertex v : e) {
            if (relabel[v] < 0) break;
            mapped.push_back(relabel[v]);
        }
        if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
    }
    return {Hypergraph(static_cast<int>(u.size()), h.k(), std::move(edges)), u};
}

Hypergraph read_hypergraph(std::istream& in)
{
    long k = 0, n = 0, m = 0;
    if (!(in >> k >> n >> m)) throw std::invalid_argument("hypergraph header must be 'k n m'");
    if (k < 2 || n < 0 || m < 0) throw std::invalid_argument("invalid hypergraph header values");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
        Edge e(static_cast<std::size_t>(k));
        for (long j = 0; j < k; ++j) {
            long v = 0;
            if (!(in >> v)) throw std::invalid_argument("truncated edge list");
            if (v < 0 || v >= n)
                throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
            e[static_cast<std::size_t>(j)] = static_cast<Vertex>(v);
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("edge repeats a vertex");
        edges.push_back(std::move(e));
    }
    std::string trailing;
    if (in >> trailing) throw std::invalid_argument("unexpected trailing data: " + trailing);
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate edge");
    return Hypergraph(static_cast<int>(n), static_cast<int>(k), std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& h)
{
    out << h.k() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
    for (const Edge& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

}  // namespace hypermatch
