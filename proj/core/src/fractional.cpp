#include "hypermatch/fractional.hpp"

#include "hypermatch/simplex.hpp"

#include <stdexcept>

namespace hypermatch {

Rational FractionalMatching::size() const
{
    Rational total = 0;
    for (const Rational& w : weights) total += w;
    return total;
}

bool is_fractional_matching_of(const Hypergraph& h, const FractionalMatching& w)
{
    if (w.weights.size() != h.edge_count()) return false;
    std::vector<Rational> load(h.n());
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        if (w.weights[i] < 0 || w.weights[i] > 1) return false;
        for (Vertex v : h.edge(i)) load[v] += w.weights[i];
    }
    for (const Rational& l : load)
        if (l > 1) return false;
    return true;
}

FractionalResult max_fractional_matching(const Hypergraph& h)
{
    LinearProgram lp;
    lp.c.assign(h.edge_count(), Rational(1));
    lp.b.assign(h.n(), Rational(1));
    lp.a.assign(h.n(), std::vector<Rational>(h.edge_count()));
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        for (Vertex v : h.edge(i)) lp.a[v][i] = 1;

    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("fractional matching LP did not reach an optimum");
    FractionalResult out{sol.value, {std::move(sol.x)}};
    if (!is_fractional_matching_of(h, out.witness) || out.witness.size() != out.value)
        throw std::logic_error("fractional matching witness failed exact verification");
    return out;
}

bool has_perfect_fractional_matching(const Hypergraph& h)
{
    return max_fractional_matching(h).value == Rational(h.n(), h.k());
}

FractionalCover min_fractional_vertex_cover(const Hypergraph& h)
{
    // maximize -sum y  s.t.  -sum_{v in e} y_v <= -1.
    LinearProgram lp;
    lp.c.assign(h.n(), Rational(-1));
    lp.b.assign(h.edge_count(), Rational(-1));
    lp.a.assign(h.edge_count(), std::vector<Rational>(h.n()));
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        for (Vertex v : h.edge(i)) lp.a[i][v] = -1;

    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("fractional cover LP did not reach an optimum");
    return {-sol.value, std::move(sol.x)};
}

Rational conjectured_cstar(int k, int l)
{
    if (k < 2 || l < 1 || l > k - 1) throw std::invalid_argument("conjectured_cstar: need 1 <= l <= k-1");
    const Rational base(k - 1, k);
    Rational power = 1;
    for (int i = 0; i < k - l; ++i) power *= base;
    return 1 - power;
}

}  // namespace hypermatch
