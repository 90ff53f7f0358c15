#include "oracles.hpp"

#include "hypermatch/instances.hpp"
#include "hypermatch/reachability.hpp"

#include <doctest.h>

using namespace hypermatch;

namespace {

// Counts (depth*k - 1)-sets S of ambient - {u, v} with H[S+u], H[S+v] both
// perfectly matchable, using the subset DP table of the whole graph.
std::uint64_t brute_count(const Hypergraph& h, int u, int v, int depth, const VertexSet& ambient)
{
    const auto pm = oracle::pm_table(h);
    VertexSet pool;
    for (int x : ambient)
        if (x != u && x != v) pool.push_back(x);
    std::uint64_t c = 0;
    for (const auto& s : subsets_of_size(pool, depth * h.k() - 1)) {
        std::uint32_t m = 0;
        for (int x : s) m |= 1u << x;
        if (pm[m | (1u << u)] && pm[m | (1u << v)]) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("reachable counts in K6 and the space barrier")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    CHECK(reachable_count(k6, 0, 1, 1, iota_set(0, 6)) == 6);
    const Hypergraph sb = space_barrier(6, 3);
    // u, v in X: S must meet Y = {3,4,5} in exactly two vertices.
    CHECK(reachable_count(sb, 0, 1, 1, iota_set(0, 6)) == 3);
    // u in X, v in Y: S would need both an even and an odd Y count.
    CHECK(reachable_count(sb, 0, 3, 1, iota_set(0, 6)) == 0);
    CHECK_THROWS_AS(reachable_count(sb, 0, 0, 1, iota_set(0, 6)), std::invalid_argument);
    CHECK_THROWS_AS(reachable_count(sb, 0, 1, 1, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("reachable counts match the subset DP")
{
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Hypergraph h = random_kgraph(9, 3, Rational(1, 2), seed);
        const VertexSet all = iota_set(0, 9);
        for (int depth : {1, 2})
            for (auto [u, v] : {std::pair{0, 1}, std::pair{2, 7}, std::pair{4, 8}})
                CHECK(reachable_count(h, u, v, depth, all) == brute_count(h, u, v, depth, all));
        const VertexSet part = {0, 1, 3, 5, 6, 8};
        CHECK(reachable_count(h, 0, 5, 1, part) == brute_count(h, 0, 5, 1, part));
    }
}

TEST_CASE("threshold comparison is exact")
{
    const ReachabilityParams p{Rational(1, 6), 1};
    // 6 >= (1/6) * 6^2 holds with equality; 5 does not.
    CHECK(meets_reachability_threshold(6, p, 3, 6));
    CHECK_FALSE(meets_reachability_threshold(5, p, 3, 6));
    CHECK_THROWS_AS(validate(ReachabilityParams{Rational(-1), 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ReachabilityParams{Rational(1, 2), 0}), std::invalid_argument);
}

TEST_CASE("neighbourhoods and closedness")
{
    const ReachabilityParams p{Rational(1, 100), 1};
    const VertexSet all = iota_set(0, 6);
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    CHECK(reachable_neighborhood(k6, 0, p, all) == VertexSet{1, 2, 3, 4, 5});
    CHECK(is_closed(k6, all, p, all));

    const Hypergraph sb = space_barrier(6, 3);
    CHECK(reachable_neighborhood(sb, 0, p, all) == VertexSet{1, 2});
    CHECK(is_closed(sb, {0, 1, 2}, p, all));
    CHECK_FALSE(is_closed(sb, {0, 3}, p, all));
    CHECK(is_closed(sb, {4}, p, all));

    const ReachabilityTable t(sb, all, p);
    CHECK(t.count(0, 1) == 3);
    CHECK(t.neighborhood(3) == VertexSet{4, 5});
    CHECK(t.closed({3, 4, 5}));
    CHECK_FALSE(t.closed({2, 3}));
}

TEST_CASE("reachability examples and properties")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    const VertexSet all = iota_set(0, 6);
    CHECK(is_reachable(k6, 0, 1, {Rational(1, 10), 1}, all));
    CHECK_FALSE(is_reachable(k6, 0, 1, {Rational(1, 2), 1}, all));
    const Hypergraph none = Hypergraph::edgeless(6, 3);
    CHECK(reachable_count(none, 0, 1, 1, all) == 0);
    CHECK_FALSE(is_reachable(none, 0, 1, {Rational(1, 1000), 1}, all));
    CHECK(reachable_neighborhood(none, 0, {Rational(1, 10), 1}, all).empty());

    const Hypergraph two = lattice_barrier({3, 3}, 3, {{3, 0}, {0, 3}});
    CHECK_FALSE(is_closed(two, {0, 3}, {Rational(1, 1000), 1}, all));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Hypergraph h = random_kgraph(8, 3, Rational(1, 2), seed);
        const VertexSet amb = iota_set(0, 8);
        const VertexSet small = {0, 1, 2, 4, 6, 7};
        const ReachabilityParams p{Rational(1, 20), 1};
        for (int u = 0; u < 8; ++u)
            for (int v = u + 1; v < 8; ++v) {
                CHECK(reachable_count(h, u, v, 1, amb) == reachable_count(h, v, u, 1, amb));
                const bool in_u = std::binary_search(small.begin(), small.end(), u);
                const bool in_v = std::binary_search(small.begin(), small.end(), v);
                if (in_u && in_v) CHECK(reachable_count(h, u, v, 1, small) <= reachable_count(h, u, v, 1, amb));
                if (!is_reachable(h, u, v, p, amb)) CHECK_FALSE(is_reachable(h, u, v, {Rational(1, 10), 1}, amb));
            }
        for (int v = 0; v < 8; ++v)
            for (int u : reachable_neighborhood(h, v, p, amb)) {
                const VertexSet back = reachable_neighborhood(h, u, p, amb);
                CHECK(std::binary_search(back.begin(), back.end(), v));
            }
    }
}
