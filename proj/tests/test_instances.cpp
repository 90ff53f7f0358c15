#include "oracles.hpp"

#include "hypermatch/fractional.hpp"
#include "hypermatch/instances.hpp"

#include <doctest.h>

using namespace hypermatch;

TEST_CASE("space barrier on six vertices")
{
    const Hypergraph h = space_barrier(6, 3);
    const BarrierSpec spec = space_barrier_spec(6, 3);
    CHECK(spec.part_sizes == std::vector<int>{3, 3});
    // Enumerate all 20 triples: keep those meeting Y = {3,4,5} in 0 or 2 vertices.
    std::size_t expected = 0;
    for (const auto& e : subsets_of_size(iota_set(0, 6), 3)) {
        const auto y = std::count_if(e.begin(), e.end(), [](int v) { return v >= 3; });
        if (y % 2 == 0) {
            ++expected;
            CHECK(h.has_edge(e));
        }
    }
    CHECK(expected == 10);
    CHECK(h.edge_count() == 10);
    CHECK_FALSE(oracle::has_pm(h));
}

TEST_CASE("every matching of a space barrier covers an even number of Y vertices")
{
    for (int n : {6, 7, 9, 10}) {
        const Hypergraph h = space_barrier(n, 3);
        const int x = space_barrier_spec(n, 3).part_sizes[0];
        bool all_even = true;
        oracle::for_each_matching(h, [&](const std::vector<Edge>& m) {
            int y = 0;
            for (const auto& e : m)
                for (int v : e) y += v >= x;
            all_even = all_even && y % 2 == 0;
        });
        CHECK(all_even);
    }
}

TEST_CASE("cover barrier")
{
    const Hypergraph h = cover_barrier(9, 3);
    CHECK_FALSE(oracle::has_pm(h));
    for (const auto& e : h.edges()) CHECK(e.front() <= 1);
    CHECK(max_fractional_matching(h).value == 2);

    // W = {0}: a 2-set avoiding W lies in binom(4,1) - binom(3,1) = 1 edge.
    const Hypergraph c6 = cover_barrier(6, 3);
    CHECK(degree(c6, {2, 3}) == 1);
    CHECK(min_l_degree(c6, 2) == 1);
    CHECK_THROWS_AS(cover_barrier(7, 3), std::invalid_argument);
}

TEST_CASE("lattice barrier")
{
    const Hypergraph a = lattice_barrier({3, 3}, 3, {{3, 0}, {1, 2}});
    for (const auto& e : a.edges()) {
        const auto first = std::count_if(e.begin(), e.end(), [](int v) { return v < 3; });
        CHECK((first == 3 || first == 1));
    }
    CHECK(a.edge_count() == 1 + 3 * 3);

    std::vector<IndexVector> all;
    for (long i = 0; i <= 3; ++i) all.push_back({i, 3 - i});
    CHECK(lattice_barrier({3, 3}, 3, all) == Hypergraph::complete(6, 3));

    const Hypergraph two = lattice_barrier({3, 3}, 3, {{3, 0}, {0, 3}});
    CHECK(two.edge_count() == 2);
    CHECK(oracle::has_pm(two));
    CHECK_THROWS_AS(lattice_barrier({3, 3}, 3, {{2, 0}}), std::invalid_argument);
}

TEST_CASE("random k-graphs")
{
    CHECK(random_kgraph(7, 3, Rational(1), 3) == Hypergraph::complete(7, 3));
    CHECK(random_kgraph(7, 3, Rational(0), 3).edge_count() == 0);
    CHECK(random_kgraph(9, 3, Rational(1, 2), 7) == random_kgraph(9, 3, Rational(1, 2), 7));
    CHECK(random_kgraph(9, 3, Rational(1, 2), 7) != random_kgraph(9, 3, Rational(1, 2), 8));
    CHECK_THROWS_AS(random_kgraph(9, 3, Rational(3, 2), 1), std::invalid_argument);
}
