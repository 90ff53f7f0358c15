#include "oracles.hpp"

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/instances.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace hypermatch;

TEST_CASE("constructor canonicalizes and rejects malformed edges")
{
    const Hypergraph h(5, 3, {{2, 1, 0}, {0, 1, 2}, {4, 3, 0}});
    CHECK(h.edge_count() == 2);
    CHECK(h.edge(0) == Edge{0, 1, 2});
    CHECK(h.edge(1) == Edge{0, 3, 4});
    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 1, {}), std::invalid_argument);
}

TEST_CASE("degree of a set")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    CHECK(degree(k6, {0, 1}) == 4);
    CHECK(degree(k6, k6.edge(7)) == 1);
    const Hypergraph sb = space_barrier(6, 3);
    CHECK(degree(sb, {3, 4}) == oracle::degree(sb, {3, 4}));
    CHECK(degree(sb, {3, 4}) == 3);
    CHECK_THROWS_AS(degree(k6, {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("minimum l-degree")
{
    CHECK(min_l_degree(Hypergraph::complete(7, 3), 1) == 15);
    CHECK(min_l_degree(Hypergraph::complete(7, 3), 2) == 5);
    CHECK(min_l_degree(Hypergraph::edgeless(6, 3), 2) == 0);
    const Hypergraph sb = space_barrier(6, 3);
    std::size_t brute = SIZE_MAX;
    for (const auto& s : subsets_of_size(iota_set(0, 6), 2)) brute = std::min(brute, oracle::degree(sb, s));
    CHECK(brute == 1);
    CHECK(min_l_degree(sb, 2) == 1);
    CHECK(min_l_degree(sb, 0) == sb.edge_count());
    CHECK_THROWS_AS(min_l_degree(sb, 3), std::invalid_argument);
}

TEST_CASE("perfect matching oracle")
{
    const auto m = perfect_matching_oracle(Hypergraph::complete(6, 3));
    REQUIRE(m);
    CHECK(m->size() == 2);
    CHECK(is_perfect_matching_of(Hypergraph::complete(6, 3), *m));
    CHECK_FALSE(perfect_matching_oracle(space_barrier(6, 3)));
    CHECK_FALSE(perfect_matching_oracle(Hypergraph::complete(7, 3)));
}

TEST_CASE("perfect matching oracle agrees with subset DP on random instances")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 6 + static_cast<int>(seed % 3) * 3;
        const Rational p(1 + static_cast<long>(seed % 5), 8);
        const Hypergraph h = random_kgraph(n, 3, p, seed);
        const auto m = perfect_matching_oracle(h);
        CHECK(m.has_value() == oracle::has_pm(h));
        if (m) CHECK(is_perfect_matching_of(h, *m));
    }
}

TEST_CASE("maximum matching")
{
    CHECK(max_matching(Hypergraph::edgeless(6, 3)).empty());
    CHECK(max_matching(space_barrier(6, 3)).size() == 1);
    CHECK(max_matching(Hypergraph::complete(9, 3)).size() == 3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Hypergraph h = random_kgraph(10, 3, Rational(1, 6), seed);
        const Matching m = max_matching(h);
        CHECK(is_matching_of(h, m));
        CHECK(static_cast<int>(m.size()) == oracle::max_matching_size(h));
    }
}

TEST_CASE("induced sub-hypergraph")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    CHECK(induced(k6, iota_set(0, 6)).graph == k6);
    CHECK(induced(k6, {0, 1, 2}).graph.edge_count() == 1);
    const auto sub = induced(space_barrier(6, 3), {0, 1, 2, 3});
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.graph.edge(0) == Edge{0, 1, 2});
    CHECK(sub.original == VertexSet{0, 1, 2, 3});
}

TEST_CASE("matching validity checks")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    CHECK(is_matching_of(k6, Matching{{{0, 1, 2}, {3, 4, 5}}}));
    CHECK_FALSE(is_matching_of(k6, Matching{{{0, 1, 2}, {2, 4, 5}}}));
    CHECK_FALSE(is_perfect_matching_of(k6, Matching{{{0, 1, 2}}}));
    CHECK_FALSE(is_matching_of(space_barrier(6, 3), Matching{{{0, 1, 3}}}));
}

TEST_CASE("text round trip and rejection of malformed input")
{
    const Hypergraph h = random_kgraph(9, 3, Rational(1, 3), 5);
    std::stringstream ss;
    write_hypergraph(ss, h);
    CHECK(read_hypergraph(ss) == h);

    std::istringstream dup("3 4 2\n0 1 2\n2 1 0\n");
    CHECK_THROWS_AS(read_hypergraph(dup), std::invalid_argument);
    std::istringstream range("3 4 1\n0 1 4\n");
    CHECK_THROWS_AS(read_hypergraph(range), std::invalid_argument);
    std::istringstream repeat("3 4 1\n0 1 1\n");
    CHECK_THROWS_AS(read_hypergraph(repeat), std::invalid_argument);
    std::istringstream count("3 4 2\n0 1 2\n");
    CHECK_THROWS_AS(read_hypergraph(count), std::invalid_argument);
}

TEST_CASE("fingerprint depends only on the canonical edge list")
{
    const Hypergraph a(6, 3, {{0, 1, 2}, {3, 4, 5}});
    const Hypergraph b(6, 3, {{5, 4, 3}, {2, 1, 0}});
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint() != Hypergraph(6, 3, {{0, 1, 2}}).fingerprint());
}

TEST_CASE("searches refuse more than 64 vertices")
{
    const Hypergraph big(65, 3, {{0, 1, 2}});
    CHECK_FALSE(big.searchable());
    CHECK_THROWS_AS(perfect_matching_oracle(big), std::domain_error);
}

TEST_CASE("degree monotonicity across l")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 7 + static_cast<int>(seed % 3);
        const int k = 3 + static_cast<int>(seed % 2);
        const Hypergraph h = random_kgraph(n, k, Rational(3, 4), seed);
        for (int lp = 1; lp < k; ++lp) {
            // x = delta_{l'} / binom(n - l', k - l'); then delta_l >= x binom(n - l, k - l).
            const Rational x(BigInt(min_l_degree(h, lp)), binomial(n - lp, k - lp));
            for (int l = 0; l <= lp; ++l)
                CHECK(Rational(BigInt(min_l_degree(h, l))) >= x * Rational(binomial(n - l, k - l)));
        }
    }
}

TEST_CASE("oracle and maximum matching agree and are deterministic")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Hypergraph h = random_kgraph(9, 3, Rational(1, 4), seed);
        const auto pm = perfect_matching_oracle(h);
        CHECK(pm.has_value() == (static_cast<int>(max_matching(h).size()) * 3 == 9));
        CHECK(perfect_matching_oracle(h) == pm);
        CHECK(max_matching(h) == max_matching(h));
    }
}
