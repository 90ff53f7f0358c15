#include "oracles.hpp"

#include "hypermatch/instances.hpp"
#include "hypermatch/lattice.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace hypermatch;

namespace {

Partition two_parts(const VertexSet& a, const VertexSet& b)
{
    Partition p;
    p.parts = {{}, a, b};
    return p;
}

}  // namespace

TEST_CASE("index vectors")
{
    Partition p;
    p.parts = {{0}, {1, 2}, {3, 4, 5}};
    CHECK(index_vector(p, {0, 1, 3}) == IndexVector{1, 1});
    CHECK(index_vector(p, {}) == IndexVector{0, 0});
    CHECK(index_vector(p, iota_set(0, 6)) == IndexVector{2, 3});
    CHECK(index_vector(p.labels(6), 2, {2, 4, 5}) == IndexVector{1, 2});
    CHECK(is_k_vector({1, 2}, 3));
    CHECK_FALSE(is_k_vector({1, 1}, 3));
    CHECK_FALSE(is_k_vector({-1, 4}, 3));
    CHECK(unit_vector(3, 2) == IndexVector{0, 1, 0});
}

TEST_CASE("robust vectors")
{
    Partition one;
    one.parts = {{}, iota_set(0, 6)};
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    CHECK(robust_vectors(k6, one, Rational(1, 1000)).all() == std::vector<IndexVector>{{3}});
    CHECK(robust_vectors(k6, one, Rational(1)).all().empty());
    CHECK(robust_vectors(k6, one, Rational(1, 1000)).type2.empty());

    const RobustVectors sb = robust_vectors(space_barrier(6, 3), two_parts({0, 1, 2}, {3, 4, 5}), Rational(1, 1000));
    CHECK(sb.all() == std::vector<IndexVector>{{1, 2}, {3, 0}});
    CHECK(sb.contains({1, 2}));
    CHECK_FALSE(sb.contains({2, 1}));

    // V_1 = {6} is a small cluster joined to every pair of {0..5}.
    std::vector<Edge> edges = k6.edges();
    for (const auto& pair : subsets_of_size(iota_set(0, 6), 2)) edges.push_back({pair[0], pair[1], 6});
    Partition cl;
    cl.parts = {{}, {6}, iota_set(0, 6)};
    cl.s = 1;
    const RobustVectors rv = robust_vectors(Hypergraph(7, 3, edges), cl, Rational(1, 1000));
    CHECK(rv.type1 == std::vector<IndexVector>{{0, 3}});
    CHECK(rv.type2 == std::vector<IndexVector>{{1, 2}});
}

TEST_CASE("lattice membership examples")
{
    const Lattice a(2, {{3, 0}, {0, 3}});
    CHECK(a.contains(IndexVector{3, 3}));
    CHECK_FALSE(a.contains(IndexVector{1, 2}));
    CHECK(Lattice(2, {{1, 2}, {2, 1}}).contains(IndexVector{-1, 1}));
    const Lattice zero(2, {});
    CHECK(zero.contains(IndexVector{0, 0}));
    CHECK_FALSE(zero.contains(IndexVector{3, 0}));
    CHECK(Lattice(2, {{1, 2}, {3, 0}}).basis() ==
          std::vector<std::vector<BigInt>>{{1, 2}, {0, 6}});
    CHECK(Lattice(2, {{3, 0}, {1, 2}}) == Lattice(2, {{1, 2}, {4, 2}}));
}

TEST_CASE("lmax")
{
    CHECK(lmax(1, 3).contains(IndexVector{6}));
    CHECK_FALSE(lmax(1, 3).contains(IndexVector{4}));
    CHECK(lmax(2, 3).contains(IndexVector{1, 2}));
    CHECK_FALSE(lmax(2, 3).contains(IndexVector{1, 1}));
    for (int r = 1; r <= 5; ++r)
        for (int k = 2; k <= 5; ++k) CHECK(*lmax(r, k).index_in_ambient() == k);
}

TEST_CASE("coset groups and residues")
{
    const CosetGroup full(lmax(3, 3), 3);
    CHECK(full.order() == BigInt(1));

    const CosetGroup q(Lattice(2, {{3, 0}, {0, 3}}), 3);
    REQUIRE(q.finite());
    CHECK(*q.order() == 3);
    const auto r0 = q.residue({0, 0});
    const auto r12 = q.residue({1, 2});
    const auto r21 = q.residue({2, 1});
    CHECK(q.is_identity(r0));
    CHECK(std::set<std::vector<BigInt>>{r0, r12, r21}.size() == 3);
    CHECK(q.is_identity(q.add(r12, r21)));
    CHECK(q.negate(r12) == r21);
    CHECK(q.is_identity(q.residue({6, -3})));
    CHECK_THROWS_AS(q.residue({1, 1}), std::invalid_argument);

    const CosetGroup inf(Lattice(2, {{3, 0}}), 3);
    CHECK_FALSE(inf.finite());
    CHECK_FALSE(inf.order());
    CHECK_THROWS_AS(CosetGroup(Lattice(2, {{1, 1}}), 3), std::invalid_argument);

    const CosetGroup sb(Lattice(2, {{1, 2}, {3, 0}}), 3);
    CHECK(sb.invariant_factors() == std::vector<BigInt>{1, 2});
    CHECK(*sb.order() == 2);
}

TEST_CASE("lattice algebra agrees with bounded brute force")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const int r = 1 + trial % 3;
        const int ngens = 1 + trial % 2;
        std::vector<IndexVector> gens(ngens, IndexVector(r));
        for (auto& g : gens)
            for (auto& x : g) x = coef(rng);
        const Lattice l(r, gens);
        // Targets built from small combinations lie in L; random targets usually do not.
        for (int t = 0; t < 6; ++t) {
            IndexVector v(r);
            if (t % 2 == 0) {
                for (const auto& g : gens) {
                    const long a = coef(rng) % 3;
                    for (int i = 0; i < r; ++i) v[i] += a * g[i];
                }
                CHECK(l.contains(v));
            } else {
                for (auto& x : v) x = coef(rng);
                // Only a positive brute-force answer is conclusive at a finite bound.
                if (oracle::combination(gens, v, 12)) CHECK(l.contains(v));
            }
        }
    }
}

TEST_CASE("transferrals and merging")
{
    CHECK(has_transferral(Lattice(2, {{1, 2}, {2, 1}}), 1, 2));
    CHECK(has_transferral(Lattice(2, {{1, 2}, {2, 1}}), 2, 1));
    CHECK_FALSE(has_transferral(Lattice(2, {{3, 0}, {0, 3}}), 1, 2));
    CHECK_FALSE(has_transferral(Lattice(2, {}), 1, 2));

    const Hypergraph k12 = Hypergraph::complete(12, 3);
    const MergeResult m = merge_transferral_parts(k12, two_parts(iota_set(0, 6), iota_set(6, 12)), Rational(1, 1000));
    CHECK(m.partition.parts == std::vector<VertexSet>{{}, iota_set(0, 12)});
    REQUIRE(m.merges.size() == 1);
    CHECK(m.merges[0].i == 1);
    CHECK(m.merges[0].j == 2);

    const Hypergraph two = lattice_barrier({6, 6}, 3, {{3, 0}, {0, 3}});
    const Partition split = two_parts(iota_set(0, 6), iota_set(6, 12));
    CHECK(merge_transferral_parts(two, split, Rational(1, 1000)).merges.empty());

    Partition one;
    one.parts = {{}, iota_set(0, 12)};
    CHECK(merge_transferral_parts(k12, one, Rational(1, 1000)).partition == one);
}

TEST_CASE("minimal representations and the coefficient bound")
{
    CHECK(*min_norm_representation({{3, 0}, {0, 3}}, {3, 3}, 5) == std::vector<long>{1, 1});
    CHECK(*min_norm_representation({{1, 2}, {2, 1}}, {0, 3}, 5) == std::vector<long>{2, -1});
    CHECK_FALSE(min_norm_representation({{3, 0}, {0, 3}}, {1, 2}, 5));
    CHECK_FALSE(min_norm_representation({{3}}, {30}, 5));

    const CoefficientBound one = coefficient_bound(1, 3, {{3}}, 6, 12);
    CHECK(one.value == 2);
    CHECK(one.witness == IndexVector{6});
    CHECK_FALSE(one.cap_hit);

    std::vector<IndexVector> all;
    for (long i = 0; i <= 3; ++i) all.push_back({i, 3 - i});
    CHECK(coefficient_bound(2, 3, all, 3, 12).value == 1);
    CHECK(coefficient_bound(2, 3, {{1, 2}, {2, 1}}, 3, 12).value == 2);
    CHECK(coefficient_bound(1, 3, {{3}}, 30, 5).cap_hit);
}

TEST_CASE("solubility")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    Partition one;
    one.parts = {{}, iota_set(0, 6)};
    const Lattice l3(1, {{3}});
    const SolubilitySearch empty = is_soluble(k6, one, l3, {}, 1);
    REQUIRE(empty.solution);
    CHECK(empty.solution->empty());

    const SolubilitySearch cover = is_soluble(k6, one, l3, {0, 1, 2}, 0);
    REQUIRE(cover.solution);
    CHECK(cover.solution->edges == std::vector<Edge>{{0, 1, 2}});

    const Hypergraph sb = space_barrier(6, 3);
    const Partition xy = two_parts({0, 1, 2}, {3, 4, 5});
    const Lattice lsb(2, robust_vectors(sb, xy, Rational(1, 1000)).all());
    for (long q : {0L, 1L, 2L, 5L}) {
        const SolubilitySearch s = is_soluble(sb, xy, lsb, {}, q);
        CHECK_FALSE(s.solution);
        CHECK(s.exhausted);
    }
}

TEST_CASE("residue subsets")
{
    const CosetGroup q(Lattice(2, {{3, 0}, {0, 3}}), 3);
    const std::vector<IndexVector> vecs{{3, 0}, {1, 2}, {1, 2}, {2, 1}};
    const auto one = find_residue_subset(q, vecs, q.residue({2, 1}));
    REQUIRE(one);
    CHECK(*one == std::vector<std::size_t>{3});
    const auto pair = find_residue_subset(q, {{3, 0}, {1, 2}, {1, 2}}, q.residue({2, 1}));
    REQUIRE(pair);
    CHECK(*pair == std::vector<std::size_t>{1, 2});
    CHECK(find_residue_subset(q, {{3, 0}}, q.residue({0, 0}))->empty());
    CHECK_FALSE(find_residue_subset(q, {{3, 0}}, q.residue({1, 2})));
}

TEST_CASE("removal queries")
{
    const Lattice full = lmax(2, 3);
    CHECK(pair_removal_queries(full, {2, 0}) == std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}});
    CHECK(single_removal_queries(full, {2, 0}).empty());
    CHECK(single_removal_queries(full, {1, 0}) == std::vector<int>{1, 2});
    const Lattice split(2, {{3, 0}, {0, 3}});
    CHECK(single_removal_queries(split, {4, 0}) == std::vector<int>{1});
}

TEST_CASE("robust generators lie in lmax and residues form a homomorphism")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Hypergraph h = random_kgraph(9, 3, Rational(1, 2), seed);
        const Partition p = two_parts({0, 1, 2, 3}, {4, 5, 6, 7, 8});
        const auto gens = robust_vectors(h, p, Rational(1, 1000)).all();
        const Lattice l(2, gens);
        const Lattice big = lmax(2, 3);
        for (const auto& row : l.basis()) CHECK(big.contains(row));
        if (l.rank() < 2) continue;
        const CosetGroup q(l, 3);
        std::set<std::vector<BigInt>> seen;
        for (long a = 0; a <= 3; ++a) seen.insert(q.residue({a, 3 - a}));
        CHECK(BigInt(seen.size()) <= *q.order());
        CHECK(q.add(q.residue({1, 2}), q.residue({0, 3})) == q.residue({1, 5}));
    }
}

TEST_CASE("residue subsets match exhaustive subset search")
{
    const CosetGroup q(Lattice(2, {{3, 0}, {0, 6}}), 3);
    REQUIRE(*q.order() == 6);
    const std::vector<IndexVector> vecs{{2, 1}, {1, 2}, {0, 3}, {2, 1}, {3, 0}};
    for (long a = 0; a < 3; ++a)
        for (long b = 0; b < 6; ++b) {
            if ((a + b) % 3 != 0) continue;
            const auto target = q.residue({a, b});
            std::size_t best = SIZE_MAX;
            for (unsigned mask = 0; mask < (1u << vecs.size()); ++mask) {
                std::vector<BigInt> sum = q.residue({0, 0});
                for (std::size_t i = 0; i < vecs.size(); ++i)
                    if (mask >> i & 1) sum = q.add(sum, q.residue(vecs[i]));
                if (sum == target) best = std::min<std::size_t>(best, __builtin_popcount(mask));
            }
            const auto got = find_residue_subset(q, vecs, target);
            CHECK(got.has_value() == (best != SIZE_MAX));
            if (!got) continue;
            CHECK(got->size() == best);
            // Pigeonhole: a shortest subset never needs |Q| or more vectors.
            CHECK(got->size() < 6);
            std::vector<BigInt> sum = q.residue({0, 0});
            for (std::size_t i : *got) sum = q.add(sum, q.residue(vecs[i]));
            CHECK(sum == target);
        }
}
