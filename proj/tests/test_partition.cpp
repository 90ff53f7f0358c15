#include "oracles.hpp"

#include "hypermatch/instances.hpp"
#include "hypermatch/partition.hpp"
#include "hypermatch/reachability.hpp"

#include <doctest.h>

using namespace hypermatch;

TEST_CASE("partition structure checks")
{
    Partition p;
    p.parts = {{}, {0, 1, 2}, {3, 4, 5}};
    CHECK_NOTHROW(check_partition(p, 6));
    CHECK(p.labels(6) == std::vector<int>{1, 1, 1, 2, 2, 2});
    CHECK(p.closed_union() == iota_set(0, 6));
    CHECK_THROWS_AS(check_partition(p, 7), std::invalid_argument);
    p.parts[2] = {2, 3, 4, 5};
    CHECK_THROWS_AS(check_partition(p, 6), std::invalid_argument);
    p.parts = {{}, {0, 1, 2}, {}};
    CHECK_THROWS_AS(check_partition(p, 3), std::invalid_argument);
}

TEST_CASE("parameter validation")
{
    const PipelineParams p = default_params(3, 2);
    CHECK(p.delta == Rational(1, 3));
    CHECK(p.c() == 3);
    CHECK_NOTHROW(validate(p));
    PipelineParams bad = p;
    bad.mu = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = p;
    bad.alpha = Rational(3, 2);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("pruning removes an isolated vertex together with nothing else")
{
    // K6 on {0..5} plus an isolated vertex 6.
    const Hypergraph h(7, 3, Hypergraph::complete(6, 3).edges());
    const PruneResult r = prune_low_reachability(h, Rational(1, 10), Rational(1, 2));
    CHECK(r.pivots == std::vector<Vertex>{6});
    CHECK(r.removed == std::vector<VertexSet>{{6}});
    CHECK(r.survivors == iota_set(0, 6));

    const PruneResult none = prune_low_reachability(Hypergraph::complete(6, 3), Rational(1, 10), Rational(1, 2));
    CHECK(none.removed.empty());
    CHECK(none.survivors == iota_set(0, 6));

    const PruneResult all = prune_low_reachability(Hypergraph::edgeless(5, 3), Rational(1, 10), Rational(1, 2));
    CHECK(all.survivors.empty());
    CHECK(all.removed == std::vector<VertexSet>{{0}, {1}, {2}, {3}, {4}});
}

TEST_CASE("pruning postcondition holds on random instances")
{
    const ReachabilityParams rp{Rational(1, 10), 1};
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Hypergraph h = random_kgraph(9, 3, Rational(1, 2), seed);
        const PruneResult r = prune_low_reachability(h, rp.beta, Rational(1, 4));
        for (int v : r.survivors)
            CHECK(Rational(reachable_neighborhood(h, v, rp, r.survivors).size()) >= Rational(9, 4));
        VertexSet cover = r.survivors;
        for (const auto& a : r.removed) cover = set_union(cover, a);
        CHECK(cover == iota_set(0, 9));
    }
}

TEST_CASE("closed parts of the space barrier are X and Y")
{
    const Hypergraph sb = space_barrier(6, 3);
    const ClosedParts cp = closed_partition(sb, iota_set(0, 6), default_params(3, 2));
    CHECK(cp.parts == std::vector<VertexSet>{{0, 1, 2}, {3, 4, 5}});
    CHECK(closed_partition(Hypergraph::complete(6, 3), iota_set(0, 6), default_params(3, 2)).parts ==
          std::vector<VertexSet>{iota_set(0, 6)});
    CHECK(closed_partition(sb, {}, default_params(3, 2)).parts.empty());

    const Hypergraph two = lattice_barrier({6, 6}, 3, {{3, 0}, {0, 3}});
    CHECK(closed_partition(two, iota_set(0, 12), default_params(3, 2)).parts ==
          std::vector<VertexSet>{iota_set(0, 6), iota_set(6, 12)});
}

TEST_CASE("leftover classification by (k-1)-vectors")
{
    // Vertex 6 joined to every pair inside X = {0,1,2} and to nothing else.
    std::vector<Edge> edges = space_barrier(6, 3).edges();
    for (const auto& pair : subsets_of_size({0, 1, 2}, 2)) edges.push_back({pair[0], pair[1], 6});
    const Hypergraph h(7, 3, edges);
    const ClusterMap m = classify_leftover(h, {{0, 1, 2}, {3, 4, 5}}, {6}, Rational(1, 1000));
    REQUIRE(m.size() == 1);
    CHECK(m.begin()->first == std::vector<IndexVector>{{2, 0}});
    CHECK(m.begin()->second == VertexSet{6});

    // K7 seen from {0..5}: vertex 6 lies in binom(6,2) edges, all with vector (2).
    const ClusterMap k7 = classify_leftover(Hypergraph::complete(7, 3), {iota_set(0, 6)}, {6}, Rational(1, 1000));
    REQUIRE(k7.size() == 1);
    CHECK(k7.begin()->first == std::vector<IndexVector>{{2}});
    CHECK(classify_leftover(Hypergraph::complete(7, 3), {iota_set(0, 6)}, {}, Rational(1, 1000)).empty());

    const ClusterMap empty = classify_leftover(Hypergraph::edgeless(7, 3), {{0, 1, 2}, {3, 4, 5}}, {6},
                                               Rational(1, 1000));
    REQUIRE(empty.size() == 1);
    CHECK(empty.begin()->first.empty());
}

TEST_CASE("full partition build and contract on small instances")
{
    const PipelineParams p = default_params(3, 2);
    const PartitionBuild sb = build_partition(space_barrier(6, 3), p);
    CHECK(sb.partition.parts == std::vector<VertexSet>{{}, {0, 1, 2}, {3, 4, 5}});
    CHECK(sb.partition.s == 0);
    CHECK(validate_partition(space_barrier(6, 3), sb.partition, p).all());

    const Hypergraph k9 = Hypergraph::complete(9, 3);
    const PartitionBuild kb = build_partition(k9, p);
    CHECK_NOTHROW(check_partition(kb.partition, 9));
    CHECK(kb.partition.exceptional().empty());
    CHECK(validate_partition(k9, kb.partition, p).all());
}

TEST_CASE("partition build examples")
{
    const PipelineParams p = default_params(3, 2);
    CHECK(build_partition(Hypergraph::complete(6, 3), p).partition.parts ==
          std::vector<VertexSet>{{}, iota_set(0, 6)});

    const Hypergraph iso(7, 3, Hypergraph::complete(6, 3).edges());
    const PartitionBuild b = build_partition(iso, p);
    CHECK(b.partition.parts == std::vector<VertexSet>{{6}, iota_set(0, 6)});
    CHECK(b.partition.s == 0);
    CHECK(b.empty_cluster_flagged);

    const Hypergraph two = lattice_barrier({6, 6}, 3, {{3, 0}, {0, 3}});
    const PartitionBuild t = build_partition(two, p);
    CHECK(t.partition.parts == std::vector<VertexSet>{{}, iota_set(0, 6), iota_set(6, 12)});
    CHECK(t.partition.s == 0);
    CHECK(build_partition(two, p).partition == t.partition);
}

TEST_CASE("partition contract rejects bad hand-built partitions")
{
    const Hypergraph k6 = Hypergraph::complete(6, 3);
    PipelineParams p = default_params(3, 2);
    p.delta_prime = Rational(1, 2);
    Partition lone;
    lone.parts = {{}, {0}, {1, 2, 3, 4, 5}};
    const PartitionReport small = validate_partition(k6, lone, p);
    CHECK_FALSE(small.items[4].pass);

    // V_1 = {5} with s = 1, but vertex 5 takes part in no edge.
    const Hypergraph h(6, 3, Hypergraph::complete(5, 3).edges());
    Partition robust;
    robust.parts = {{}, {5}, {0, 1, 2, 3, 4}};
    robust.s = 1;
    CHECK_FALSE(validate_partition(h, robust, p).items[3].pass);

    Partition bad;
    bad.parts = {{}, iota_set(0, 6)};
    CHECK_FALSE(validate_partition(space_barrier(6, 3), bad, default_params(3, 2)).all());
}

TEST_CASE("formula constants")
{
    const FormulaConstants f = formula_constants(3, 3, 12);
    // binom(c+k-2, k-1) = binom(4, 2) and binom(c+k-2, c-1) = binom(4, 2).
    CHECK(f.binom_statement == 6);
    CHECK(f.binom_proof == 6);
    const FormulaConstants g = formula_constants(4, 2, 12);
    CHECK(g.binom_statement == 4);
    CHECK(g.binom_proof == 4);
    const FormulaConstants h = formula_constants(5, 2, 12);
    CHECK(h.binom_statement == 5);
    CHECK(h.binom_proof == 5);
    const FormulaConstants d = formula_constants(3, 4, 12);
    CHECK(d.binom_statement == 10);
    CHECK(d.binom_proof == 10);
}
