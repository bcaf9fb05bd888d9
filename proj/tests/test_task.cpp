#include <gtest/gtest.h>

#include <dagbound/task.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dagbound;

TEST(Normalize, ChainStaysUntouched) {
    const DagTask t = fixtures::chain({1, 2, 3});
    EXPECT_EQ(t.vertex_count(), 3);
    EXPECT_EQ(t.source, 0);
    EXPECT_EQ(t.sink, 2);
}

TEST(Normalize, Fig2aGetsBothDummies) {
    const DagTask t = fixtures::fig2a();
    EXPECT_EQ(t.vertex_count(), 6);
    EXPECT_EQ(t.source, 4);
    EXPECT_EQ(t.sink, 5);
    EXPECT_EQ(t.wcet[4], 0);
    EXPECT_EQ(t.wcet[5], 0);
    // dummy source feeds both former sources, dummy sink drains both sinks
    EXPECT_TRUE(std::count(t.edges.begin(), t.edges.end(), std::make_pair(4, 0)));
    EXPECT_TRUE(std::count(t.edges.begin(), t.edges.end(), std::make_pair(4, 2)));
    EXPECT_TRUE(std::count(t.edges.begin(), t.edges.end(), std::make_pair(1, 5)));
    EXPECT_TRUE(std::count(t.edges.begin(), t.edges.end(), std::make_pair(3, 5)));
}

TEST(Normalize, RejectsCycle) {
    EXPECT_THROW(validate_and_normalize("c", {1, 1}, {{0, 1}, {1, 0}}), CycleError);
}

TEST(Normalize, RejectsMalformedInput) {
    EXPECT_THROW(validate_and_normalize("m", {1, -2}, {}), MalformedInputError);
    EXPECT_THROW(validate_and_normalize("m", {1, 1}, {{0, 2}}), MalformedInputError);
    EXPECT_THROW(validate_and_normalize("m", {1, 1}, {{1, 1}}), MalformedInputError);
    EXPECT_THROW(validate_and_normalize("m", {}, {}), MalformedInputError);
}

TEST(Normalize, Idempotent) {
    SplitMix64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const DagTask t = oracles::random_small_task(rng);
        const DagTask again = validate_and_normalize(RawTask{t.name, t.wcet, t.edges});
        EXPECT_EQ(t, again);
    }
}

TEST(TopologicalOrder, ChainAndTieBreak) {
    EXPECT_EQ(topological_order(fixtures::chain({1, 2, 3})), (std::vector<int>{0, 1, 2}));
    // two parallel vertices under one source: source first, then ascending ids
    const DagTask t = validate_and_normalize("v", {1, 1, 1}, {{0, 1}, {0, 2}});
    EXPECT_EQ(topological_order(t), (std::vector<int>{0, 1, 2}));
}

TEST(TopologicalOrder, EdgesGoForward) {
    const DagTask t = fixtures::fig1();
    const std::vector<int> order = topological_order(t);
    EXPECT_EQ(order.front(), 0);
    EXPECT_EQ(order.back(), 5);
    std::vector<int> pos(t.vertex_count());
    for (int i = 0; i < t.vertex_count(); ++i) pos[order[i]] = i;
    for (const auto& [u, v] : t.edges) EXPECT_LT(pos[u], pos[v]);
}

TEST(Reach, ChainAncestors) {
    const DagTask t = fixtures::chain({1, 2, 3});
    const Reachability r = reachability(t);
    EXPECT_TRUE(r.is_ancestor(0, 2));
    EXPECT_TRUE(r.is_ancestor(1, 2));
    EXPECT_FALSE(r.is_ancestor(2, 0));
    EXPECT_FALSE(r.is_ancestor(2, 2));
}

TEST(Reach, Fig1AncestorsOfV4) {
    const Reachability r = reachability(fixtures::fig1());
    for (int u : {0, 1, 2}) EXPECT_TRUE(r.is_ancestor(u, 4));
    for (int u : {3, 4, 5}) EXPECT_FALSE(r.is_ancestor(u, 4));
}

TEST(Reach, Fig2aPairs) {
    const Reachability r = reachability(fixtures::fig2a());
    EXPECT_TRUE(r.is_ancestor(2, 3));
    EXPECT_FALSE(r.comparable(1, 3));
}

TEST(Reach, MatchesDfsOracle) {
    SplitMix64 rng(11);
    for (int i = 0; i < 40; ++i) {
        const DagTask t = oracles::random_small_task(rng);
        const Reachability r = reachability(t);
        for (int u = 0; u < t.vertex_count(); ++u)
            for (int v = 0; v < t.vertex_count(); ++v)
                EXPECT_EQ(r.is_ancestor(u, v), oracles::dfs_reaches(t, u, v));
    }
}

TEST(LongestPath, FixtureLengths) {
    EXPECT_EQ(longest_path_length(fixtures::fig1()), 60);
    EXPECT_EQ(longest_path_length(fixtures::fig3b()), 40);
    EXPECT_EQ(longest_path_length(fixtures::single_vertex(7)), 7);
}

TEST(LongestPath, MatchesEnumerationOracle) {
    SplitMix64 rng(13);
    for (int i = 0; i < 60; ++i) {
        const DagTask t = oracles::random_small_task(rng);
        EXPECT_EQ(longest_path_length(t), oracles::brute_longest_path(t));
    }
}

TEST(LongestPath, WitnessAndTieBreak) {
    EXPECT_EQ(longest_complete_path(fixtures::fig1()), (GeneralizedPath{0, 1, 4, 5}));
    // normalized fig3b: source dummy 5, sink dummy 6 around v0,v2,v4
    EXPECT_EQ(longest_complete_path(fixtures::fig3b()), (GeneralizedPath{5, 0, 2, 4, 6}));
    // two length-40 complete paths in fig2a; lexicographically smallest wins
    EXPECT_EQ(longest_complete_path(fixtures::fig2a()), (GeneralizedPath{4, 0, 1, 5}));
}

TEST(Volume, FixtureValues) {
    const DagTask t = fixtures::fig1();
    EXPECT_EQ(volume(t), 100);
    VertexSet u(t.vertex_count());
    u.insert(1);
    u.insert(2);
    EXPECT_EQ(volume_of(t, u), 40);
    EXPECT_EQ(volume_of(t, VertexSet(t.vertex_count())), 0);
}

TEST(Width, FixtureValues) {
    const DagTask c = fixtures::chain({1, 2, 3, 4});
    EXPECT_EQ(width(c, reachability(c)), 1);
    const DagTask a = fixtures::fig3a();
    EXPECT_EQ(width(a, reachability(a)), 4);
    const DagTask b = fixtures::fig3b();
    EXPECT_EQ(width(b, reachability(b)), 3);
}

TEST(Width, MatchesAntichainOracle) {
    SplitMix64 rng(17);
    for (int i = 0; i < 60; ++i) {
        const DagTask t = oracles::random_small_task(rng);
        const Reachability r = reachability(t);
        EXPECT_EQ(width(t, r), oracles::brute_max_antichain(t, r));
    }
}

TEST(PathListCheck, FixtureCases) {
    const DagTask f1 = fixtures::fig1();
    const Reachability r1 = reachability(f1);
    // (v2,v5) is not an edge but v2 is an ancestor of v5
    EXPECT_FALSE(check_generalized_path_list(f1, r1, {{0, 2, 5}}).has_value());

    const DagTask f2 = fixtures::fig2a();
    const Reachability r2 = reachability(f2);
    EXPECT_FALSE(check_generalized_path_list(f2, r2, {{0, 1}, {2, 3}}).has_value());

    const auto overlap = check_generalized_path_list(f2, r2, {{0, 1}, {1, 3}});
    ASSERT_TRUE(overlap.has_value());
    EXPECT_EQ(overlap->kind, ListViolation::Kind::Overlap);
    EXPECT_EQ(overlap->vertex_a, 1);

    const auto not_chain = check_generalized_path_list(f2, r2, {{0, 2}});
    ASSERT_TRUE(not_chain.has_value());
    EXPECT_EQ(not_chain->kind, ListViolation::Kind::NotAChain);

    EXPECT_TRUE(check_generalized_path_list(f2, r2, {{0}, {}}).has_value());
    EXPECT_TRUE(check_generalized_path_list(f2, r2, {{0, 99}}).has_value());
}

TEST(Invariants, LenAtMostVol) {
    SplitMix64 rng(19);
    for (int i = 0; i < 60; ++i) {
        const DagTask t = oracles::random_small_task(rng);
        EXPECT_LE(longest_path_length(t), volume(t));
    }
    // equality on a chain
    const DagTask c = fixtures::chain({3, 1, 4});
    EXPECT_EQ(longest_path_length(c), volume(c));
}

TEST(Invariants, AcceptedChainsNeverExceedLen) {
    SplitMix64 rng(23);
    for (int i = 0; i < 60; ++i) {
        const DagTask t = oracles::random_small_task(rng);
        const Reachability r = reachability(t);
        const auto list = oracles::random_path_list(t, r, rng, 3);
        if (check_generalized_path_list(t, r, list)) continue;
        for (const auto& p : list) EXPECT_LE(path_length(t, p), longest_path_length(t));
    }
}

TEST(WithWcets, ReplacesAndValidates) {
    const DagTask t = fixtures::fig3b();
    const DagTask v = with_wcets(t, {20, 21, 1, 10, 19, 0, 0});
    EXPECT_EQ(v.wcet[1], 21);
    EXPECT_EQ(v.edges, t.edges);
    EXPECT_THROW(with_wcets(t, {1, 2}), MalformedInputError);
    EXPECT_THROW(with_wcets(t, {20, -1, 1, 10, 19, 0, 0}), MalformedInputError);
}
