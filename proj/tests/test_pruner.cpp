#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bap/merge.hpp"
#include "bap/oracles.hpp"
#include "bap/pruner.hpp"
#include "fixtures.hpp"

using namespace bap;

TEST_CASE("greedy run on the rank instance") {
    auto g = fixtures::i1();
    auto [m, trace] = prune_bap(g, Matching::index_pairing(4, 4), Strategy::dfs_greedy);

    REQUIRE(trace.records.size() == 3);
    CHECK(trace.records[0].removed_edge == Edge{3, 3});
    CHECK(trace.records[0].bottleneck_weight == 16);
    CHECK(trace.records[0].surviving_edge_count == 15);
    CHECK(trace.records[0].search_iterations == 2);
    CHECK(trace.records[1].removed_edge == Edge{0, 0});
    CHECK(trace.records[1].bottleneck_weight == 13);
    CHECK(trace.records[1].surviving_edge_count == 12);
    CHECK(trace.records[1].search_iterations == 4);
    CHECK(trace.records[2].removed_edge == Edge{1, 0});
    CHECK(trace.records[2].bottleneck_weight == 6);
    CHECK(trace.records[2].surviving_edge_count == 5);
    CHECK_FALSE(trace.records[2].search_found);

    CHECK(m == Matching{{1, 0, 3, 2}});
    CHECK(trace.final_bottleneck_weight == 6);
    CHECK(trace.final_bottleneck_edge == Edge{1, 0});

    // the weight sequence never increases and the survivor count shrinks
    for (size_t k = 1; k < trace.records.size(); ++k) {
        CHECK(trace.records[k].bottleneck_weight <= trace.records[k - 1].bottleneck_weight);
        CHECK(trace.records[k].surviving_edge_count < trace.records[k - 1].surviving_edge_count);
    }

    auto csv = prune_trace_csv(trace);
    CHECK(csv.rfind("iteration,removed_agent,removed_task,weight,edges_left,found,search_iters\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("the final value does not depend on the strategy or the start") {
    auto g = fixtures::i1();
    for (Strategy s : {Strategy::dfs_greedy, Strategy::dfs_index, Strategy::bfs}) {
        auto [m, trace] = prune_bap(g, Matching::index_pairing(4, 4), s);
        CHECK(trace.final_bottleneck_weight == 6);
    }
    for (uint64_t seed = 0; seed < 60; ++seed) {
        int n = 2 + static_cast<int>(seed % 6);
        auto g2 = fixtures::random_uniform_graph(n, n, seed * 31 + 5);
        auto oracle = brute_force_bottleneck(g2);
        for (Strategy s : {Strategy::dfs_greedy, Strategy::dfs_index, Strategy::bfs}) {
            auto [m, trace] = prune_bap(g2, Matching::index_pairing(n, n), s);
            CHECK(trace.final_bottleneck_weight == oracle.second);
            // start from the oracle matching instead: same value again
            auto [m2, t2] = prune_bap(g2, oracle.first, s);
            CHECK(t2.final_bottleneck_weight == oracle.second);
            CHECK(static_cast<int>(trace.records.size()) <= n * n);
            CHECK(is_critical_bottleneck_edge(g2, m, trace.final_bottleneck_edge));
        }
    }
}

TEST_CASE("warm start from solved halves finishes in one pass") {
    fixtures::SplitI4 split;
    Matching warm = warm_start_from({split.m1, split.m2});
    CHECK(warm == Matching{{1, 0, 3, 2}});
    auto [m, trace] = prune_bap(split.graph, warm, Strategy::dfs_greedy);
    CHECK(trace.records.size() == 1);
    CHECK(m == warm);
    CHECK(trace.final_bottleneck_weight == 6);

    // a warm start never lands above the cold-start value
    auto [cold, cold_trace] = prune_bap(split.graph, Matching::index_pairing(4, 4),
                                        Strategy::dfs_greedy);
    CHECK(trace.final_bottleneck_weight == cold_trace.final_bottleneck_weight);
}

TEST_CASE("matching union rules") {
    CHECK(warm_start_from({Matching{{1, -1}}}) == Matching{{1, -1}});

    Matching a{{0, -1, -1}}, b{{-1, 1, -1}}, clash_task{{-1, 0, -1}}, clash_agent{{2, -1, -1}};
    CHECK(warm_start_from({a, b}) == Matching{{0, 1, -1}});
    CHECK_THROWS_AS(warm_start_from({a, clash_task}), std::invalid_argument);
    CHECK_THROWS_AS(warm_start_from({a, clash_agent}), std::invalid_argument);
    CHECK_THROWS_AS(warm_start_from({}), std::invalid_argument);
}

TEST_CASE("bad initial matchings are rejected") {
    auto g = fixtures::i1();
    Matching not_mcm = Matching::none(4);
    not_mcm.matched_task[0] = 0;
    CHECK_THROWS_AS(prune_bap(g, not_mcm, Strategy::bfs), std::invalid_argument);
    CHECK_THROWS_AS(prune_bap(g, Matching{{0, 0, 1, 2}}, Strategy::bfs), std::invalid_argument);
}

TEST_CASE("immediate termination when the start is already pinned") {
    // two agents, two tasks, one expensive edge that every full matching needs
    auto g = WeightedBipartiteGraph::complete({{1.0, 9.0}, {8.0, 7.0}});
    // full matchings: {(0,0),(1,1)} max 7 and {(0,1),(1,0)} max 9
    auto [m, trace] = prune_bap(g, Matching::index_pairing(2, 2), Strategy::dfs_greedy);
    CHECK(trace.records.size() == 1);
    CHECK(m == Matching::index_pairing(2, 2));
    CHECK(trace.final_bottleneck_weight == 7.0);
}
