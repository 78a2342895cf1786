#pragma once

// Shared test instances. i1/i2/i3/i4 are small hand-checked graphs used as
// golden cases across the suites; the worst_* builders exercise the search
// pass bounds.

#include <cstdint>
#include <vector>

#include "bap/augpath.hpp"
#include "bap/graph.hpp"
#include "bap/instance.hpp"
#include "bap/sim.hpp"

namespace fixtures {

// 4x4 instance whose 16 weights are the ranks 1..16 of its edges ordered
// e24 e42 e43 e34 e12 e21 e13 e22 e33 e23 e14 e31 e11 e41 e32 e44.
inline bap::WeightedBipartiteGraph i1() {
    return bap::WeightedBipartiteGraph::complete({
        {13, 5, 7, 11},
        {6, 8, 10, 1},
        {12, 15, 9, 4},
        {14, 2, 3, 16},
    });
}

// 5 agents, 4 tasks, unit weights, ten edges. The identity matching on the
// first four agents is maximum; removing (0,0) frees task 0 and agents 0, 4.
inline bap::WeightedBipartiteGraph i2() {
    std::vector<std::vector<double>> w(5, std::vector<double>(4, 1.0));
    std::vector<std::vector<bool>> mask(5, std::vector<bool>(4, false));
    auto on = [&](int a, int t) { mask[a][t] = true; };
    on(0, 0); on(1, 1); on(2, 2); on(3, 3);  // matching edges
    on(1, 0); on(2, 0); on(3, 1); on(0, 2); on(4, 1); on(4, 3);
    return bap::WeightedBipartiteGraph::masked(w, mask);
}

inline bap::SearchInput i2_search_input(const bap::WeightedBipartiteGraph& g) {
    bap::SearchInput in;
    in.graph = &g;
    in.removed_edge = {0, 0};
    in.matching = bap::Matching{{-1, 1, 2, 3, -1}};
    in.edges = g.present;
    in.edges.erase(in.removed_edge);
    return in;
}

// 7x7 sparse instance forming two alternating trees joined by the heavy
// matched edge (0,0) of weight 20; edges (3,3) and (4,4) tie that weight.
inline bap::WeightedBipartiteGraph i3() {
    const double X = 1e9;  // absent
    std::vector<std::vector<double>> w(7, std::vector<double>(7, X));
    std::vector<std::vector<bool>> mask(7, std::vector<bool>(7, false));
    auto on = [&](int a, int t, double weight) {
        mask[a][t] = true;
        w[a][t] = weight;
    };
    on(0, 0, 20);
    on(1, 1, 3); on(2, 2, 7); on(3, 3, 20);
    on(4, 4, 20); on(5, 5, 19); on(6, 6, 5);
    on(1, 0, 2); on(2, 0, 5); on(3, 0, 11);
    on(0, 4, 13); on(0, 5, 17); on(0, 6, 5);
    return bap::WeightedBipartiteGraph::masked(w, mask);
}

inline bap::Matching i3_matching() { return bap::Matching{{0, 1, 2, 3, 4, 5, 6}}; }

// i1 split into its two diagonal 2x2 blocks, both solved.
struct SplitI4 {
    bap::WeightedBipartiteGraph graph = i1();
    std::vector<int> agents_1{0, 1}, tasks_1{0, 1};
    std::vector<int> agents_2{2, 3}, tasks_2{2, 3};
    bap::Matching m1{{1, 0, -1, -1}};  // weights 5 and 6
    bap::Matching m2{{-1, -1, 3, 2}};  // weights 4 and 3
    bap::Edge e1{1, 0};                // weight 6
    bap::Edge e2{2, 3};                // weight 4
};

// Two solved 3x3 and 2x2 blocks where all three merge conditions hold:
// the cheap cross edges (4,2) and (1,3) bridge into the heavier block's
// trees and block 2 carries a cheap matched-capped path between them.
struct MergeDemo {
    bap::WeightedBipartiteGraph graph = bap::WeightedBipartiteGraph::complete({
        {2.5, 1.1, 4.0, 5.0, 5.0},
        {4.0, 1.0, 4.0, 2.0, 5.0},
        {1.1, 4.0, 1.0, 5.0, 5.0},
        {5.0, 5.0, 5.0, 1.0, 1.2},
        {5.0, 5.0, 2.0, 4.0, 1.3},
    });
    std::vector<int> agents_1{0, 1, 2}, tasks_1{0, 1, 2};
    std::vector<int> agents_2{3, 4}, tasks_2{3, 4};
    bap::Matching m1{{0, 1, 2, -1, -1}};
    bap::Matching m2{{-1, -1, -1, 3, 4}};
    bap::Edge e1{0, 0};  // weight 2.5
    bap::Edge e2{4, 4};  // weight 1.3
};

// Star around the root task: every matched agent dead-ends immediately, so a
// depth-first search explores and backtracks through all of them before the
// free agent turns up. Takes exactly 2n-1 passes.
inline bap::WeightedBipartiteGraph worst_dfs_graph(int n) {
    const int m = n + 1;
    std::vector<std::vector<double>> w(m, std::vector<double>(n, 1.0));
    std::vector<std::vector<bool>> mask(m, std::vector<bool>(n, false));
    mask[0][0] = true;  // the edge whose removal frees the root
    for (int i = 1; i < n; ++i) {
        mask[i][0] = true;
        w[i][0] = i;
        mask[i][i] = true;
        w[i][i] = 0.5;
    }
    mask[n][0] = true;
    w[n][0] = 100.0;
    return bap::WeightedBipartiteGraph::masked(w, mask);
}

inline bap::SearchInput worst_dfs_input(const bap::WeightedBipartiteGraph& g) {
    bap::SearchInput in;
    in.graph = &g;
    in.removed_edge = {0, 0};
    in.matching = bap::Matching::none(g.m);
    for (int i = 1; i < g.n; ++i) in.matching.matched_task[i] = i;
    in.edges = g.present;
    in.edges.erase(in.removed_edge);
    return in;
}

// A single chain: each pass of the breadth-first search reaches one level,
// the free agent sits at depth n. Takes exactly n passes.
inline bap::WeightedBipartiteGraph worst_bfs_graph(int n) {
    const int m = n + 1;
    std::vector<std::vector<double>> w(m, std::vector<double>(n, 1.0));
    std::vector<std::vector<bool>> mask(m, std::vector<bool>(n, false));
    mask[0][0] = true;
    for (int i = 1; i < n; ++i) {
        mask[i][i - 1] = true;
        mask[i][i] = true;
    }
    mask[n][n - 1] = true;
    return bap::WeightedBipartiteGraph::masked(w, mask);
}

inline bap::SearchInput worst_bfs_input(const bap::WeightedBipartiteGraph& g) {
    return worst_dfs_input(g);  // same matching and removed edge layout
}

inline bap::WeightedBipartiteGraph random_uniform_graph(int m, int n, uint64_t seed) {
    bap::SplitMix64 rng(seed);
    std::vector<std::vector<double>> w(m, std::vector<double>(n));
    for (auto& row : w)
        for (double& x : row) x = rng.next_in(0.0, 100.0);
    return bap::WeightedBipartiteGraph::complete(w);
}

// Identity matching plus a random sprinkle of extra edges, with one matched
// edge removed: a valid search input that may or may not admit augmentation.
inline bap::SearchInput random_search_input(bap::WeightedBipartiteGraph& storage, int n,
                                            uint64_t seed) {
    bap::SplitMix64 rng(seed);
    std::vector<std::vector<double>> w(n, std::vector<double>(n));
    std::vector<std::vector<bool>> mask(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int t = 0; t < n; ++t) {
            w[a][t] = rng.next_in(0.0, 100.0);
            mask[a][t] = (a == t) || rng.next_unit() < 0.35;
        }
    storage = bap::WeightedBipartiteGraph::masked(w, mask);
    int removed_agent = static_cast<int>(rng.next() % n);
    bap::SearchInput in;
    in.graph = &storage;
    in.removed_edge = {removed_agent, removed_agent};
    in.matching = bap::Matching::index_pairing(n, n);
    in.matching.matched_task[removed_agent] = -1;
    in.edges = storage.present;
    in.edges.erase(in.removed_edge);
    return in;
}

inline bap::CommGraph random_connected_topology(int m, uint64_t seed) {
    bap::SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> links;
    for (int v = 1; v < m; ++v) links.emplace_back(v, static_cast<int>(rng.next() % v));
    for (int extra = 0; extra < m / 2; ++extra) {
        int a = static_cast<int>(rng.next() % m);
        int b = static_cast<int>(rng.next() % m);
        if (a != b) links.emplace_back(a, b);
    }
    return bap::CommGraph::from_links(m, links);
}

// Independent shortest augmenting path length by exhaustive alternating
// walks from the root task; -1 when none exists.
inline int shortest_augmenting_path_oracle(const bap::WeightedBipartiteGraph& g,
                                           const bap::EdgeSet& edges,
                                           const bap::Matching& matching, int root_task) {
    int best = -1;
    std::vector<char> agent_used(g.m, 0), task_used(g.n, 0);
    auto walk = [&](auto&& self, int task, int length) -> void {
        for (int a = 0; a < g.m; ++a) {
            if (agent_used[a] || !edges.contains(a, task) || matching.contains({a, task}))
                continue;
            if (!matching.is_matched(a)) {
                if (best < 0 || length + 1 < best) best = length + 1;
                continue;
            }
            int next = matching.task_of(a);
            if (task_used[next] || !edges.contains(a, next)) continue;
            agent_used[a] = 1;
            task_used[next] = 1;
            self(self, next, length + 2);
            agent_used[a] = 0;
            task_used[next] = 0;
        }
    };
    task_used[root_task] = 1;
    walk(walk, root_task, 0);
    return best;
}

}  // namespace fixtures
