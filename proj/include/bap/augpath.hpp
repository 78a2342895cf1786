#pragma once

#include "bap/graph.hpp"

namespace bap {

/// How the depth-first search picks among candidate agents.
enum class PickMode {
    greedy_min_weight,  // cheapest incident edge first, ties by agent index
    lowest_index,
};

/// Input of one augmenting-path search. `removed_edge` is the edge whose
/// removal freed the root task; `matching` no longer contains it and
/// `edges` excludes it. The root task is the unique free task.
struct SearchInput {
    const WeightedBipartiteGraph* graph = nullptr;
    Edge removed_edge;
    Matching matching;
    EdgeSet edges;

    int root_task() const { return removed_edge.task; }
    void validate() const;
};

struct SearchOutcome {
    Matching new_matching;
    bool found = false;
    std::vector<Edge> path;  // root-first augmenting path, empty on failure
    int iterations = 0;      // passes of the search loop
    /// Agents explored per loop pass. Backtracking and termination passes
    /// contribute 0; depth-first exploration passes contribute exactly 1.
    std::vector<int> explored_per_iteration;
    std::vector<int> explored_agents;  // in exploration order, free agent included
};

/// Depth-first search for an augmenting path from the root task. One agent
/// is explored per pass; dead ends backtrack through the matched partner.
/// Terminates within 2n-1 passes.
SearchOutcome aug_dfs(const SearchInput& input, PickMode mode);

/// Level-parallel breadth-first search. Each pass explores every unexplored
/// agent adjacent to the current task frontier, so the returned path is a
/// shortest augmenting path. Terminates within n passes.
SearchOutcome aug_bfs(const SearchInput& input);

/// Checks, by exhaustive alternating-path enumeration, that a completed
/// failed search explored every agent that is alternating-reachable from the
/// root. Small instances only.
bool verify_alternating_search(const SearchInput& input,
                               const std::vector<int>& explored_agents);

}  // namespace bap
