#pragma once

#include "bap/graph.hpp"
#include "bap/sim.hpp"

namespace bap {

struct GreedyOutcome {
    Matching matching;
    double largest_weight = 0.0;
    long long time_steps = 0;
};

/// Distributed greedy baseline: one min-consensus round per task, each
/// committing the cheapest edge between a still-unassigned agent and task.
/// Matches every task in n rounds of diameter-many ticks each.
GreedyOutcome greedy_assign(const WeightedBipartiteGraph& g, const CommGraph& comm);

}  // namespace bap
