#pragma once

#include "bap/graph.hpp"

namespace bap {

/// Maximum-cardinality matching inside `filter`, found by repeated
/// augmentation. Deterministic: free agents are scanned in ascending index
/// and tasks in ascending index. Serves as the ground-truth matcher the
/// solver is checked against.
Matching mcm_oracle(const WeightedBipartiteGraph& g, const EdgeSet& filter);

/// True iff an augmenting path relative to `matching` exists within `filter`.
bool has_augmenting_path(const WeightedBipartiteGraph& g, const EdgeSet& filter,
                         const Matching& matching);

/// Exhaustive minimiser of the bottleneck objective over all
/// maximum-cardinality matchings. Test oracle only: refuses n > 9.
std::pair<Matching, double> brute_force_bottleneck(const WeightedBipartiteGraph& g);

/// Agents reachable from `root_task` by some alternating path relative to
/// `matching` using only edges in `filter`. Exhaustive simple-path
/// enumeration; intended for small instances.
std::vector<int> agents_alternating_reachable(const WeightedBipartiteGraph& g,
                                              const EdgeSet& filter,
                                              const Matching& matching,
                                              int root_task);

}  // namespace bap
