#include "bap/greedy.hpp"

#include <algorithm>
#include <stdexcept>

namespace bap {

GreedyOutcome greedy_assign(const WeightedBipartiteGraph& g, const CommGraph& comm) {
    g.validate();
    if (g.m < g.n) throw std::invalid_argument("greedy assignment needs m >= n");
    if (comm.agent_count != g.m)
        throw std::invalid_argument("communication graph must cover every agent");

    GreedyOutcome out;
    out.matching = Matching::none(g.m);
    std::vector<char> task_done(g.n, 0);
    for (int round = 0; round < g.n; ++round) {
        std::vector<std::optional<ConsensusValue>> proposals(g.m);
        for (int a = 0; a < g.m; ++a) {
            if (out.matching.matched_task[a] >= 0) continue;
            std::optional<ConsensusValue> local;
            for (int t = 0; t < g.n; ++t) {
                if (task_done[t] || !g.present.contains(a, t)) continue;
                ConsensusValue v{{a, t}, g.weight(a, t)};
                if (!local || v.weight < local->weight) local = v;
            }
            proposals[a] = local;
        }
        bool any = std::any_of(proposals.begin(), proposals.end(),
                               [](const auto& p) { return p.has_value(); });
        if (!any) break;  // masked instance ran out of edges
        auto [edge, weight] = min_consensus(comm, proposals);
        out.time_steps += comm.diameter;
        out.matching.matched_task[edge.agent] = edge.task;
        task_done[edge.task] = 1;
        out.largest_weight = std::max(out.largest_weight, weight);
    }
    return out;
}

}  // namespace bap
