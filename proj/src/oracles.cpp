#include "bap/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bap {

namespace {

// Kuhn-style augmenting step: try to match `agent` by task index order.
bool try_kuhn(const WeightedBipartiteGraph& g, const EdgeSet& filter, int agent,
              std::vector<char>& visited_task, std::vector<int>& mate_of_task) {
    for (int t = 0; t < g.n; ++t) {
        if (!filter.contains(agent, t) || visited_task[t]) continue;
        visited_task[t] = 1;
        if (mate_of_task[t] < 0 ||
            try_kuhn(g, filter, mate_of_task[t], visited_task, mate_of_task)) {
            mate_of_task[t] = agent;
            return true;
        }
    }
    return false;
}

}  // namespace

Matching mcm_oracle(const WeightedBipartiteGraph& g, const EdgeSet& filter) {
    std::vector<int> mate_of_task(g.n, -1);
    for (int a = 0; a < g.m; ++a) {
        std::vector<char> visited(g.n, 0);
        try_kuhn(g, filter, a, visited, mate_of_task);
    }
    Matching out = Matching::none(g.m);
    for (int t = 0; t < g.n; ++t)
        if (mate_of_task[t] >= 0) out.matched_task[mate_of_task[t]] = t;
    return out;
}

bool has_augmenting_path(const WeightedBipartiteGraph& g, const EdgeSet& filter,
                         const Matching& matching) {
    // A strictly larger matching exists within the filter iff an augmenting
    // path does.
    return mcm_oracle(g, filter).cardinality() > matching.cardinality();
}

std::pair<Matching, double> brute_force_bottleneck(const WeightedBipartiteGraph& g) {
    if (g.n > 9) throw std::invalid_argument("brute force limited to n <= 9");
    const int target = mcm_oracle(g, g.present).cardinality();

    Matching assign = Matching::none(g.m);
    std::vector<char> agent_used(g.m, 0);
    Matching best = Matching::none(g.m);
    double best_value = std::numeric_limits<double>::infinity();
    bool have_best = false;

    // Assign tasks in index order; a task may stay unmatched only if the
    // remaining tasks still allow reaching the target cardinality.
    std::function<void(int, int, double)> rec = [&](int task, int matched, double worst) {
        if (task == g.n) {
            if (matched == target && (!have_best || worst < best_value)) {
                best = assign;
                best_value = worst;
                have_best = true;
            }
            return;
        }
        int remaining = g.n - task;
        if (matched + remaining < target) return;
        for (int a = 0; a < g.m; ++a) {
            if (agent_used[a] || !g.present.contains(a, task)) continue;
            agent_used[a] = 1;
            assign.matched_task[a] = task;
            rec(task + 1, matched + 1, std::max(worst, g.weight(a, task)));
            assign.matched_task[a] = -1;
            agent_used[a] = 0;
        }
        if (matched + remaining - 1 >= target) rec(task + 1, matched, worst);
    };
    rec(0, 0, -std::numeric_limits<double>::infinity());

    if (!have_best) throw std::invalid_argument("graph admits no matching");
    return {best, best_value};
}

std::vector<int> agents_alternating_reachable(const WeightedBipartiteGraph& g,
                                              const EdgeSet& filter, const Matching& matching,
                                              int root_task) {
    std::vector<char> reached(g.m, 0);
    std::vector<char> agent_on_path(g.m, 0), task_on_path(g.n, 0);

    // Enumerate every simple alternating path that starts at the root task.
    // `want_matched` is the membership the next edge must have.
    std::function<void(Vertex, bool)> walk = [&](Vertex v, bool want_matched) {
        if (v.is_task) {
            for (int a = 0; a < g.m; ++a) {
                if (agent_on_path[a] || !filter.contains(a, v.index)) continue;
                if (matching.contains({a, v.index}) != want_matched) continue;
                reached[a] = 1;
                agent_on_path[a] = 1;
                walk(Vertex::agent(a), !want_matched);
                agent_on_path[a] = 0;
            }
        } else {
            for (int t = 0; t < g.n; ++t) {
                if (task_on_path[t] || !filter.contains(v.index, t)) continue;
                if (matching.contains({v.index, t}) != want_matched) continue;
                task_on_path[t] = 1;
                walk(Vertex::task(t), !want_matched);
                task_on_path[t] = 0;
            }
        }
    };
    task_on_path[root_task] = 1;
    walk(Vertex::task(root_task), true);
    walk(Vertex::task(root_task), false);

    std::vector<int> out;
    for (int a = 0; a < g.m; ++a)
        if (reached[a]) out.push_back(a);
    return out;
}

}  // namespace bap
