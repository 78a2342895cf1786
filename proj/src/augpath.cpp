#include "bap/augpath.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "bap/oracles.hpp"

namespace bap {

void SearchInput::validate() const {
    if (graph == nullptr) throw std::invalid_argument("search input has no graph");
    const auto& g = *graph;
    if (removed_edge.agent < 0 || removed_edge.agent >= g.m || removed_edge.task < 0 ||
        removed_edge.task >= g.n)
        throw std::invalid_argument("removed edge out of range");
    if (edges.contains(removed_edge))
        throw std::invalid_argument("removed edge still present in the search edge set");
    if (!matching.is_valid_for(g.m, g.n) || !matching.within(edges))
        throw std::invalid_argument("matching invalid or not contained in the edge set");
    int free_tasks = 0;
    for (int t = 0; t < g.n; ++t)
        if (matching.mate_of_task(t) < 0) ++free_tasks;
    if (free_tasks != 1 || matching.mate_of_task(root_task()) >= 0)
        throw std::invalid_argument("root must be the unique free task");
}

namespace {

std::vector<Edge> chain_to_path(const std::vector<std::pair<int, int>>& chain,
                                const std::vector<int>& mate, int free_agent, int free_from) {
    // chain holds (task, agent explored from it) pairs along the current
    // alternating path; the free agent hangs off `free_from`.
    std::vector<Edge> path;
    for (const auto& [task, agent] : chain) {
        path.push_back({agent, task});
        path.push_back({agent, mate[agent]});
    }
    path.push_back({free_agent, free_from});
    return path;
}

}  // namespace

SearchOutcome aug_dfs(const SearchInput& input, PickMode mode) {
    input.validate();
    const auto& g = *input.graph;
    const int root = input.root_task();

    std::vector<int> mate = input.matching.matched_task;
    std::vector<int> nu = mate;  // working assignment, reverts on backtrack
    std::vector<char> explored(g.m, 0);
    std::vector<int> mate_of_task(g.n, -1);
    for (int a = 0; a < g.m; ++a)
        if (mate[a] >= 0) mate_of_task[mate[a]] = a;

    SearchOutcome out;
    std::vector<std::pair<int, int>> chain;  // (task, agent explored from it)
    int t = root;
    bool complete = false;
    int free_agent = -1, free_from = -1;

    while (!complete) {
        ++out.iterations;
        int pick = -1;
        double pick_w = std::numeric_limits<double>::infinity();
        for (int a = 0; a < g.m; ++a) {
            if (explored[a] || !input.edges.contains(a, t)) continue;
            if (pick < 0) {
                pick = a;
                pick_w = g.weight(a, t);
            } else if (mode == PickMode::greedy_min_weight && g.weight(a, t) < pick_w) {
                pick = a;
                pick_w = g.weight(a, t);
            }
        }
        if (pick < 0 && t == root) {
            complete = true;  // nothing left to explore anywhere
            out.explored_per_iteration.push_back(0);
        } else if (pick < 0) {
            // current task has no unexplored children: backtrack
            int k = mate_of_task[t];
            t = nu[k];
            nu[k] = mate[k];
            chain.pop_back();
            out.explored_per_iteration.push_back(0);
        } else if (mate[pick] < 0) {
            nu[pick] = t;
            free_agent = pick;
            free_from = t;
            complete = true;
            out.explored_per_iteration.push_back(1);
            out.explored_agents.push_back(pick);
        } else {
            nu[pick] = t;
            explored[pick] = 1;
            chain.push_back({t, pick});
            t = mate[pick];
            out.explored_per_iteration.push_back(1);
            out.explored_agents.push_back(pick);
        }
    }
    if (out.iterations > 2 * g.n - 1)
        throw std::logic_error("depth-first search exceeded its pass bound");

    out.found = free_agent >= 0;
    Matching result = Matching::none(g.m);
    for (int a = 0; a < g.m; ++a)
        if (nu[a] >= 0) result.matched_task[a] = nu[a];
    if (out.found) {
        out.path = chain_to_path(chain, mate, free_agent, free_from);
        if (!is_augmenting_path(out.path, input.matching))
            throw std::logic_error("depth-first search produced a non-augmenting path");
    } else if (result != input.matching) {
        throw std::logic_error("failed search must leave the matching unchanged");
    }
    out.new_matching = result;
    return out;
}

SearchOutcome aug_bfs(const SearchInput& input) {
    input.validate();
    const auto& g = *input.graph;
    const int root = input.root_task();

    std::vector<int> mate = input.matching.matched_task;
    std::vector<int> mate_of_task(g.n, -1);
    for (int a = 0; a < g.m; ++a)
        if (mate[a] >= 0) mate_of_task[mate[a]] = a;
    std::vector<char> explored(g.m, 0);
    std::vector<int> parent(g.m, -1);  // parent task of each explored agent

    SearchOutcome out;
    std::vector<int> frontier{root};
    while (true) {
        ++out.iterations;
        std::vector<int> wave;
        for (int a = 0; a < g.m; ++a) {
            if (explored[a]) continue;
            int best_t = -1;
            for (int t : frontier)
                if (input.edges.contains(a, t) && (best_t < 0 || t < best_t)) best_t = t;
            if (best_t >= 0) {
                wave.push_back(a);
                parent[a] = best_t;
            }
        }
        out.explored_per_iteration.push_back(static_cast<int>(wave.size()));
        for (int a : wave) {
            explored[a] = 1;
            out.explored_agents.push_back(a);
        }
        if (wave.empty()) {
            out.found = false;
            out.new_matching = input.matching;
            break;
        }
        int free_agent = -1;
        for (int a : wave) {
            if (mate[a] >= 0) continue;
            if (free_agent < 0 || std::pair(parent[a], a) < std::pair(parent[free_agent], free_agent))
                free_agent = a;
        }
        if (free_agent >= 0) {
            // walk parent links back to the root
            std::vector<Edge> rev;
            int a = free_agent;
            while (true) {
                rev.push_back({a, parent[a]});
                if (parent[a] == root) break;
                a = mate_of_task[parent[a]];
                rev.push_back({a, mate[a]});
            }
            std::reverse(rev.begin(), rev.end());
            out.found = true;
            out.path = rev;
            out.new_matching = augment(input.matching, rev);
            break;
        }
        std::set<int> next;
        for (int a : wave) next.insert(mate[a]);
        frontier.assign(next.begin(), next.end());
    }
    if (out.iterations > g.n)
        throw std::logic_error("breadth-first search exceeded its pass bound");
    return out;
}

bool verify_alternating_search(const SearchInput& input,
                               const std::vector<int>& explored_agents) {
    input.validate();
    std::set<int> explored(explored_agents.begin(), explored_agents.end());
    std::vector<int> reachable = agents_alternating_reachable(
        *input.graph, input.edges, input.matching, input.root_task());
    for (int a : reachable)
        if (!explored.count(a)) return false;
    return true;
}

}  // namespace bap
