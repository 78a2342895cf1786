#include "bap/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bap {

uint64_t derive_seed(uint64_t seed, uint64_t n, uint64_t trial) {
    SplitMix64 rng(seed ^ (0xA24BAED4963EE407ull * (n + 1)) ^ (0x9FB21C651E98DF25ull * (trial + 1)));
    return rng.next();
}

namespace {

WeightedBipartiteGraph graph_from_positions(const Positions& pos) {
    const int m = static_cast<int>(pos.agents.size());
    const int n = static_cast<int>(pos.tasks.size());
    std::vector<std::vector<double>> w(m, std::vector<double>(n));
    for (int a = 0; a < m; ++a)
        for (int t = 0; t < n; ++t)
            w[a][t] = std::hypot(pos.agents[a][0] - pos.tasks[t][0],
                                 pos.agents[a][1] - pos.tasks[t][1]);
    return WeightedBipartiteGraph::complete(w);
}

}  // namespace

Instance generate_instance(int n, int m, PointDistribution dist, uint64_t seed) {
    if (n < 1 || m < n) throw std::invalid_argument("need 1 <= n <= m");
    SplitMix64 rng(seed);
    Positions pos;
    auto draw = [&](int count, std::vector<std::array<double, 2>>& out) {
        for (int k = 0; k < count; ++k) {
            double lo = 0.0, hi = 100.0;
            if (dist == PointDistribution::two_clusters) {
                bool first_half = k < count / 2;
                lo = first_half ? 5.0 : 60.0;
                hi = first_half ? 40.0 : 95.0;
            }
            double x = rng.next_in(lo, hi);
            double y = rng.next_in(lo, hi);
            out.push_back({x, y});
        }
    };
    if (dist == PointDistribution::two_clusters && (n % 2 != 0 || m % 2 != 0))
        throw std::invalid_argument("two-cluster instances need even n and m");
    draw(m, pos.agents);
    draw(n, pos.tasks);
    Instance inst{graph_from_positions(pos), pos};
    return inst;
}

Instance load_instance_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    Instance inst;
    if (j.contains("positions")) {
        Positions pos;
        for (const auto& p : j["positions"].at("agents"))
            pos.agents.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        for (const auto& p : j["positions"].at("tasks"))
            pos.tasks.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (static_cast<int>(pos.agents.size()) != m || static_cast<int>(pos.tasks.size()) != n)
            throw std::invalid_argument("positions do not match m and n");
        inst.positions = pos;
    }
    if (j.contains("weights")) {
        auto w = j["weights"].get<std::vector<std::vector<double>>>();
        if (static_cast<int>(w.size()) != m)
            throw std::invalid_argument("weights do not match m");
        inst.graph = WeightedBipartiteGraph::complete(w);
    } else if (inst.positions) {
        inst.graph = graph_from_positions(*inst.positions);
    } else {
        throw std::invalid_argument("instance needs weights or positions");
    }
    if (inst.graph.n != n) throw std::invalid_argument("weights do not match n");
    if (j.contains("mask")) {
        auto mask = j["mask"].get<std::vector<std::vector<bool>>>();
        std::vector<std::vector<double>> w(m, std::vector<double>(n));
        for (int a = 0; a < m; ++a)
            for (int t = 0; t < n; ++t) w[a][t] = inst.graph.weight(a, t);
        inst.graph = WeightedBipartiteGraph::masked(w, mask);
    }
    return inst;
}

Instance load_instance_file(const std::string& path) {
    return load_instance_json(read_file(path));
}

std::string instance_to_json(const Instance& instance) {
    nlohmann::json j;
    j["m"] = instance.graph.m;
    j["n"] = instance.graph.n;
    {
        auto rows = nlohmann::json::array();
        for (int a = 0; a < instance.graph.m; ++a) {
            auto row = nlohmann::json::array();
            for (int t = 0; t < instance.graph.n; ++t) row.push_back(instance.graph.weight(a, t));
            rows.push_back(row);
        }
        j["weights"] = rows;
    }
    bool complete = instance.graph.present.count() == instance.graph.m * instance.graph.n;
    if (!complete) {
        auto rows = nlohmann::json::array();
        for (int a = 0; a < instance.graph.m; ++a) {
            auto row = nlohmann::json::array();
            for (int t = 0; t < instance.graph.n; ++t)
                row.push_back(instance.graph.present.contains(a, t));
            rows.push_back(row);
        }
        j["mask"] = rows;
    }
    if (instance.positions) {
        auto pts = [](const std::vector<std::array<double, 2>>& v) {
            auto arr = nlohmann::json::array();
            for (const auto& p : v) arr.push_back({p[0], p[1]});
            return arr;
        };
        j["positions"] = {{"agents", pts(instance.positions->agents)},
                          {"tasks", pts(instance.positions->tasks)}};
    }
    return j.dump(2);
}

Matching load_matching_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Matching m;
    m.matched_task = j.at("matched_task").get<std::vector<int>>();
    return m;
}

Matching load_matching_file(const std::string& path) {
    return load_matching_json(read_file(path));
}

std::string matching_to_json(const Matching& matching) {
    nlohmann::json j;
    j["matched_task"] = matching.matched_task;
    return j.dump(2);
}

CommGraph parse_topology(const std::string& spec, int agent_count) {
    if (spec == "complete") return CommGraph::complete(agent_count);
    if (spec == "path") return CommGraph::path(agent_count);
    if (spec == "ring") return CommGraph::ring(agent_count);
    if (spec.rfind("file:", 0) == 0) {
        nlohmann::json j = nlohmann::json::parse(read_file(spec.substr(5)));
        const int m = j.at("m").get<int>();
        if (m != agent_count)
            throw std::invalid_argument("topology file does not match the agent count");
        std::vector<std::pair<int, int>> links;
        for (const auto& l : j.at("links"))
            links.emplace_back(l.at(0).get<int>(), l.at(1).get<int>());
        return CommGraph::from_links(m, links);
    }
    throw std::invalid_argument("unknown topology: " + spec);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
    if (!out) throw std::invalid_argument("failed writing " + path);
}

}  // namespace bap
