#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bap/graph.hpp"
#include "bap/sim.hpp"

namespace bap {

/// Deterministic, platform-independent RNG (splitmix64).
struct SplitMix64 {
    uint64_t state = 0;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
};

/// Independent stream for one (seed, n, trial) cell.
uint64_t derive_seed(uint64_t seed, uint64_t n, uint64_t trial);

struct Positions {
    std::vector<std::array<double, 2>> agents;
    std::vector<std::array<double, 2>> tasks;
};

struct Instance {
    WeightedBipartiteGraph graph;
    std::optional<Positions> positions;
};

enum class PointDistribution {
    uniform_square,  // every point uniform in [0, 100]^2
    two_clusters,    // first half in [5, 40]^2, second half in [60, 95]^2
};

/// Euclidean instance: m agent points and n task points drawn per `dist`,
/// weights are pairwise distances. Requires 1 <= n <= m; two_clusters
/// additionally needs even n and m.
Instance generate_instance(int n, int m, PointDistribution dist, uint64_t seed);

/// Instance files are JSON objects {"m", "n", "weights"?, "mask"?,
/// "positions"?}; weights are derived from positions when absent.
Instance load_instance_json(const std::string& text);
Instance load_instance_file(const std::string& path);
std::string instance_to_json(const Instance& instance);

Matching load_matching_json(const std::string& text);  // {"matched_task": [...]}
Matching load_matching_file(const std::string& path);
std::string matching_to_json(const Matching& matching);

/// "complete" | "path" | "ring" | "file:<adjacency json>", the file holding
/// {"m": int, "links": [[i, j], ...]}.
CommGraph parse_topology(const std::string& spec, int agent_count);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bap
