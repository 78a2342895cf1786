#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bap/experiments.hpp"
#include "bap/instance.hpp"
#include "fixtures.hpp"

using namespace bap;

TEST_CASE("instance generation is reproducible and validated") {
    auto a = generate_instance(4, 4, PointDistribution::uniform_square, 123);
    auto b = generate_instance(4, 4, PointDistribution::uniform_square, 123);
    CHECK(a.graph.weights == b.graph.weights);
    auto c = generate_instance(4, 4, PointDistribution::uniform_square, 124);
    CHECK(a.graph.weights != c.graph.weights);

    CHECK_THROWS_AS(generate_instance(0, 4, PointDistribution::uniform_square, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(5, 4, PointDistribution::uniform_square, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(5, 5, PointDistribution::two_clusters, 1),
                    std::invalid_argument);
}

TEST_CASE("two-cluster instances separate cleanly") {
    auto inst = generate_instance(50, 50, PointDistribution::two_clusters, 4);
    const auto& g = inst.graph;
    double max_intra = 0, min_cross = 1e18;
    for (int a = 0; a < g.m; ++a)
        for (int t = 0; t < g.n; ++t) {
            bool same = (a < g.m / 2) == (t < g.n / 2);
            if (same)
                max_intra = std::max(max_intra, g.weight(a, t));
            else
                min_cross = std::min(min_cross, g.weight(a, t));
        }
    CHECK(max_intra < min_cross);
    CHECK(min_cross >= 20.0);  // the boxes sit 20 units apart
}

TEST_CASE("n range parsing") {
    CHECK(parse_n_range("4:8") == std::vector<int>{4, 5, 6, 7, 8});
    CHECK(parse_n_range("4:20:8") == std::vector<int>{4, 12, 20});
    CHECK(parse_n_range("3,9,27") == std::vector<int>{3, 9, 27});
    CHECK_THROWS_AS(parse_n_range("9:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_range(""), std::invalid_argument);
}

TEST_CASE("derived seeds differ across cells") {
    CHECK(derive_seed(7, 4, 0) != derive_seed(7, 4, 1));
    CHECK(derive_seed(7, 4, 0) != derive_seed(7, 5, 0));
    CHECK(derive_seed(7, 4, 3) == derive_seed(7, 4, 3));
}

TEST_CASE("sweep rows carry consistent solver and baseline results") {
    ExperimentConfig cfg = ExperimentConfig::defaults_for("complexity");
    cfg.n_values = {4, 6};
    cfg.trials = 5;
    cfg.seed = 11;
    auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 2 * 5 * 2);

    for (const auto& r : rows) {
        CHECK(r.bottleneck_weight <= r.greedy_weight);
        CHECK(r.gap == r.greedy_weight - r.bottleneck_weight);
        CHECK(r.time_steps <= 4LL * r.n * r.n * r.n);  // complete topology, unit diameter
        if (r.strategy != Strategy::bfs) {
            CHECK(r.max_explored_per_round <= 1);
            CHECK(r.mean_explored_per_round <= 1.0);
        }
    }
    // rows are sorted by (n, trial, strategy)
    for (size_t k = 1; k < rows.size(); ++k) {
        auto key = [](const ExperimentRow& r) {
            return std::tuple(r.n, r.trial, static_cast<int>(r.strategy));
        };
        CHECK(key(rows[k - 1]) < key(rows[k]));
    }
}

TEST_CASE("fixed seeds give byte-identical csv, threads included") {
    ExperimentConfig cfg = ExperimentConfig::defaults_for("optimgap");
    cfg.n_values = {4, 5, 6};
    cfg.trials = 4;
    cfg.seed = 7;
    auto once = experiment_csv(run_experiment(cfg));
    auto twice = experiment_csv(run_experiment(cfg));
    CHECK(once == twice);
    cfg.threads = 4;
    auto parallel = experiment_csv(run_experiment(cfg));
    CHECK(once == parallel);
    CHECK(std::count(once.begin(), once.end(), '\n') == 1 + 12);
}

TEST_CASE("the merge sweep reuses the union on separated clusters") {
    ExperimentConfig cfg = ExperimentConfig::defaults_for("merge");
    cfg.n_values = {8};
    cfg.trials = 3;
    cfg.seed = 3;
    auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.prune_iterations == 0);  // union accepted without a re-solve
        CHECK(r.bottleneck_weight <= r.greedy_weight);
    }
}

TEST_CASE("unknown names and empty ranges are rejected") {
    ExperimentConfig cfg;
    cfg.name = "speed";
    cfg.n_values = {4};
    cfg.strategies = {Strategy::bfs};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.name = "complexity";
    cfg.n_values = {};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
