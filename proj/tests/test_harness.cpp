#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ufd/harness.hpp"

using namespace ufd;

TEST_CASE("run_trial with no noise never fails and reports positive time") {
    const auto g = build_torus_2d(3);
    RngStream rng(1, 0);
    const auto record = run_trial(g, {0.0, 0.0}, GrowthStrategy::UniformFast, rng);
    CHECK(!record.failed);
    CHECK(record.decode_ns >= 1);
    CHECK(record.growth_rounds == 0);
}

TEST_CASE("run_trial far above threshold terminates in the coin-flip regime") {
    const auto g = build_torus_2d(16);
    TrialRunner runner(g);
    std::uint64_t failures = 0;
    const std::uint64_t trials = 1500;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream rng(123, t);
        failures += runner.run({0.0, 0.16}, GrowthStrategy::WeightedFast, rng).failed ? 1 : 0;
    }
    const double rate = static_cast<double>(failures) / static_cast<double>(trials);
    CHECK(rate > 0.25);
    CHECK(rate < 0.9);
}

TEST_CASE("wilson interval matches frozen reference values") {
    const auto zero = wilson_interval(0, 100);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(0.03699349820698568).epsilon(1e-12));

    const auto ten = wilson_interval(10, 100);
    CHECK(ten.lo == doctest::Approx(0.0552291370606751).epsilon(1e-12));
    CHECK(ten.hi == doctest::Approx(0.17436566150491345).epsilon(1e-12));

    const auto half = wilson_interval(50, 100);
    CHECK(half.lo == doctest::Approx(0.4038315303659956).epsilon(1e-12));
    CHECK(half.hi == doctest::Approx(0.5961684696340044).epsilon(1e-12));

    const auto all = wilson_interval(100, 100);
    CHECK(all.hi == 1.0);

    // Bounds always bracket the point estimate.
    for (std::uint64_t k : {0ull, 1ull, 37ull, 100ull}) {
        const auto iv = wilson_interval(k, 100);
        const double p = static_cast<double>(k) / 100.0;
        CHECK(iv.lo <= p);
        CHECK(iv.hi >= p);
        CHECK(iv.lo >= 0.0);
        CHECK(iv.hi <= 1.0);
    }
}

TEST_CASE("crossing estimation interpolates the rate-difference zero") {
    const std::vector<CurvePoint> a{{0.08, 0.10}, {0.12, 0.30}};
    const std::vector<CurvePoint> b{{0.08, 0.05}, {0.12, 0.40}};
    const auto crossing = estimate_crossing(a, b);
    CHECK(crossing.p_star == doctest::Approx(0.09333333333333332).epsilon(1e-12));
    CHECK(crossing.p_below == 0.08);
    CHECK(crossing.p_above == 0.12);

    CHECK_THROWS_AS(estimate_crossing(a, a), NoCrossingError);

    const std::vector<CurvePoint> short_a{{0.1, 0.2}};
    CHECK_THROWS_AS(estimate_crossing(short_a, short_a), std::invalid_argument);

    const std::vector<CurvePoint> off_grid{{0.09, 0.05}, {0.12, 0.40}};
    CHECK_THROWS_AS(estimate_crossing(a, off_grid), std::invalid_argument);
}

TEST_CASE("experiment statistics are deterministic across thread counts") {
    ExperimentConfig config;
    config.lattice = LatticeDim::Torus2D;
    config.sizes = {4};
    config.p_e_grid = {0.05};
    config.p_z_grid = {0.08};
    config.trials = 4000;
    config.strategy = GrowthStrategy::WeightedFast;
    config.seed = 99;

    config.threads = 1;
    const auto a = run_experiment(config);
    config.threads = 2;
    const auto b = run_experiment(config);
    REQUIRE(a.rows.size() == 1);
    REQUIRE(b.rows.size() == 1);
    CHECK(a.rows[0].trials == b.rows[0].trials);
    CHECK(a.rows[0].failures == b.rows[0].failures);
    CHECK(a.rows[0].rate == b.rows[0].rate);
    CHECK(a.rows[0].ci_lo == b.rows[0].ci_lo);
    CHECK(a.rows[0].ci_hi == b.rows[0].ci_hi);
    CHECK(a.rows[0].failures > 0);  // the point is well above threshold for L=4
}

TEST_CASE("zero error rate yields zero failures and a zero lower bound") {
    ExperimentConfig config;
    config.sizes = {4};
    config.p_e_grid = {0.0};
    config.p_z_grid = {0.0};
    config.trials = 100;
    config.seed = 5;
    const auto summary = run_experiment(config);
    REQUIRE(summary.rows.size() == 1);
    CHECK(summary.rows[0].failures == 0);
    CHECK(summary.rows[0].rate == 0.0);
    CHECK(summary.rows[0].ci_lo == 0.0);
}

TEST_CASE("stop-at-failures mode records the exact trial count deterministically") {
    ExperimentConfig config;
    config.sizes = {4};
    config.p_e_grid = {0.0};
    config.p_z_grid = {0.12};
    config.trials = 0;
    config.min_failures = 40;
    config.max_trials = 1000000;
    config.seed = 7;

    config.threads = 1;
    const auto a = run_experiment(config);
    config.threads = 2;
    const auto b = run_experiment(config);
    REQUIRE(a.rows.size() == 1);
    CHECK(a.rows[0].failures >= 40);
    CHECK(a.rows[0].trials == b.rows[0].trials);
    CHECK(a.rows[0].failures == b.rows[0].failures);
    CHECK(a.rows[0].trials % 4096 == 0);  // whole blocks
}

TEST_CASE("csv rows round-trip losslessly") {
    ExperimentConfig config;
    config.lattice = LatticeDim::Torus3D;
    config.sizes = {2, 3};
    config.p_e_grid = {0.01};
    config.p_z_grid = {0.02, 0.03};
    config.trials = 200;
    config.strategy = GrowthStrategy::UniformFast;
    config.seed = 31;
    const auto summary = run_experiment(config);

    std::stringstream buffer;
    write_experiment_csv(buffer, summary);
    const auto parsed = read_experiment_csv(buffer);

    REQUIRE(parsed.rows.size() == summary.rows.size());
    for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
        const auto& x = summary.rows[i];
        const auto& y = parsed.rows[i];
        CHECK(x.lattice == y.lattice);
        CHECK(x.L == y.L);
        CHECK(x.p_e == y.p_e);
        CHECK(x.p_z == y.p_z);
        CHECK(x.strategy == y.strategy);
        CHECK(x.trials == y.trials);
        CHECK(x.failures == y.failures);
        CHECK(x.rate == y.rate);
        CHECK(x.ci_lo == y.ci_lo);
        CHECK(x.ci_hi == y.ci_hi);
        CHECK(x.mean_decode_ns == y.mean_decode_ns);
    }
}

TEST_CASE("same config and seed give identical statistics csv") {
    ExperimentConfig config;
    config.sizes = {4};
    config.p_e_grid = {0.02};
    config.p_z_grid = {0.09};
    config.trials = 2000;
    config.seed = 2024;
    const auto a = run_experiment(config);
    const auto b = run_experiment(config);

    // Every column except the wall-clock timing one is bit-identical.
    auto strip_timing = [](ExperimentSummary s) {
        for (auto& row : s.rows) row.mean_decode_ns = 0.0;
        std::stringstream out;
        write_experiment_csv(out, s);
        return out.str();
    };
    CHECK(strip_timing(a) == strip_timing(b));
}

TEST_CASE("format_double writes shortest exact form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(0.099) == "0.099");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    for (double v : {0.1, 0.25, 1e-9, 123456.789, 0.09999999999999999}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("timing sweep reports edge counts and positive means") {
    const std::vector<std::uint32_t> sizes{4, 8};
    const auto rows = timing_sweep(LatticeDim::Torus2D, sizes, {0.1, 0.05},
                                   GrowthStrategy::WeightedFast, 200, 17, 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 32);   // 2 * 4^2
    CHECK(rows[1].n == 128);  // 2 * 8^2
    CHECK(rows[0].mean_decode_ns > 0.0);
    CHECK(rows[1].mean_decode_ns > 0.0);
    CHECK(rows[0].trials == 200);
}

TEST_CASE("unwritable output path raises") {
    ExperimentConfig config;
    config.sizes = {2};
    config.p_z_grid = {0.0};
    config.trials = 1;
    config.out_path = "/nonexistent_dir_ufd/out.csv";
    CHECK_THROWS_AS(run_experiment(config), std::runtime_error);
}
