// Command line front end: Monte Carlo sweeps, single-trial traces, timing
// sweeps, threshold crossings and the inverse-Ackermann helper.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ufd/harness.hpp"

namespace {

using namespace ufd;

// Grids accept either a comma list ("0.08,0.1,0.12") or "lo:hi:step".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0) {
            throw CLI::ValidationError("grid", "expected lo:hi:step with step > 0");
        }
        for (double p = lo; p <= hi + 1e-12; p += step) values.push_back(p);
        return values;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::strtod(item.c_str(), nullptr));
    }
    if (values.empty()) {
        throw CLI::ValidationError("grid", "no values in grid");
    }
    return values;
}

std::vector<std::uint32_t> parse_sizes(const std::string& text) {
    std::vector<std::uint32_t> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            sizes.push_back(static_cast<std::uint32_t>(std::strtoul(item.c_str(), nullptr, 10)));
        }
    }
    if (sizes.empty()) {
        throw CLI::ValidationError("sizes", "no sizes given");
    }
    return sizes;
}

LatticeDim parse_lattice(const std::string& name) {
    if (name == "2d") return LatticeDim::Torus2D;
    if (name == "3d") return LatticeDim::Torus3D;
    throw CLI::ValidationError("lattice", "expected 2d or 3d");
}

GrowthStrategy parse_strategy(const std::string& name) {
    if (name == "uniform") return GrowthStrategy::UniformFast;
    if (name == "weighted") return GrowthStrategy::WeightedFast;
    if (name == "naive") return GrowthStrategy::UniformNaive;
    throw CLI::ValidationError("strategy", "expected uniform, weighted or naive");
}

template <typename T>
void print_edge_list(const char* tag, const T& edges) {
    std::cout << tag << " (" << edges.size() << "):";
    for (auto e : edges) std::cout << ' ' << e;
    std::cout << '\n';
}

int cmd_run(const std::string& lattice, const std::string& sizes, const std::string& pe,
            const std::string& pz, std::uint64_t trials, std::uint64_t min_failures,
            std::uint64_t max_trials, const std::string& strategy, std::uint64_t seed,
            const std::string& out, unsigned threads) {
    ExperimentConfig config;
    config.lattice = parse_lattice(lattice);
    config.sizes = parse_sizes(sizes);
    config.p_e_grid = parse_grid(pe);
    config.p_z_grid = parse_grid(pz);
    config.trials = min_failures ? 0 : trials;
    config.min_failures = min_failures;
    config.max_trials = max_trials;
    config.strategy = parse_strategy(strategy);
    config.seed = seed;
    config.out_path = out;
    config.threads = threads;

    const auto summary = run_experiment(config);
    write_experiment_csv(std::cout, summary);
    if (!out.empty()) {
        std::cerr << "wrote " << summary.rows.size() << " rows to " << out << '\n';
    }
    return 0;
}

int cmd_trial(const std::string& lattice, std::uint32_t L, double pe, double pz,
              const std::string& strategy, std::uint64_t seed, std::uint64_t trial_index) {
    const auto graph = parse_lattice(lattice) == LatticeDim::Torus2D ? build_torus_2d(L)
                                                                     : build_torus_3d(L);
    RngStream rng(seed, trial_index);
    const auto state = sample(graph, {pe, pz}, rng);
    print_edge_list("erasure", state.erasure);
    print_edge_list("pauli_z", state.pauli_z);
    print_edge_list("syndrome", state.syndrome);

    Validator validator(graph);
    const auto validated = validator.run(state.erasure, state.syndrome, parse_strategy(strategy));
    print_edge_list("modified_erasure", validated.modified_erasure);
    std::cout << "growth_rounds " << validated.growth_rounds << "\nunion_calls "
              << validated.union_calls << "\nfind_calls " << validated.find_calls << '\n';

    const auto correction = peel(graph, validated.modified_erasure, state.syndrome);
    print_edge_list("correction", correction.edges);

    std::vector<EdgeId> residual;
    std::set_symmetric_difference(state.pauli_z.begin(), state.pauli_z.end(),
                                  correction.edges.begin(), correction.edges.end(),
                                  std::back_inserter(residual));
    print_edge_list("residual", residual);
    const auto verdict = judge(graph, residual);
    std::cout << "class_bits " << int(verdict.class_bits[0]) << ' ' << int(verdict.class_bits[1])
              << '\n'
              << (verdict.failed ? "FAILED" : "corrected") << '\n';
    return verdict.failed ? 1 : 0;
}

int cmd_timing(const std::string& lattice, const std::string& sizes, double pe, double pz,
               const std::string& strategy, std::uint64_t trials, std::uint64_t seed,
               const std::string& out, unsigned threads) {
    const auto rows = timing_sweep(parse_lattice(lattice), parse_sizes(sizes), {pe, pz},
                                   parse_strategy(strategy), trials, seed, threads);
    if (!out.empty()) {
        std::ofstream file(out);
        if (!file) {
            std::cerr << "cannot open " << out << '\n';
            return 1;
        }
        write_timing_csv(file, rows);
    }
    write_timing_csv(std::cout, rows);
    return 0;
}

int cmd_crossing(const std::string& file_a, const std::string& file_b) {
    const auto a = read_experiment_csv_file(file_a);
    const auto b = read_experiment_csv_file(file_b);
    if (a.rows.empty() || b.rows.empty()) {
        std::cerr << "empty input curve\n";
        return 1;
    }
    // Scan along whichever probability varies (p_z unless it is constant).
    auto to_curve = [](const ExperimentSummary& s) {
        bool pz_varies = false;
        for (const auto& row : s.rows) pz_varies |= row.p_z != s.rows.front().p_z;
        std::vector<CurvePoint> curve;
        for (const auto& row : s.rows) {
            curve.push_back({pz_varies ? row.p_z : row.p_e, row.rate});
        }
        return curve;
    };
    try {
        const auto crossing = estimate_crossing(to_curve(a), to_curve(b));
        std::cout << "p_star " << format_double(crossing.p_star) << "\nbracket "
                  << format_double(crossing.p_below) << ' ' << format_double(crossing.p_above)
                  << '\n';
        return 0;
    } catch (const NoCrossingError& err) {
        std::cerr << err.what() << '\n';
        return 1;
    }
}

int cmd_ackermann(std::uint64_t n, bool is_log2) {
    if (is_log2) {
        std::cout << inverse_ackermann_from_log2(n) << '\n';
    } else {
        std::cout << inverse_ackermann(n) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Union-find decoder for toric codes: almost-linear-time decoding "
                 "of erasure plus phase-flip noise, with Monte Carlo tooling"};
    app.require_subcommand(1);

    std::string lattice = "2d", sizes = "8,16,32", pe = "0", pz = "0";
    std::string strategy = "weighted", out;
    std::uint64_t trials = 100000, min_failures = 0, max_trials = 100000000;
    std::uint64_t seed = 0, trial_index = 0, n = 0;
    std::uint32_t L = 8;
    double pe_one = 0.0, pz_one = 0.0;
    unsigned threads = 0;
    bool is_log2 = false;

    auto* run = app.add_subcommand("run", "experiment sweep, CSV to stdout and --out");
    run->add_option("--lattice", lattice, "2d or 3d");
    run->add_option("--sizes", sizes, "comma list of L");
    run->add_option("--pe", pe, "erasure grid: list or lo:hi:step");
    run->add_option("--pz", pz, "Z grid: list or lo:hi:step");
    run->add_option("--trials", trials, "trials per grid point");
    run->add_option("--min-failures", min_failures, "stop-at-failures mode");
    run->add_option("--max-trials", max_trials, "cap for stop-at-failures mode");
    run->add_option("--strategy", strategy, "uniform, weighted or naive");
    run->add_option("--seed", seed, "64-bit experiment seed");
    run->add_option("--out", out, "CSV output path");
    run->add_option("--threads", threads, "worker threads (0: all cores)");

    auto* trial = app.add_subcommand("trial", "single seeded trial with a verbose trace");
    trial->add_option("--lattice", lattice, "2d or 3d");
    trial->add_option("--size", L, "lattice size L");
    trial->add_option("--pe", pe_one, "erasure rate");
    trial->add_option("--pz", pz_one, "Z rate");
    trial->add_option("--strategy", strategy, "uniform, weighted or naive");
    trial->add_option("--seed", seed, "seed");
    trial->add_option("--trial-index", trial_index, "trial stream index");

    auto* timing = app.add_subcommand("timing", "decode-time sweep over sizes, CSV");
    timing->add_option("--lattice", lattice, "2d or 3d");
    timing->add_option("--sizes", sizes, "comma list of L");
    timing->add_option("--pe", pe_one, "erasure rate");
    timing->add_option("--pz", pz_one, "Z rate");
    timing->add_option("--strategy", strategy, "uniform, weighted or naive");
    timing->add_option("--trials", trials, "trials per size");
    timing->add_option("--seed", seed, "seed");
    timing->add_option("--out", out, "CSV output path");
    timing->add_option("--threads", threads, "worker threads (0: all cores)");

    std::string file_a, file_b;
    auto* crossing = app.add_subcommand("crossing", "threshold crossing of two CSV curves");
    crossing->add_option("curve_a", file_a, "CSV for the first size")->required();
    crossing->add_option("curve_b", file_b, "CSV for the second size")->required();

    auto* ack = app.add_subcommand("ackermann", "print alpha(n)");
    ack->add_option("n", n, "argument (or log2 n with --log2)")->required();
    ack->add_flag("--log2", is_log2, "interpret the argument as log2 n");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(lattice, sizes, pe, pz, trials, min_failures, max_trials, strategy,
                           seed, out, threads);
        }
        if (trial->parsed()) {
            return cmd_trial(lattice, L, pe_one, pz_one, strategy, seed, trial_index);
        }
        if (timing->parsed()) {
            return cmd_timing(lattice, sizes, pe_one, pz_one, strategy, trials, seed, out,
                              threads);
        }
        if (crossing->parsed()) {
            return cmd_crossing(file_a, file_b);
        }
        if (ack->parsed()) {
            return cmd_ackermann(n, is_log2);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
