#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufd/cluster.hpp"
#include "ufd/homology.hpp"
#include "ufd/lattice.hpp"
#include "ufd/noise.hpp"
#include "ufd/peeling.hpp"
#include "ufd/rng.hpp"

namespace ufd {

struct TrialRecord {
    bool failed = false;
    std::array<std::uint8_t, 2> class_bits{0, 0};
    std::int64_t decode_ns = 0;  // validation + peeling only, always >= 1
    std::uint32_t growth_rounds = 0;
    std::uint64_t union_calls = 0;
    std::uint64_t find_calls = 0;
};

/// Runs sample -> validate -> peel -> judge with buffers reused across
/// trials. One runner per thread; the decode timer wraps only the decoder
/// stages (validation and peeling), not sampling or judging.
class TrialRunner {
public:
    explicit TrialRunner(const SyndromeGraph& graph);

    TrialRecord run(const NoiseParams& params, GrowthStrategy strategy, RngStream& rng);

private:
    const SyndromeGraph& graph_;
    Validator validator_;
    Peeler peeler_;
    std::vector<std::uint8_t> residual_mask_;
    std::vector<EdgeId> residual_;
};

/// One-shot convenience wrapper around TrialRunner.
TrialRecord run_trial(const SyndromeGraph& graph,
                      const NoiseParams& params,
                      GrowthStrategy strategy,
                      RngStream& rng);

struct ExperimentConfig {
    LatticeDim lattice = LatticeDim::Torus2D;
    std::vector<std::uint32_t> sizes;
    std::vector<double> p_e_grid{0.0};
    std::vector<double> p_z_grid;
    std::uint64_t trials = 0;        // fixed-trials mode when nonzero
    std::uint64_t min_failures = 0;  // stop-at-failures mode when nonzero
    std::uint64_t max_trials = 100'000'000;  // cap for stop-at-failures mode
    GrowthStrategy strategy = GrowthStrategy::WeightedFast;
    std::uint64_t seed = 0;
    std::string out_path;  // CSV written here when nonempty
    unsigned threads = 1;  // 0: hardware concurrency
};

struct SummaryRow {
    std::string lattice;  // "2d" or "3d"
    std::uint32_t L = 0;
    double p_e = 0.0;
    double p_z = 0.0;
    std::string strategy;  // "uniform", "weighted" or "naive"
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double ci_lo = 0.0;  // Wilson 95% bounds
    double ci_hi = 0.0;
    double mean_decode_ns = 0.0;
};

struct ExperimentSummary {
    std::vector<SummaryRow> rows;
};

/// Monte Carlo sweep over sizes x p_e grid x p_z grid. Trial t of a grid
/// point uses the stream (point seed, t), where the point seed mixes the
/// config seed with (L, p_e, p_z); all statistics are therefore functions of
/// (config, seed) alone, whatever the thread count or schedule. Only the
/// mean_decode_ns column is a physical measurement and varies run to run.
ExperimentSummary run_experiment(const ExperimentConfig& config);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion (default 95%).
Interval wilson_interval(std::uint64_t failures, std::uint64_t trials,
                         double z = 1.959963984540054);

struct CurvePoint {
    double p = 0.0;
    double rate = 0.0;
};

struct Crossing {
    double p_star = 0.0;
    double p_below = 0.0;  // grid points bracketing the sign change
    double p_above = 0.0;
};

struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zero of rate_a(p) - rate_b(p) by linear interpolation between the first
/// adjacent grid points where the difference changes sign. Both curves must
/// share the p grid (>= 2 points). Throws NoCrossingError when no sign
/// change exists.
Crossing estimate_crossing(const std::vector<CurvePoint>& curve_a,
                           const std::vector<CurvePoint>& curve_b);

struct TimingRow {
    std::string lattice;
    std::uint32_t L = 0;
    std::uint64_t n = 0;  // qubit count = edge count
    std::uint64_t trials = 0;
    double mean_decode_ns = 0.0;
};

/// Mean decode time per trial for each size, at fixed noise parameters.
std::vector<TimingRow> timing_sweep(LatticeDim lattice,
                                    const std::vector<std::uint32_t>& sizes,
                                    const NoiseParams& params,
                                    GrowthStrategy strategy,
                                    std::uint64_t trials,
                                    std::uint64_t seed,
                                    unsigned threads = 1);

// --- CSV ---------------------------------------------------------------
// Schema: lattice,L,p_e,p_z,strategy,trials,failures,rate,ci_lo,ci_hi,
// mean_decode_ns. Doubles use the shortest representation that parses back
// to the identical value.

extern const char* const kExperimentCsvHeader;

std::string format_double(double value);

void write_experiment_csv(std::ostream& out, const ExperimentSummary& summary);
ExperimentSummary read_experiment_csv(std::istream& in);
ExperimentSummary read_experiment_csv_file(const std::string& path);

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

const char* lattice_name(LatticeDim dim);
const char* strategy_name(GrowthStrategy strategy);

/// Deterministic per-point seed: mixes the experiment seed with the grid
/// coordinates, so a point's trial streams do not depend on grid layout.
std::uint64_t point_seed(std::uint64_t seed, std::uint32_t L, double p_e, double p_z);

}  // namespace ufd
