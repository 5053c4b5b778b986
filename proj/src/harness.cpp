#include "ufd/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ufd {

TrialRunner::TrialRunner(const SyndromeGraph& graph)
    : graph_(graph),
      validator_(graph),
      peeler_(graph),
      residual_mask_(graph.edge_count(), 0) {}

TrialRecord TrialRunner::run(const NoiseParams& params, GrowthStrategy strategy, RngStream& rng) {
    using clock = std::chrono::steady_clock;

    const ErrorState state = sample(graph_, params, rng);

    const auto t0 = clock::now();
    const ValidationResult validated =
        validator_.run(state.erasure, state.syndrome, strategy);
    const Correction correction = peeler_.peel(validated.modified_erasure, state.syndrome);
    const auto t1 = clock::now();

    // Residual E_Z xor C via a sparse toggle mask.
    residual_.clear();
    for (EdgeId e : state.pauli_z) residual_mask_[e] ^= 1;
    for (EdgeId e : correction.edges) residual_mask_[e] ^= 1;
    for (EdgeId e : state.pauli_z) {
        if (residual_mask_[e]) {
            residual_.push_back(e);
            residual_mask_[e] = 0;
        }
    }
    for (EdgeId e : correction.edges) {
        if (residual_mask_[e]) {
            residual_.push_back(e);
            residual_mask_[e] = 0;
        }
    }

    const Verdict verdict = judge(graph_, residual_);

    TrialRecord record;
    record.failed = verdict.failed;
    record.class_bits = verdict.class_bits;
    record.decode_ns = std::max<std::int64_t>(
        1, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    record.growth_rounds = validated.growth_rounds;
    record.union_calls = validated.union_calls;
    record.find_calls = validated.find_calls;
    return record;
}

TrialRecord run_trial(const SyndromeGraph& graph,
                      const NoiseParams& params,
                      GrowthStrategy strategy,
                      RngStream& rng) {
    TrialRunner runner(graph);
    return runner.run(params, strategy, rng);
}

std::uint64_t point_seed(std::uint64_t seed, std::uint32_t L, double p_e, double p_z) {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ull);
    h = mix64(h ^ L);
    h = mix64(h ^ std::bit_cast<std::uint64_t>(p_e));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(p_z));
    return h;
}

namespace {

struct PointTally {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t decode_ns = 0;
};

/// Runs trials [first, first+count) of one grid point across `threads`
/// workers. Worker results are plain integer sums, so the tally does not
/// depend on scheduling.
void run_block(const NoiseParams& params,
               GrowthStrategy strategy,
               std::uint64_t stream_seed,
               std::uint64_t first,
               std::uint64_t count,
               unsigned threads,
               std::vector<TrialRunner*>& runners,
               PointTally& tally) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
    std::vector<PointTally> partial(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t lo = first + count * w / workers;
        const std::uint64_t hi = first + count * (w + 1) / workers;
        TrialRunner& runner = *runners[w];
        for (std::uint64_t t = lo; t < hi; ++t) {
            RngStream rng(stream_seed, t);
            const TrialRecord record = runner.run(params, strategy, rng);
            ++partial[w].trials;
            partial[w].failures += record.failed ? 1 : 0;
            partial[w].decode_ns += static_cast<std::uint64_t>(record.decode_ns);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (const auto& p : partial) {
        tally.trials += p.trials;
        tally.failures += p.failures;
        tally.decode_ns += p.decode_ns;
    }
}

void check_config(const ExperimentConfig& config) {
    if (config.sizes.empty()) throw std::invalid_argument("run_experiment: no sizes");
    for (auto L : config.sizes) {
        if (L < 2) throw std::invalid_argument("run_experiment: sizes must be >= 2");
    }
    if (config.p_e_grid.empty() || config.p_z_grid.empty()) {
        throw std::invalid_argument("run_experiment: empty probability grid");
    }
    for (double p : config.p_e_grid) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("run_experiment: p_e outside [0,1]");
    }
    for (double p : config.p_z_grid) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("run_experiment: p_z outside [0,1]");
    }
    if (config.trials == 0 && config.min_failures == 0) {
        throw std::invalid_argument("run_experiment: need trials or min_failures");
    }
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config) {
    check_config(config);
    const unsigned threads =
        config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    // Fixed block size keeps the stop-at-failures trial count independent of
    // the thread count.
    constexpr std::uint64_t kBlock = 4096;

    ExperimentSummary summary;
    for (std::uint32_t L : config.sizes) {
        const SyndromeGraph graph = config.lattice == LatticeDim::Torus2D
                                        ? build_torus_2d(L)
                                        : build_torus_3d(L);
        std::vector<std::unique_ptr<TrialRunner>> owned;
        std::vector<TrialRunner*> runners;
        for (unsigned w = 0; w < threads; ++w) {
            owned.push_back(std::make_unique<TrialRunner>(graph));
            runners.push_back(owned.back().get());
        }
        for (double p_e : config.p_e_grid) {
            for (double p_z : config.p_z_grid) {
                const NoiseParams params{p_e, p_z};
                const std::uint64_t stream_seed = point_seed(config.seed, L, p_e, p_z);
                PointTally tally;
                for (;;) {
                    std::uint64_t block = kBlock;
                    if (config.trials != 0) {
                        if (tally.trials >= config.trials) break;
                        block = std::min(block, config.trials - tally.trials);
                    } else {
                        if (tally.failures >= config.min_failures ||
                            tally.trials >= config.max_trials) {
                            break;
                        }
                        block = std::min(block, config.max_trials - tally.trials);
                    }
                    run_block(params, config.strategy, stream_seed, tally.trials, block,
                              threads, runners, tally);
                }

                SummaryRow row;
                row.lattice = lattice_name(config.lattice);
                row.L = L;
                row.p_e = p_e;
                row.p_z = p_z;
                row.strategy = strategy_name(config.strategy);
                row.trials = tally.trials;
                row.failures = tally.failures;
                row.rate = tally.trials == 0
                               ? 0.0
                               : static_cast<double>(tally.failures) /
                                     static_cast<double>(tally.trials);
                const Interval ci = wilson_interval(tally.failures, tally.trials);
                row.ci_lo = ci.lo;
                row.ci_hi = ci.hi;
                row.mean_decode_ns = tally.trials == 0
                                         ? 0.0
                                         : static_cast<double>(tally.decode_ns) /
                                               static_cast<double>(tally.trials);
                summary.rows.push_back(std::move(row));
            }
        }
    }

    if (!config.out_path.empty()) {
        std::ofstream out(config.out_path);
        if (!out) {
            throw std::runtime_error("run_experiment: cannot open output file " + config.out_path);
        }
        write_experiment_csv(out, summary);
        if (!out) {
            throw std::runtime_error("run_experiment: failed writing " + config.out_path);
        }
    }
    return summary;
}

Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    Interval interval{std::max(0.0, center - half), std::min(1.0, center + half)};
    // The closed form hits the endpoints exactly at k = 0 and k = n; keep the
    // bounds free of rounding dust there.
    if (failures == 0) interval.lo = 0.0;
    if (failures == trials) interval.hi = 1.0;
    return interval;
}

Crossing estimate_crossing(const std::vector<CurvePoint>& curve_a,
                           const std::vector<CurvePoint>& curve_b) {
    if (curve_a.size() != curve_b.size() || curve_a.size() < 2) {
        throw std::invalid_argument("estimate_crossing: curves must share a grid of >= 2 points");
    }
    for (std::size_t i = 0; i < curve_a.size(); ++i) {
        if (std::abs(curve_a[i].p - curve_b[i].p) > 1e-12) {
            throw std::invalid_argument("estimate_crossing: p grids differ");
        }
    }
    for (std::size_t i = 0; i + 1 < curve_a.size(); ++i) {
        const double d0 = curve_a[i].rate - curve_b[i].rate;
        const double d1 = curve_a[i + 1].rate - curve_b[i + 1].rate;
        if (d0 == 0.0 && d1 == 0.0) continue;
        if (d0 == 0.0) return {curve_a[i].p, curve_a[i].p, curve_a[i + 1].p};
        if (d1 == 0.0) return {curve_a[i + 1].p, curve_a[i].p, curve_a[i + 1].p};
        if ((d0 > 0.0) != (d1 > 0.0)) {
            const double p0 = curve_a[i].p;
            const double p1 = curve_a[i + 1].p;
            return {p0 + (p1 - p0) * d0 / (d0 - d1), p0, p1};
        }
    }
    throw NoCrossingError("estimate_crossing: rate difference never changes sign");
}

std::vector<TimingRow> timing_sweep(LatticeDim lattice,
                                    const std::vector<std::uint32_t>& sizes,
                                    const NoiseParams& params,
                                    GrowthStrategy strategy,
                                    std::uint64_t trials,
                                    std::uint64_t seed,
                                    unsigned threads) {
    if (trials == 0) throw std::invalid_argument("timing_sweep: trials must be >= 1");
    const unsigned workers =
        threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<TimingRow> rows;
    for (std::uint32_t L : sizes) {
        const SyndromeGraph graph =
            lattice == LatticeDim::Torus2D ? build_torus_2d(L) : build_torus_3d(L);
        std::vector<std::unique_ptr<TrialRunner>> owned;
        std::vector<TrialRunner*> runners;
        for (unsigned w = 0; w < workers; ++w) {
            owned.push_back(std::make_unique<TrialRunner>(graph));
            runners.push_back(owned.back().get());
        }
        const std::uint64_t stream_seed = point_seed(seed, L, params.p_e, params.p_z);
        // Warmup pass touches every buffer before anything is timed.
        {
            RngStream rng(stream_seed ^ 0x5a5a5a5a5a5a5a5aull, 0);
            for (int i = 0; i < 16; ++i) runners[0]->run(params, strategy, rng);
        }
        PointTally tally;
        run_block(params, strategy, stream_seed, 0, trials, workers, runners, tally);
        TimingRow row;
        row.lattice = lattice_name(lattice);
        row.L = L;
        row.n = graph.edge_count();
        row.trials = tally.trials;
        row.mean_decode_ns =
            static_cast<double>(tally.decode_ns) / static_cast<double>(tally.trials);
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- CSV -----------------------------------------------------------------

const char* const kExperimentCsvHeader =
    "lattice,L,p_e,p_z,strategy,trials,failures,rate,ci_lo,ci_hi,mean_decode_ns";

std::string format_double(double value) {
    char buf[64];
    // Shortest decimal form that parses back to the identical double.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

void write_experiment_csv(std::ostream& out, const ExperimentSummary& summary) {
    out << kExperimentCsvHeader << '\n';
    for (const auto& row : summary.rows) {
        out << row.lattice << ',' << row.L << ',' << format_double(row.p_e) << ','
            << format_double(row.p_z) << ',' << row.strategy << ',' << row.trials << ','
            << row.failures << ',' << format_double(row.rate) << ',' << format_double(row.ci_lo)
            << ',' << format_double(row.ci_hi) << ',' << format_double(row.mean_decode_ns)
            << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

ExperimentSummary read_experiment_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("read_experiment_csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kExperimentCsvHeader) {
        throw std::runtime_error("read_experiment_csv: unexpected header: " + line);
    }
    ExperimentSummary summary;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 11) {
            throw std::runtime_error("read_experiment_csv: malformed row: " + line);
        }
        SummaryRow row;
        row.lattice = fields[0];
        row.L = static_cast<std::uint32_t>(std::strtoul(fields[1].c_str(), nullptr, 10));
        row.p_e = std::strtod(fields[2].c_str(), nullptr);
        row.p_z = std::strtod(fields[3].c_str(), nullptr);
        row.strategy = fields[4];
        row.trials = std::strtoull(fields[5].c_str(), nullptr, 10);
        row.failures = std::strtoull(fields[6].c_str(), nullptr, 10);
        row.rate = std::strtod(fields[7].c_str(), nullptr);
        row.ci_lo = std::strtod(fields[8].c_str(), nullptr);
        row.ci_hi = std::strtod(fields[9].c_str(), nullptr);
        row.mean_decode_ns = std::strtod(fields[10].c_str(), nullptr);
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

ExperimentSummary read_experiment_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_experiment_csv_file: cannot open " + path);
    }
    return read_experiment_csv(in);
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
    out << "lattice,L,n,trials,mean_decode_ns\n";
    for (const auto& row : rows) {
        out << row.lattice << ',' << row.L << ',' << row.n << ',' << row.trials << ','
            << format_double(row.mean_decode_ns) << '\n';
    }
}

const char* lattice_name(LatticeDim dim) {
    return dim == LatticeDim::Torus2D ? "2d" : "3d";
}

const char* strategy_name(GrowthStrategy strategy) {
    switch (strategy) {
        case GrowthStrategy::UniformNaive: return "naive";
        case GrowthStrategy::UniformFast: return "uniform";
        case GrowthStrategy::WeightedFast: return "weighted";
    }
    return "?";
}

}  // namespace ufd
