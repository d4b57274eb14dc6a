#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "swarmgrid/engine.hpp"

namespace swarmgrid {

/// Route metrics for one run (or the mean over runs).
struct Metrics {
    double arl = 0.0;  // mean moves per drone, hovers excluded
    double llr = 0.0;  // longest route in moves
    double nc = 0.0;   // ground-truth collision count
    double t_ms = 0.0; // algorithm wall-clock time

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics compute_metrics(const SimResult& result, double wall_ms);

struct ExperimentSpec {
    int id = 0;
    Extents dims;
    int drones = 0;
    int static_obstacles = 0;
    int moving_obstacles = 0;
};

/// The four built-in experiment designs (small, large, cluttered, high risk).
const std::array<ExperimentSpec, 4>& experiment_specs();
/// Throws InvalidConfig for ids outside 1..4.
const ExperimentSpec& experiment_spec(int id);

/// Uniform random placement: 2N distinct cells for starts and destinations,
/// obstacles on further distinct cells. Throws PlacementFailure when the
/// area is too small.
SimConfig build_experiment(const ExperimentSpec& spec, std::uint64_t seed, Algorithm algorithm = Algorithm::Proposed);

/// Seed of run `run` in a batch.
std::uint64_t run_seed(std::uint64_t base_seed, int run);

struct RunRow {
    int run = 0;  // -1 marks the aggregate row
    Algorithm algorithm = Algorithm::Proposed;
    int experiment = 0;
    Metrics metrics;
    double ticks = 0.0;
    int timeouts = 0;

    friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct BatchResult {
    std::vector<RunRow> runs;
    RunRow mean;  // over runs without a timeout
};

/// Runs n_runs missions with derived seeds. Timed-out runs stay in `runs`
/// with timeouts=1 and are excluded from the mean.
BatchResult run_batch(const ExperimentSpec& spec, Algorithm algorithm, int n_runs, std::uint64_t base_seed);

/// CSV columns: run, algorithm, experiment, ARL, LLR, NC, T_ms, ticks, timeouts.
/// One row per run, then the aggregate row with run = "mean". Without
/// wall-clock timing the T_ms column is written as 0 so output is
/// byte-reproducible.
void write_csv(std::ostream& out, const BatchResult& batch, bool wall_clock = true);

struct ParsedCsv {
    std::vector<RunRow> runs;
    std::optional<RunRow> mean;
};

/// Throws ParseError on malformed input.
ParsedCsv parse_csv(std::istream& in);

}  // namespace swarmgrid
