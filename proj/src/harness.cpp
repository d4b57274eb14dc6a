#include "swarmgrid/harness.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "swarmgrid/rng.hpp"

namespace swarmgrid {

Metrics compute_metrics(const SimResult& result, double wall_ms) {
    Metrics m;
    if (!result.routes.empty()) {
        double total = 0.0;
        int longest = 0;
        for (const auto& r : result.routes) {
            const int moves = count_moves(r);
            total += moves;
            longest = std::max(longest, moves);
        }
        m.arl = total / static_cast<double>(result.routes.size());
        m.llr = longest;
    }
    m.nc = static_cast<double>(result.collisions.size());
    m.t_ms = wall_ms;
    return m;
}

const std::array<ExperimentSpec, 4>& experiment_specs() {
    static const std::array<ExperimentSpec, 4> kSpecs{{
        {1, {10, 10, 10}, 20, 20, 20},
        {2, {20, 20, 20}, 50, 50, 50},
        {3, {10, 10, 10}, 20, 40, 40},
        {4, {20, 20, 20}, 100, 50, 50},
    }};
    return kSpecs;
}

const ExperimentSpec& experiment_spec(int id) {
    if (id < 1 || id > 4) {
        throw InvalidConfig("experiment id must be 1..4");
    }
    return experiment_specs()[static_cast<std::size_t>(id - 1)];
}

SimConfig build_experiment(const ExperimentSpec& spec, std::uint64_t seed, Algorithm algorithm) {
    SimConfig cfg;
    cfg.area.dims = spec.dims;
    cfg.seed = seed;
    cfg.algorithm = algorithm;
    const Area area = cfg.area.build();

    const std::size_t needed = 2 * static_cast<std::size_t>(spec.drones) +
                               static_cast<std::size_t>(spec.static_obstacles) +
                               static_cast<std::size_t>(spec.moving_obstacles);
    if (needed > area.volume()) {
        throw PlacementFailure("experiment " + std::to_string(spec.id) + " needs " + std::to_string(needed) +
                               " distinct cells but the area has " + std::to_string(area.volume()));
    }

    // Partial Fisher-Yates over cell indices yields distinct placements.
    Rng rng = Rng(seed).fork(0x91ACE);
    std::vector<std::size_t> cells(area.volume());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i] = i;
    }
    for (std::size_t i = 0; i < needed; ++i) {
        std::swap(cells[i], cells[i + rng.below(cells.size() - i)]);
    }
    std::size_t next = 0;
    auto take = [&] { return area.cell_at(cells[next++]); };

    for (int i = 0; i < spec.drones; ++i) {
        const Cell start = take();
        const Cell dest = take();
        cfg.drones.push_back({start, dest});
    }
    for (int i = 0; i < spec.static_obstacles; ++i) {
        cfg.static_obstacles.push_back(take());
    }
    for (int i = 0; i < spec.moving_obstacles; ++i) {
        cfg.moving_obstacles.push_back({take(), 5, 0});
    }
    cfg.validate();
    return cfg;
}

std::uint64_t run_seed(std::uint64_t base_seed, int run) {
    return splitmix64(base_seed ^ splitmix64(static_cast<std::uint64_t>(run) + 1));
}

BatchResult run_batch(const ExperimentSpec& spec, Algorithm algorithm, int n_runs, std::uint64_t base_seed) {
    BatchResult batch;
    batch.mean.run = -1;
    batch.mean.algorithm = algorithm;
    batch.mean.experiment = spec.id;

    int completed = 0;
    for (int run = 0; run < n_runs; ++run) {
        const SimConfig cfg = build_experiment(spec, run_seed(base_seed, run), algorithm);
        const SimResult result = run_mission(cfg);
        RunRow row;
        row.run = run;
        row.algorithm = algorithm;
        row.experiment = spec.id;
        row.metrics = compute_metrics(result, result.wall_ms);
        row.ticks = result.ticks;
        row.timeouts = result.timed_out ? 1 : 0;
        batch.runs.push_back(row);

        if (result.timed_out) {
            ++batch.mean.timeouts;
            continue;
        }
        ++completed;
        batch.mean.metrics.arl += row.metrics.arl;
        batch.mean.metrics.llr += row.metrics.llr;
        batch.mean.metrics.nc += row.metrics.nc;
        batch.mean.metrics.t_ms += row.metrics.t_ms;
        batch.mean.ticks += row.ticks;
    }
    if (completed > 0) {
        const double n = completed;
        batch.mean.metrics.arl /= n;
        batch.mean.metrics.llr /= n;
        batch.mean.metrics.nc /= n;
        batch.mean.metrics.t_ms /= n;
        batch.mean.ticks /= n;
    }
    return batch;
}

namespace {

constexpr const char* kCsvHeader = "run,algorithm,experiment,ARL,LLR,NC,T_ms,ticks,timeouts";

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError("bad number '" + s + "' in CSV");
    }
    return v;
}

void write_row(std::ostream& out, const RunRow& r, bool wall_clock) {
    out << (r.run < 0 ? std::string("mean") : std::to_string(r.run)) << ',' << to_string(r.algorithm) << ','
        << r.experiment << ',' << format_number(r.metrics.arl) << ',' << format_number(r.metrics.llr) << ','
        << format_number(r.metrics.nc) << ',' << format_number(wall_clock ? r.metrics.t_ms : 0.0) << ','
        << format_number(r.ticks) << ',' << r.timeouts << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const BatchResult& batch, bool wall_clock) {
    out << kCsvHeader << '\n';
    for (const auto& r : batch.runs) {
        write_row(out, r, wall_clock);
    }
    write_row(out, batch.mean, wall_clock);
}

ParsedCsv parse_csv(std::istream& in) {
    ParsedCsv parsed;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ParseError("CSV header mismatch");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (fields.size() != 9) {
            throw ParseError("CSV row has " + std::to_string(fields.size()) + " fields, expected 9");
        }
        RunRow r;
        r.run = fields[0] == "mean" ? -1 : static_cast<int>(parse_number(fields[0]));
        try {
            r.algorithm = parse_algorithm(fields[1]);
        } catch (const InvalidConfig& e) {
            throw ParseError(e.what());
        }
        r.experiment = static_cast<int>(parse_number(fields[2]));
        r.metrics.arl = parse_number(fields[3]);
        r.metrics.llr = parse_number(fields[4]);
        r.metrics.nc = parse_number(fields[5]);
        r.metrics.t_ms = parse_number(fields[6]);
        r.ticks = parse_number(fields[7]);
        r.timeouts = static_cast<int>(parse_number(fields[8]));
        if (r.run < 0) {
            parsed.mean = r;
        } else {
            parsed.runs.push_back(r);
        }
    }
    return parsed;
}

}  // namespace swarmgrid
