#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "swarmgrid/engine.hpp"
#include "swarmgrid/harness.hpp"
#include "swarmgrid/scenario.hpp"
#include "swarmgrid/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTimeout = 2;

void print_metrics(const swarmgrid::Metrics& m, double ticks) {
    std::cout << "ARL=" << m.arl << " LLR=" << m.llr << " NC=" << m.nc << " T_ms=" << m.t_ms << " ticks=" << ticks
              << '\n';
}

int cmd_run(const std::string& scenario, const std::string& trace_path, const std::string& match_path) {
    const auto cfg = swarmgrid::load_scenario(scenario);
    std::ofstream match_out;
    swarmgrid::EngineOptions options;
    options.trace = !trace_path.empty();
    if (!match_path.empty()) {
        match_out.open(match_path);
        options.match_trace = &match_out;
    }
    const auto result = swarmgrid::run_mission(cfg, options);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        for (const auto& line : result.trace) {
            out << line << '\n';
        }
    }
    print_metrics(swarmgrid::compute_metrics(result, result.wall_ms), result.ticks);
    for (const auto& c : result.collisions) {
        std::cout << "collision tick=" << c.tick << " kind=" << swarmgrid::to_string(c.kind) << " " << c.first
                  << "/" << c.second << " at " << c.cell << '\n';
    }
    if (result.timed_out) {
        std::cerr << "timeout: not every drone reached its destination within " << cfg.effective_max_ticks()
                  << " ticks\n";
        return kExitTimeout;
    }
    return kExitOk;
}

int cmd_experiment(int id, const std::string& algorithm, int runs, std::uint64_t seed, const std::string& out_path,
                   bool no_wall_clock) {
    const auto& spec = swarmgrid::experiment_spec(id);
    const auto batch = swarmgrid::run_batch(spec, swarmgrid::parse_algorithm(algorithm), runs, seed);
    if (out_path.empty() || out_path == "-") {
        swarmgrid::write_csv(std::cout, batch, !no_wall_clock);
    } else {
        std::ofstream out(out_path);
        swarmgrid::write_csv(out, batch, !no_wall_clock);
        print_metrics(batch.mean.metrics, batch.mean.ticks);
    }
    if (batch.mean.timeouts > 0) {
        std::cerr << batch.mean.timeouts << " run(s) timed out\n";
        return kExitTimeout;
    }
    return kExitOk;
}

int cmd_replay(const std::string& trace_path, std::optional<int> layer, std::optional<int> only_tick) {
    std::ifstream in(trace_path);
    if (!in) {
        throw swarmgrid::ParseError("cannot open trace " + trace_path);
    }
    const auto trace = swarmgrid::read_trace(in);
    for (const auto& [tick, frame] : trace.ticks) {
        if (only_tick && *only_tick != tick) {
            continue;
        }
        std::cout << swarmgrid::render_tick(trace, frame, layer) << '\n';
    }
    return kExitOk;
}

int cmd_generate(int id, std::uint64_t seed, const std::string& algorithm, const std::string& out_path) {
    const auto cfg = swarmgrid::build_experiment(swarmgrid::experiment_spec(id), seed,
                                                 swarmgrid::parse_algorithm(algorithm));
    if (out_path.empty() || out_path == "-") {
        std::cout << swarmgrid::dump_scenario(cfg) << '\n';
    } else {
        std::ofstream(out_path) << swarmgrid::dump_scenario(cfg) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarmgrid: online collision-free navigation for UAV swarms on a 3D grid"};
    app.require_subcommand(1);

    std::string scenario;
    std::string trace_path;
    std::string match_path;
    auto* run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("--scenario", scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run->add_option("--trace", trace_path, "Write the JSON Lines run trace here");
    run->add_option("--match-trace", match_path, "Write tab-separated proximity matches here");

    int exp_id = 1;
    std::string algorithm = "proposed";
    int runs = 10;
    std::uint64_t seed = 1;
    std::string out_path;
    bool no_wall_clock = false;
    auto* exp = app.add_subcommand("experiment", "Run a built-in experiment batch");
    exp->add_option("--id", exp_id, "Experiment id")->required()->check(CLI::Range(1, 4));
    exp->add_option("--algorithm", algorithm, "proposed | rrt | rrt-star")
        ->capture_default_str()
        ->check(CLI::IsMember({"proposed", "rrt", "rrt-star"}));
    exp->add_option("--runs", runs, "Number of runs")->capture_default_str()->check(CLI::PositiveNumber);
    exp->add_option("--seed", seed, "Base seed")->capture_default_str();
    exp->add_option("--out", out_path, "CSV output file ('-' for stdout)");
    exp->add_flag("--no-wall-clock", no_wall_clock, "Write T_ms as 0 for byte-reproducible output");

    std::string replay_path;
    std::optional<int> layer;
    std::optional<int> only_tick;
    auto* replay = app.add_subcommand("replay", "Print ASCII grid slices from a trace");
    replay->add_option("--trace", replay_path, "Trace file")->required()->check(CLI::ExistingFile);
    replay->add_option("--layer", layer, "Only this z layer");
    replay->add_option("--tick", only_tick, "Only this tick");

    int gen_id = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_algorithm = "proposed";
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "Write a built-in experiment placement as a scenario file");
    gen->add_option("--id", gen_id, "Experiment id")->required()->check(CLI::Range(1, 4));
    gen->add_option("--seed", gen_seed, "Placement seed")->capture_default_str();
    gen->add_option("--algorithm", gen_algorithm, "proposed | rrt | rrt-star")
        ->capture_default_str()
        ->check(CLI::IsMember({"proposed", "rrt", "rrt-star"}));
    gen->add_option("--out", gen_out, "Scenario output file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(scenario, trace_path, match_path);
        }
        if (*exp) {
            return cmd_experiment(exp_id, algorithm, runs, seed, out_path, no_wall_clock);
        }
        if (*replay) {
            return cmd_replay(replay_path, layer, only_tick);
        }
        if (*gen) {
            return cmd_generate(gen_id, gen_seed, gen_algorithm, gen_out);
        }
    } catch (const swarmgrid::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
