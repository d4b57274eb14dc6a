#include <chrono>

#include "swarmgrid/baselines.hpp"
#include "swarmgrid/engine.hpp"

namespace swarmgrid {

SimResult run_mission(const SimConfig& cfg, EngineOptions options) {
    if (cfg.algorithm != Algorithm::Proposed) {
        return run_baseline(cfg, options.trace);
    }
    Engine engine(cfg, options);
    const int limit = cfg.effective_max_ticks();
    const auto t0 = std::chrono::steady_clock::now();
    while (!engine.all_arrived() && engine.tick() < limit) {
        engine.run_tick();
    }
    const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return engine.result(!engine.all_arrived(), wall_ms);
}

}  // namespace swarmgrid
