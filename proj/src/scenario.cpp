#include "swarmgrid/scenario.hpp"

#include <fstream>

#include "json.hpp"

namespace swarmgrid {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

Cell to_cell(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError("cells are [x, y, z] integer arrays");
    }
    return Cell{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

ojson from_cell(const Cell& c) { return ojson::array({c.x, c.y, c.z}); }

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (const auto it = j.find(key); it != j.end()) {
        out = it->get<T>();
    }
}

}  // namespace

SimConfig parse_scenario(std::istream& in) {
    SimConfig cfg;
    try {
        const json j = json::parse(in);
        const json& area = j.at("area");
        const json& dims = area.at("dims");
        if (!dims.is_array() || dims.size() != 3) {
            throw ParseError("area.dims must be a 3-element array");
        }
        cfg.area.dims = Extents{dims[0].get<int>(), dims[1].get<int>(), dims[2].get<int>()};
        read_opt(area, "spacing_m", cfg.area.spacing_m);
        read_opt(area, "sensing_range_m", cfg.area.sensing_range_m);
        read_opt(area, "speed_mps", cfg.area.speed_mps);
        read_opt(area, "latency_s", cfg.area.latency_s);
        read_opt(area, "processing_s", cfg.area.processing_s);

        read_opt(j, "tick_len_ms", cfg.tick_len_ms);
        read_opt(j, "seed", cfg.seed);
        if (const auto it = j.find("max_ticks"); it != j.end() && !it->is_null()) {
            cfg.max_ticks = it->get<int>();
        }
        read_opt(j, "obstacles_avoid_drones", cfg.obstacles_avoid_drones);
        read_opt(j, "detection_radius", cfg.detection_radius);
        if (const auto it = j.find("algorithm"); it != j.end()) {
            cfg.algorithm = parse_algorithm(it->get<std::string>());
        }
        if (const auto it = j.find("backtrack"); it != j.end()) {
            read_opt(*it, "required_steps", cfg.backtrack.required_steps);
            read_opt(*it, "max_attempts", cfg.backtrack.max_attempts);
            read_opt(*it, "hover_threshold", cfg.backtrack.hover_threshold);
            read_opt(*it, "stall_threshold", cfg.backtrack.stall_threshold);
        }
        if (const auto it = j.find("planner"); it != j.end()) {
            read_opt(*it, "max_iters", cfg.planner.max_iters);
            read_opt(*it, "goal_bias", cfg.planner.goal_bias);
            read_opt(*it, "rewire_radius", cfg.planner.rewire_radius);
        }
        for (const auto& d : j.at("drones")) {
            cfg.drones.push_back({to_cell(d.at("start")), to_cell(d.at("dest"))});
        }
        if (const auto it = j.find("static_obstacles"); it != j.end()) {
            for (const auto& c : *it) {
                cfg.static_obstacles.push_back(to_cell(c));
            }
        }
        if (const auto it = j.find("moving_obstacles"); it != j.end()) {
            for (const auto& m : *it) {
                MovingObstacleSpec spec;
                spec.cell = to_cell(m.at("cell"));
                read_opt(m, "cadence", spec.cadence);
                read_opt(m, "spawn_tick", spec.spawn_tick);
                cfg.moving_obstacles.push_back(spec);
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

SimConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file " + path.string());
    }
    return parse_scenario(in);
}

std::string dump_scenario(const SimConfig& cfg) {
    ojson j;
    j["area"] = ojson{{"dims", ojson::array({cfg.area.dims.x, cfg.area.dims.y, cfg.area.dims.z})},
                      {"spacing_m", cfg.area.spacing_m},
                      {"sensing_range_m", cfg.area.sensing_range_m},
                      {"speed_mps", cfg.area.speed_mps},
                      {"latency_s", cfg.area.latency_s},
                      {"processing_s", cfg.area.processing_s}};
    j["tick_len_ms"] = cfg.tick_len_ms;
    j["seed"] = cfg.seed;
    j["max_ticks"] = cfg.effective_max_ticks();
    j["algorithm"] = std::string(to_string(cfg.algorithm));
    j["obstacles_avoid_drones"] = cfg.obstacles_avoid_drones;
    j["detection_radius"] = cfg.detection_radius;
    j["backtrack"] = ojson{{"required_steps", cfg.backtrack.required_steps},
                           {"max_attempts", cfg.backtrack.max_attempts},
                           {"hover_threshold", cfg.backtrack.hover_threshold},
                           {"stall_threshold", cfg.backtrack.stall_threshold}};
    j["planner"] = ojson{{"max_iters", cfg.planner.max_iters},
                         {"goal_bias", cfg.planner.goal_bias},
                         {"rewire_radius", cfg.planner.rewire_radius}};
    ojson drones = ojson::array();
    for (const auto& d : cfg.drones) {
        drones.push_back(ojson{{"start", from_cell(d.start)}, {"dest", from_cell(d.dest)}});
    }
    j["drones"] = std::move(drones);
    ojson statics = ojson::array();
    for (const auto& c : cfg.static_obstacles) {
        statics.push_back(from_cell(c));
    }
    j["static_obstacles"] = std::move(statics);
    ojson movings = ojson::array();
    for (const auto& m : cfg.moving_obstacles) {
        movings.push_back(ojson{{"cell", from_cell(m.cell)}, {"cadence", m.cadence}, {"spawn_tick", m.spawn_tick}});
    }
    j["moving_obstacles"] = std::move(movings);
    return j.dump(2);
}

}  // namespace swarmgrid
