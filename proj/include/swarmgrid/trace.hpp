#pragma once

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmgrid/engine.hpp"

namespace swarmgrid {

// Run traces are JSON Lines. Every record carries "type" first:
//   header:    type, algorithm, dims, tick_len_ms, seed, drones[{id,start,dest}], static[{id,cell}]
//   obstacles: type, tick, moving[{id,cell}]            (present moving obstacles after phase 1)
//   drone:     type, tick, drone, mode, cell, action, cause, predictions[{kind,with,cell}]
// Cells are [x,y,z] arrays; one obstacles record precedes the drone records
// of each tick, and drone records follow id order.

std::string trace_header(const SimConfig& cfg, std::span<const StaticObstacle> statics);
std::string trace_obstacles(int tick, std::span<const MovingObstacle> movings);
std::string trace_drone(int tick, const DroneDecision& decision);

struct ReplayDrone {
    int id = 0;
    Cell cell;
    std::string mode;
    std::string action;
};

struct ReplayTick {
    int tick = 0;
    std::vector<std::pair<int, Cell>> moving;
    std::vector<ReplayDrone> drones;
};

struct ReplayTrace {
    Extents dims;
    std::string algorithm;
    std::vector<Cell> statics;
    std::map<int, ReplayTick> ticks;
};

/// Throws ParseError on malformed input.
ReplayTrace read_trace(std::istream& in);

/// ASCII rendering of one tick, one block per z layer (or only `layer`).
/// '.' free, '#' static, 'o' moving obstacle, drones by id in base 36
/// ('*' when the id exceeds one digit).
std::string render_tick(const ReplayTrace& trace, const ReplayTick& tick, std::optional<int> layer = std::nullopt);

}  // namespace swarmgrid
