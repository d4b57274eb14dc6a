#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "swarmgrid/rng.hpp"
#include "swarmgrid/world.hpp"

namespace swarmgrid {

enum class Mode { Normal, Hover, Backtrack };

std::string_view to_string(Mode m);

struct BacktrackState {
    int steps_done = 0;
    int attempts = 0;
};

/// A swarm member. The route always starts at `start` and ends at the
/// current cell; consecutive entries are equal (hover) or axis-adjacent.
struct Drone {
    int id = 0;
    Cell start;
    Cell dest;
    Mode mode = Mode::Normal;
    std::vector<Cell> route;
    int hover_streak = 0;
    BacktrackState backtrack;
    bool arrived = false;

    static Drone launch(int id, Cell start, Cell dest);

    const Cell& current() const { return route.back(); }
    int distance_to_dest() const { return manhattan(current(), dest); }
};

/// Extends the route by one entry. Throws IllegalMove unless `next` is the
/// current cell or axis-adjacent to it.
Drone record_move(Drone d, const Cell& next);

/// Number of non-hover transitions in a route.
int count_moves(const std::vector<Cell>& route);

struct StaticObstacle {
    int id = 0;
    Cell cell;
};

struct MovingObstacle {
    int id = 0;
    Cell cell;
    int cadence = 5;  // ticks per move
    int spawn_tick = 0;
    bool alive = true;

    bool present_at(int tick) const { return alive && tick >= spawn_tick; }
};

using CellSet = std::unordered_set<Cell, CellHash>;

/// Advances a moving obstacle by at most one random axis step. Off-cadence
/// ticks leave it unchanged; a step leaving the area kills it. With
/// `avoid_drones`, a drawn step onto a drone cell is re-drawn among the
/// remaining directions, and the obstacle hovers if none is free.
MovingObstacle step_moving_obstacle(MovingObstacle o, int tick, Rng& rng, const Area& area,
                                    const CellSet& occupied_drone_cells, bool avoid_drones);

/// Throws InvalidConfig on duplicate ids, and EngineInvariantViolation if two
/// unfinished-or-parked drones share a cell.
void check_swarm(const std::vector<Drone>& drones);

}  // namespace swarmgrid
