#include "swarmgrid/entities.hpp"

#include <array>
#include <unordered_map>

namespace swarmgrid {

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Normal:
            return "normal";
        case Mode::Hover:
            return "hover";
        case Mode::Backtrack:
            return "backtrack";
    }
    return "unknown";
}

Drone Drone::launch(int id, Cell start, Cell dest) {
    Drone d;
    d.id = id;
    d.start = start;
    d.dest = dest;
    d.route.push_back(start);
    d.arrived = start == dest;
    return d;
}

Drone record_move(Drone d, const Cell& next) {
    const Cell cur = d.current();
    if (next == cur) {
        ++d.hover_streak;
    } else if (axis_adjacent(cur, next)) {
        d.hover_streak = 0;
    } else {
        throw IllegalMove("drone " + std::to_string(d.id) + " cannot move from " + to_string(cur) +
                          " to " + to_string(next));
    }
    d.route.push_back(next);
    return d;
}

int count_moves(const std::vector<Cell>& route) {
    int moves = 0;
    for (std::size_t i = 1; i < route.size(); ++i) {
        if (route[i] != route[i - 1]) {
            ++moves;
        }
    }
    return moves;
}

MovingObstacle step_moving_obstacle(MovingObstacle o, int tick, Rng& rng, const Area& area,
                                    const CellSet& occupied_drone_cells, bool avoid_drones) {
    if (!o.present_at(tick)) {
        return o;
    }
    const int age = tick - o.spawn_tick;
    if (age <= 0 || age % o.cadence != 0) {
        return o;
    }

    Step step = kAxisSteps[rng.below(kAxisSteps.size())];
    if (avoid_drones && occupied_drone_cells.contains(shifted(o.cell, step))) {
        std::array<Step, 6> free{};
        std::size_t n_free = 0;
        for (const auto& s : kAxisSteps) {
            if (!occupied_drone_cells.contains(shifted(o.cell, s))) {
                free[n_free++] = s;
            }
        }
        if (n_free == 0) {
            return o;
        }
        step = free[rng.below(n_free)];
    }

    const Cell target = shifted(o.cell, step);
    if (area.contains(target)) {
        o.cell = target;
    } else {
        o.alive = false;
    }
    return o;
}

void check_swarm(const std::vector<Drone>& drones) {
    std::unordered_map<int, int> ids;
    CellSet cells;
    for (const auto& d : drones) {
        if (!ids.emplace(d.id, 0).second) {
            throw InvalidConfig("duplicate drone id " + std::to_string(d.id));
        }
        if (!cells.insert(d.current()).second) {
            throw EngineInvariantViolation("two drones share cell " + to_string(d.current()));
        }
    }
}

}  // namespace swarmgrid
