#include "swarmgrid/avoidance.hpp"

#include <vector>

namespace swarmgrid {

void BacktrackConfig::validate() const {
    if (required_steps <= 0 || max_attempts <= 0 || hover_threshold <= 0 || stall_threshold <= 0) {
        throw InvalidConfig("backtrack configuration values must be positive");
    }
}

std::string_view action_name(const AvoidanceAction& a) {
    struct Visitor {
        std::string_view operator()(const Redirect&) const { return "redirect"; }
        std::string_view operator()(const Hover&) const { return "hover"; }
        std::string_view operator()(const EnterBacktrack&) const { return "enter-backtrack"; }
    };
    return std::visit(Visitor{}, a);
}

void StallTracker::observe(int distance) {
    if (distance < best_distance) {
        best_distance = distance;
        ticks_without_progress = 0;
    } else {
        ++ticks_without_progress;
    }
}

AvoidanceAction avoid(const Drone& drone, const std::optional<Prediction>& /*cause*/, const MoveContext& ctx,
                      const StallTracker& stall, Rng& rng, const BacktrackConfig& cfg) {
    const Cell cur = drone.current();
    const int here = manhattan(cur, drone.dest);

    std::vector<Cell> closer;
    std::vector<Cell> level;
    for (const auto& n : ctx.area.neighbors(cur)) {
        if (!ctx.usable(drone.id, n)) {
            continue;
        }
        const int d = manhattan(n, drone.dest);
        if (d < here) {
            closer.push_back(n);
        } else if (d == here) {
            level.push_back(n);
        }
    }
    if (!closer.empty()) {
        return Redirect{closer[rng.below(closer.size())]};
    }
    if (!level.empty()) {
        return Redirect{level[rng.below(level.size())]};
    }
    if (drone.hover_streak >= cfg.hover_threshold || stall.ticks_without_progress >= cfg.stall_threshold) {
        return EnterBacktrack{};
    }
    return Hover{};
}

std::optional<Cell> backtrack_step(Drone& drone, const MoveContext& ctx, Rng& rng) {
    ++drone.backtrack.attempts;
    const int axis = static_cast<int>(rng.below(3));
    const Cell cur = drone.current();
    Cell away = cur;
    if (cur[axis] == drone.dest[axis]) {
        // Either direction increases the distance on an aligned axis.
        away[axis] += rng.below(2) == 0 ? -1 : 1;
    } else {
        away[axis] += cur[axis] > drone.dest[axis] ? 1 : -1;
    }
    if (!ctx.usable(drone.id, away)) {
        return std::nullopt;
    }
    ++drone.backtrack.steps_done;
    return away;
}

bool backtrack_exit_check(Drone& drone, const BacktrackConfig& cfg) {
    if (drone.backtrack.steps_done >= cfg.required_steps || drone.backtrack.attempts >= cfg.max_attempts) {
        drone.backtrack = {};
        drone.mode = Mode::Normal;
        return true;
    }
    return false;
}

}  // namespace swarmgrid
