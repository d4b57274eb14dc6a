#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <variant>

#include "swarmgrid/coordination.hpp"
#include "swarmgrid/entities.hpp"
#include "swarmgrid/prediction.hpp"
#include "swarmgrid/rng.hpp"
#include "swarmgrid/world.hpp"

namespace swarmgrid {

/// Tuning knobs for when avoidance escalates to backtracking and how long a
/// backtrack episode lasts.
struct BacktrackConfig {
    int required_steps = 3;
    int max_attempts = 10;
    int hover_threshold = 5;
    int stall_threshold = 15;

    /// Throws InvalidConfig unless every field is positive.
    void validate() const;
};

struct Redirect {
    Cell next;
};
struct Hover {};
struct EnterBacktrack {};

using AvoidanceAction = std::variant<Redirect, Hover, EnterBacktrack>;

std::string_view action_name(const AvoidanceAction& a);

/// What a deciding drone can query about its surroundings.
struct MoveContext {
    const Area& area;
    const LockTable& locks;
    /// True when moving the drone into the cell would trigger a prediction.
    std::function<bool(const Cell&)> hazard;

    bool usable(int drone_id, const Cell& c) const {
        return area.contains(c) && !hazard(c) && locks.available_to(drone_id, c);
    }
};

/// Progress bookkeeping used for stall detection.
struct StallTracker {
    int best_distance = 0;
    int ticks_without_progress = 0;

    static StallTracker at(int distance) { return {distance, 0}; }
    void observe(int distance);
};

/// The avoidance cascade: redirect to a random usable neighbor (distance
/// reducing first, then distance preserving); otherwise backtrack if the
/// drone has hovered or stalled past its threshold; otherwise hover.
AvoidanceAction avoid(const Drone& drone, const std::optional<Prediction>& cause, const MoveContext& ctx,
                      const StallTracker& stall, Rng& rng, const BacktrackConfig& cfg);

/// One backtrack iteration: a random axis, one step away from the
/// destination along it (a random side when the drone is already aligned
/// with the destination on that axis). Returns the target cell, or nullopt
/// to hover when the step is out of bounds, hazardous or locked. Updates
/// the step and attempt counters.
std::optional<Cell> backtrack_step(Drone& drone, const MoveContext& ctx, Rng& rng);

/// Leaves backtrack mode once enough steps succeeded or attempts ran out.
bool backtrack_exit_check(Drone& drone, const BacktrackConfig& cfg);

}  // namespace swarmgrid
