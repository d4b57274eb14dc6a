#pragma once

#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "swarmgrid/cep.hpp"
#include "swarmgrid/world.hpp"

namespace swarmgrid {

struct Prediction {
    ProximityKind kind = ProximityKind::DroneDrone;
    int drone_id = 0;
    int conflicting_id = 0;
    Cell conflict_cell;

    friend auto operator<=>(const Prediction&, const Prediction&) = default;
};

/// Desired next cell per drone for the current tick.
using IntentTable = std::map<int, Cell>;

/// Current positions the rules are evaluated against.
struct WorldSnapshot {
    std::map<int, Cell> drones;
    std::map<int, Cell> static_obstacles;
    std::map<int, Cell> moving_obstacles;  // present obstacles only
};

/// Drone i collides with drone j if i heads into j's cell, both head into the
/// same cell, or j heads into i's cell.
std::optional<Prediction> rule1(int drone_i, const Cell& cur_i, const Cell& next_i, int drone_j, const Cell& cur_j,
                                const Cell& next_j);
std::optional<Prediction> rule2(int drone_i, const Cell& next_i, int obstacle_id, const Cell& static_cell);
std::optional<Prediction> rule3(int drone_i, const Cell& next_i, int obstacle_id, const Cell& moving_cell);

/// Incremental rule evaluator used inside a tick. Drone-drone conflicts are
/// checked against every drone (not only CEP-matched ones); obstacle
/// conflicts only against obstacles the drone's proximity matches name.
class ConflictIndex {
public:
    explicit ConflictIndex(const WorldSnapshot& snapshot);

    void set_intent(int drone_id, const Cell& next);
    void clear_intent(int drone_id);

    /// Predictions for `drone_id` heading into `next`, sorted.
    std::vector<Prediction> evaluate(int drone_id, const Cell& next,
                                     std::span<const ProximityMatch> matches) const;

    const WorldSnapshot& snapshot() const { return snapshot_; }
    std::optional<Cell> intent_of(int drone_id) const;

private:
    const WorldSnapshot& snapshot_;
    std::unordered_map<Cell, std::vector<int>, CellHash> by_current_;
    std::unordered_map<Cell, std::vector<int>, CellHash> by_intent_;
    std::map<int, Cell> intents_;
};

/// Applies the three rules to every match and to every pair of drones with
/// intents. Drone-drone predictions are reported once per unordered pair
/// (lower id as drone_id); output is sorted and deduplicated.
std::vector<Prediction> predict_all(std::span<const ProximityMatch> matches, const IntentTable& intents,
                                    const WorldSnapshot& snapshot);

}  // namespace swarmgrid
