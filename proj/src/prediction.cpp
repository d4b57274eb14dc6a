#include "swarmgrid/prediction.hpp"

#include <algorithm>

namespace swarmgrid {

std::optional<Prediction> rule1(int drone_i, const Cell& cur_i, const Cell& next_i, int drone_j, const Cell& cur_j,
                                const Cell& next_j) {
    if (drone_i == drone_j) {
        return std::nullopt;
    }
    if (next_i == cur_j) {
        return Prediction{ProximityKind::DroneDrone, drone_i, drone_j, cur_j};
    }
    if (next_i == next_j) {
        return Prediction{ProximityKind::DroneDrone, drone_i, drone_j, next_i};
    }
    if (next_j == cur_i) {
        return Prediction{ProximityKind::DroneDrone, drone_i, drone_j, cur_i};
    }
    return std::nullopt;
}

std::optional<Prediction> rule2(int drone_i, const Cell& next_i, int obstacle_id, const Cell& static_cell) {
    if (next_i != static_cell) {
        return std::nullopt;
    }
    return Prediction{ProximityKind::DroneStatic, drone_i, obstacle_id, static_cell};
}

std::optional<Prediction> rule3(int drone_i, const Cell& next_i, int obstacle_id, const Cell& moving_cell) {
    if (next_i != moving_cell) {
        return std::nullopt;
    }
    return Prediction{ProximityKind::DroneMoving, drone_i, obstacle_id, moving_cell};
}

ConflictIndex::ConflictIndex(const WorldSnapshot& snapshot) : snapshot_(snapshot) {
    for (const auto& [id, cell] : snapshot_.drones) {
        by_current_[cell].push_back(id);
    }
}

void ConflictIndex::set_intent(int drone_id, const Cell& next) {
    clear_intent(drone_id);
    intents_[drone_id] = next;
    by_intent_[next].push_back(drone_id);
}

void ConflictIndex::clear_intent(int drone_id) {
    const auto it = intents_.find(drone_id);
    if (it == intents_.end()) {
        return;
    }
    auto& ids = by_intent_[it->second];
    std::erase(ids, drone_id);
    intents_.erase(it);
}

std::optional<Cell> ConflictIndex::intent_of(int drone_id) const {
    const auto it = intents_.find(drone_id);
    if (it == intents_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<Prediction> ConflictIndex::evaluate(int drone_id, const Cell& next,
                                                std::span<const ProximityMatch> matches) const {
    std::vector<Prediction> out;
    const auto self = snapshot_.drones.find(drone_id);
    if (self == snapshot_.drones.end()) {
        return out;
    }
    const Cell cur = self->second;

    // Only drones whose current or intended cell equals next or cur can
    // satisfy Rule 1, so the candidates come from the two cell indexes.
    std::vector<int> candidates;
    auto collect = [&](const auto& index, const Cell& key) {
        const auto it = index.find(key);
        if (it != index.end()) {
            candidates.insert(candidates.end(), it->second.begin(), it->second.end());
        }
    };
    collect(by_current_, next);
    collect(by_intent_, next);
    collect(by_intent_, cur);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const int other : candidates) {
        const auto oc = snapshot_.drones.find(other);
        if (oc == snapshot_.drones.end()) {
            continue;
        }
        const Cell other_next = intent_of(other).value_or(oc->second);
        if (auto p = rule1(drone_id, cur, next, other, oc->second, other_next)) {
            out.push_back(*p);
        }
    }

    for (const auto& m : matches) {
        if (m.subject_id != drone_id) {
            continue;
        }
        if (m.kind == ProximityKind::DroneStatic) {
            const auto it = snapshot_.static_obstacles.find(m.other_id);
            if (it != snapshot_.static_obstacles.end()) {
                if (auto p = rule2(drone_id, next, m.other_id, it->second)) {
                    out.push_back(*p);
                }
            }
        } else if (m.kind == ProximityKind::DroneMoving) {
            const auto it = snapshot_.moving_obstacles.find(m.other_id);
            if (it != snapshot_.moving_obstacles.end()) {
                if (auto p = rule3(drone_id, next, m.other_id, it->second)) {
                    out.push_back(*p);
                }
            }
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Prediction> predict_all(std::span<const ProximityMatch> matches, const IntentTable& intents,
                                    const WorldSnapshot& snapshot) {
    ConflictIndex index(snapshot);
    for (const auto& [id, next] : intents) {
        index.set_intent(id, next);
    }

    std::vector<Prediction> out;
    for (const auto& [id, next] : intents) {
        for (auto p : index.evaluate(id, next, matches)) {
            if (p.kind == ProximityKind::DroneDrone && p.conflicting_id < p.drone_id) {
                std::swap(p.drone_id, p.conflicting_id);
            }
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace swarmgrid
