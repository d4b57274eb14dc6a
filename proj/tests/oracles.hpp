#pragma once

// Brute-force reference implementations used only by the tests. They are
// written independently of the library code they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "swarmgrid/cep.hpp"
#include "swarmgrid/coordination.hpp"
#include "swarmgrid/prediction.hpp"
#include "swarmgrid/rng.hpp"
#include "swarmgrid/world.hpp"

namespace oracle {

using namespace swarmgrid;

// Enumerates every offset of the (2r+1)^3 cube and keeps those with at least
// one zero component, then asks whether `b` is one of them away from `a`.
inline bool near_sharing_axis(const Cell& a, const Cell& b, int reach) {
    for (int dx = -reach; dx <= reach; ++dx) {
        for (int dy = -reach; dy <= reach; ++dy) {
            for (int dz = -reach; dz <= reach; ++dz) {
                if (dx != 0 && dy != 0 && dz != 0) {
                    continue;
                }
                if (Cell{a.x + dx, a.y + dy, a.z + dz} == b) {
                    return true;
                }
            }
        }
    }
    return false;
}

struct TimedEvent {
    Event event;
    std::int64_t t_ms = 0;
};

inline std::int64_t keep_ms(const Event& e, const Retention& r) {
    if (std::holds_alternative<DroneLocEvent>(e)) {
        return r.drone_ms;
    }
    if (std::holds_alternative<SObsEvent>(e)) {
        return r.static_ms;
    }
    return r.moving_ms;
}

inline std::optional<ProximityMatch> pair_match(const Event& arriving, const Event& stored) {
    const auto* da = std::get_if<DroneLocEvent>(&arriving);
    const auto* ds = std::get_if<DroneLocEvent>(&stored);
    if (da != nullptr && ds != nullptr) {
        if (da->drone_id != ds->drone_id && near_sharing_axis(da->cell, ds->cell, 2)) {
            return ProximityMatch{ProximityKind::DroneDrone, da->drone_id, ds->drone_id, da->cell, ds->cell};
        }
        return std::nullopt;
    }
    const DroneLocEvent* drone = da != nullptr ? da : ds;
    const Event& other = da != nullptr ? stored : arriving;
    if (drone == nullptr) {
        return std::nullopt;
    }
    if (const auto* s = std::get_if<SObsEvent>(&other)) {
        if (near_sharing_axis(drone->cell, s->cell, 1)) {
            return ProximityMatch{ProximityKind::DroneStatic, drone->drone_id, s->obstacle_id, drone->cell, s->cell};
        }
    } else if (const auto* m = std::get_if<MObsEvent>(&other)) {
        if (near_sharing_axis(drone->cell, m->cell, 2)) {
            return ProximityMatch{ProximityKind::DroneMoving, drone->drone_id, m->obstacle_id, drone->cell, m->cell};
        }
    }
    return std::nullopt;
}

// For each arrival, every earlier event still inside its window is joined
// with it. Quadratic in the sequence length.
inline std::vector<std::vector<ProximityMatch>> cep_matches(const std::vector<TimedEvent>& seq,
                                                            const Retention& r = {}) {
    std::vector<std::vector<ProximityMatch>> out(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (seq[k].t_ms - seq[j].t_ms >= keep_ms(seq[j].event, r)) {
                continue;
            }
            if (auto m = pair_match(seq[k].event, seq[j].event)) {
                out[k].push_back(*m);
            }
        }
        std::sort(out[k].begin(), out[k].end());
    }
    return out;
}

inline std::vector<TimedEvent> random_sequence(Rng& rng, std::size_t n, int extent) {
    std::vector<TimedEvent> seq;
    std::int64_t t = 0;
    auto cell = [&] {
        return Cell{static_cast<int>(rng.below(extent)), static_cast<int>(rng.below(extent)),
                    static_cast<int>(rng.below(extent))};
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.chance(0.3)) {
            t += static_cast<std::int64_t>(rng.below(400));
        }
        const auto kind = rng.below(10);
        if (kind < 6) {
            seq.push_back({DroneLocEvent{static_cast<int>(rng.below(12)) + 1, cell(), t}, t});
        } else if (kind < 8) {
            seq.push_back({SObsEvent{static_cast<int>(rng.below(12)) + 1, cell()}, t});
        } else {
            seq.push_back({MObsEvent{static_cast<int>(rng.below(12)) + 1, cell(), t}, t});
        }
    }
    return seq;
}

// Exact shortest path length on the 6-connected grid, or nullopt.
inline std::optional<int> bfs_distance(const Area& area, const std::set<Cell>& blocked, const Cell& start,
                                       const Cell& dest) {
    std::map<Cell, int> dist{{start, 0}};
    std::queue<Cell> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
        const Cell c = frontier.front();
        frontier.pop();
        if (c == dest) {
            return dist[c];
        }
        for (int axis = 0; axis < 3; ++axis) {
            for (int delta : {-1, 1}) {
                Cell n = c;
                n[axis] += delta;
                if (!area.contains(n) || blocked.contains(n) || dist.contains(n)) {
                    continue;
                }
                dist[n] = dist[c] + 1;
                frontier.push(n);
            }
        }
    }
    return std::nullopt;
}

// Unordered drone pairs with an intent conflict, by direct comparison over
// every pair.
inline std::set<std::pair<int, int>> intent_conflicts(const IntentTable& intents,
                                                      const std::map<int, Cell>& current) {
    std::set<std::pair<int, int>> out;
    for (const auto& [i, next_i] : intents) {
        for (const auto& [j, next_j] : intents) {
            if (j <= i) {
                continue;
            }
            if (next_i == current.at(j) || next_i == next_j || next_j == current.at(i)) {
                out.insert({i, j});
            }
        }
    }
    return out;
}

// Drives a LockTable with random acquire, release and arbitrate calls and
// mirrors every operation in a plain map. Returns the number of operations
// after which the table disagreed with the model or a cell had two holders.
inline long lock_model_violations(std::uint64_t seed, long operations) {
    Rng rng(seed);
    LockTable table;
    std::map<Cell, int> model;
    long violations = 0;
    constexpr int kDrones = 16;
    auto random_cell = [&] {
        return Cell{static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)), static_cast<int>(rng.below(2))};
    };
    for (long op = 0; op < operations; ++op) {
        const auto kind = rng.below(3);
        if (kind == 0) {
            const int id = 1 + static_cast<int>(rng.below(kDrones));
            const Cell c = random_cell();
            const auto it = model.find(c);
            const bool expect = it == model.end() || it->second == id;
            if (table.try_acquire(id, c) != expect) {
                ++violations;
            }
            if (expect) {
                model[c] = id;
            }
        } else if (kind == 1) {
            const int id = 1 + static_cast<int>(rng.below(kDrones));
            const Cell c = random_cell();
            const auto it = model.find(c);
            const bool holds = it != model.end() && it->second == id;
            try {
                table.release(id, c);
                if (!holds) {
                    ++violations;
                }
                model.erase(c);
            } catch (const NotHolder&) {
                if (holds) {
                    ++violations;
                }
            }
        } else {
            // One request per drone, as in a tick.
            std::vector<LockRequest> requests;
            std::set<int> ids;
            const auto n = 1 + rng.below(6);
            for (std::uint64_t i = 0; i < n; ++i) {
                const int id = 1 + static_cast<int>(rng.below(kDrones));
                if (ids.insert(id).second) {
                    requests.push_back({id, random_cell()});
                }
            }
            const auto granted = arbitrate(table, requests, rng);
            // Requests for a free cell must produce exactly one winner;
            // requests for a cell held by someone else must all lose.
            std::map<Cell, int> winners;
            std::map<Cell, bool> requested_free;
            for (const auto& r : requests) {
                const auto it = model.find(r.cell);
                const bool ok = granted.at(r.drone_id);
                if (it == model.end()) {
                    requested_free[r.cell] = true;
                    if (ok) {
                        ++winners[r.cell];
                    }
                } else if (ok != (it->second == r.drone_id)) {
                    ++violations;
                }
            }
            for (const auto& [c, unused] : requested_free) {
                if (winners[c] != 1) {
                    ++violations;
                }
            }
            for (const auto& r : requests) {
                if (granted.at(r.drone_id)) {
                    model.try_emplace(r.cell, r.drone_id);
                }
            }
        }
        bool agree = table.consistent() && table.size() == model.size();
        for (const auto& [c, id] : model) {
            agree = agree && table.holder(c) == id;
        }
        if (!agree) {
            ++violations;
        }
    }
    return violations;
}

}  // namespace oracle
