#include "swarmgrid/cep.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace swarmgrid {
namespace {

// Closed-interval box plus the shared-coordinate clause of the queries.
bool proximity(const Cell& a, const Cell& b, int reach) {
    const bool in_box = std::abs(a.x - b.x) <= reach && std::abs(a.y - b.y) <= reach &&
                        std::abs(a.z - b.z) <= reach;
    return in_box && (a.x == b.x || a.y == b.y || a.z == b.z);
}

}  // namespace

std::string_view to_string(ProximityKind k) {
    switch (k) {
        case ProximityKind::DroneDrone:
            return "drone-drone";
        case ProximityKind::DroneStatic:
            return "drone-static";
        case ProximityKind::DroneMoving:
            return "drone-moving";
    }
    return "unknown";
}

bool match_drone_drone(const DroneLocEvent& a, const DroneLocEvent& b) {
    return a.drone_id != b.drone_id && proximity(a.cell, b.cell, 2);
}

bool match_drone_static(const DroneLocEvent& a, const SObsEvent& o) { return proximity(a.cell, o.cell, 1); }

bool match_drone_moving(const DroneLocEvent& a, const MObsEvent& o) { return proximity(a.cell, o.cell, 2); }

std::string format_match_line(std::int64_t tick, const ProximityMatch& m) {
    std::ostringstream os;
    os << tick << '\t' << to_string(m.kind) << '\t' << m.subject_id << '\t' << m.other_id << '\t'
       << m.subject_cell << '\t' << m.other_cell;
    return os.str();
}

WindowStore::WindowStore(Retention retention) : retention_(retention) {}

void WindowStore::evict(std::int64_t now_ms) {
    auto drop = [now_ms](auto& window, std::int64_t keep) {
        while (!window.empty() && now_ms - window.front().arrival_ms >= keep) {
            window.pop_front();
        }
    };
    drop(drones_, retention_.drone_ms);
    drop(statics_, retention_.static_ms);
    drop(movings_, retention_.moving_ms);
    last_now_ = std::max(last_now_, now_ms);
}

std::vector<ProximityMatch> WindowStore::ingest(const Event& event, std::int64_t now_ms) {
    evict(now_ms);
    std::vector<ProximityMatch> out;

    std::visit(
        [&](const auto& e) {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, DroneLocEvent>) {
                for (const auto& s : drones_) {
                    if (match_drone_drone(e, s.event)) {
                        out.push_back({ProximityKind::DroneDrone, e.drone_id, s.event.drone_id, e.cell,
                                       s.event.cell});
                    }
                }
                for (const auto& s : statics_) {
                    if (match_drone_static(e, s.event)) {
                        out.push_back({ProximityKind::DroneStatic, e.drone_id, s.event.obstacle_id, e.cell,
                                       s.event.cell});
                    }
                }
                for (const auto& s : movings_) {
                    if (match_drone_moving(e, s.event)) {
                        out.push_back({ProximityKind::DroneMoving, e.drone_id, s.event.obstacle_id, e.cell,
                                       s.event.cell});
                    }
                }
                drones_.push_back({e, now_ms});
            } else if constexpr (std::is_same_v<E, SObsEvent>) {
                for (const auto& s : drones_) {
                    if (match_drone_static(s.event, e)) {
                        out.push_back({ProximityKind::DroneStatic, s.event.drone_id, e.obstacle_id, s.event.cell,
                                       e.cell});
                    }
                }
                statics_.push_back({e, now_ms});
            } else {
                for (const auto& s : drones_) {
                    if (match_drone_moving(s.event, e)) {
                        out.push_back({ProximityKind::DroneMoving, s.event.drone_id, e.obstacle_id, s.event.cell,
                                       e.cell});
                    }
                }
                movings_.push_back({e, now_ms});
            }
        },
        event);

    dispatch(out);
    return out;
}

WindowStore::SinkHandle WindowStore::register_sink(ProximityKind kind, Sink callback) {
    const SinkHandle handle = next_handle_++;
    sinks_.push_back({handle, kind, std::move(callback)});
    return handle;
}

void WindowStore::unregister_sink(SinkHandle handle) {
    std::erase_if(sinks_, [handle](const Subscription& s) { return s.handle == handle; });
}

void WindowStore::dispatch(const std::vector<ProximityMatch>& matches) const {
    if (sinks_.empty()) {
        return;
    }
    for (const auto& m : matches) {
        for (const auto& s : sinks_) {
            if (s.kind == m.kind) {
                s.callback(m);
            }
        }
    }
}

}  // namespace swarmgrid
