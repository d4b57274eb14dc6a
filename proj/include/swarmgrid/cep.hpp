#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarmgrid/world.hpp"

namespace swarmgrid {

struct DroneLocEvent {
    int drone_id = 0;
    Cell cell;
    std::int64_t t_ms = 0;
};

struct SObsEvent {
    int obstacle_id = 0;
    Cell cell;
};

struct MObsEvent {
    int obstacle_id = 0;
    Cell cell;
    std::int64_t t_ms = 0;
};

using Event = std::variant<DroneLocEvent, SObsEvent, MObsEvent>;

enum class ProximityKind { DroneDrone, DroneStatic, DroneMoving };

std::string_view to_string(ProximityKind k);

/// One result row of a proximity query. The subject is always a drone.
struct ProximityMatch {
    ProximityKind kind = ProximityKind::DroneDrone;
    int subject_id = 0;
    int other_id = 0;
    Cell subject_cell;
    Cell other_cell;

    friend auto operator<=>(const ProximityMatch&, const ProximityMatch&) = default;
};

/// Two drones within a +-2 cell box that share at least one coordinate.
bool match_drone_drone(const DroneLocEvent& a, const DroneLocEvent& b);
/// A drone within a +-1 cell box of a static obstacle, sharing a coordinate.
bool match_drone_static(const DroneLocEvent& a, const SObsEvent& o);
/// A drone within a +-2 cell box of a moving obstacle, sharing a coordinate.
bool match_drone_moving(const DroneLocEvent& a, const MObsEvent& o);

/// Per-stream retention of the sliding time windows, in milliseconds.
struct Retention {
    std::int64_t drone_ms = 1000;
    std::int64_t moving_ms = 1000;
    std::int64_t static_ms = 3'600'000;
};

/// Tab-separated debug line: tick, kind, subject, other, subject cell, other cell.
std::string format_match_line(std::int64_t tick, const ProximityMatch& m);

/// Sliding-window store evaluating the three proximity joins on event
/// arrival. An event that arrived at `a` is live while now - a < retention.
/// Each ingest reports only the matches the arriving event takes part in.
class WindowStore {
public:
    using Sink = std::function<void(const ProximityMatch&)>;
    using SinkHandle = std::uint64_t;

    explicit WindowStore(Retention retention = {});

    /// Arrival times must be non-decreasing across calls.
    std::vector<ProximityMatch> ingest(const Event& event, std::int64_t now_ms);

    /// Drops events that are no longer live at `now_ms`.
    void evict(std::int64_t now_ms);

    SinkHandle register_sink(ProximityKind kind, Sink callback);
    void unregister_sink(SinkHandle handle);

    std::size_t drone_events() const { return drones_.size(); }
    std::size_t static_events() const { return statics_.size(); }
    std::size_t moving_events() const { return movings_.size(); }
    const Retention& retention() const { return retention_; }

private:
    template <typename E>
    struct Stored {
        E event;
        std::int64_t arrival_ms;
    };

    struct Subscription {
        SinkHandle handle;
        ProximityKind kind;
        Sink callback;
    };

    void dispatch(const std::vector<ProximityMatch>& matches) const;

    Retention retention_;
    std::deque<Stored<DroneLocEvent>> drones_;
    std::deque<Stored<SObsEvent>> statics_;
    std::deque<Stored<MObsEvent>> movings_;
    std::vector<Subscription> sinks_;
    SinkHandle next_handle_ = 1;
    std::int64_t last_now_ = 0;
};

}  // namespace swarmgrid
