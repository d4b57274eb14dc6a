#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swarmgrid/avoidance.hpp"
#include "swarmgrid/cep.hpp"
#include "swarmgrid/coordination.hpp"
#include "swarmgrid/entities.hpp"
#include "swarmgrid/prediction.hpp"
#include "swarmgrid/rng.hpp"
#include "swarmgrid/world.hpp"

namespace swarmgrid {

enum class Algorithm { Proposed, Rrt, RrtStar };

std::string_view to_string(Algorithm a);
/// Accepts "proposed", "rrt", "rrt-star" (and "rrt_star").
Algorithm parse_algorithm(std::string_view name);

struct AreaSpec {
    Extents dims{10, 10, 10};
    double spacing_m = 10.0;
    double sensing_range_m = 30.0;
    double speed_mps = 5.0;
    double latency_s = 0.2;
    double processing_s = 0.5;

    Area build() const;
};

struct DroneSpec {
    Cell start;
    Cell dest;
};

struct MovingObstacleSpec {
    Cell cell;
    int cadence = 5;
    int spawn_tick = 0;
};

struct PlannerConfig {
    int max_iters = 100'000;
    double goal_bias = 0.05;
    int rewire_radius = 3;
};

struct SimConfig {
    AreaSpec area;
    int tick_len_ms = 50;
    std::vector<DroneSpec> drones;
    std::vector<Cell> static_obstacles;
    std::vector<MovingObstacleSpec> moving_obstacles;
    std::uint64_t seed = 0;
    std::optional<int> max_ticks;  // default: 50 * (dim_x + dim_y + dim_z)
    BacktrackConfig backtrack;
    bool obstacles_avoid_drones = true;
    int detection_radius = 2;  // Chebyshev, in cells
    Algorithm algorithm = Algorithm::Proposed;
    PlannerConfig planner;

    int effective_max_ticks() const;

    /// Throws InvalidConfig (or the Area construction errors) on a bad config.
    void validate() const;
};

struct CollisionRecord {
    enum class Kind { CoLocation, DroneStatic, DroneMoving, EdgeSwap };

    int tick = 0;
    Kind kind = Kind::CoLocation;
    int first = 0;   // drone id
    int second = 0;  // drone or obstacle id
    Cell cell;

    friend auto operator<=>(const CollisionRecord&, const CollisionRecord&) = default;
};

std::string_view to_string(CollisionRecord::Kind k);

struct DronePosition {
    int id = 0;
    Cell cell;
};

/// Independent of the prediction stack: reports cells holding two or more
/// drones, drones sharing a cell with an obstacle, and drone pairs that
/// exchanged cells across the tick. `before` and `after` are index-aligned.
std::vector<CollisionRecord> detect_collisions_ground_truth(int tick, std::span<const DronePosition> before,
                                                            std::span<const DronePosition> after,
                                                            std::span<const StaticObstacle> statics,
                                                            std::span<const MovingObstacle> movings);

struct SimResult {
    std::vector<int> drone_ids;
    std::vector<std::vector<Cell>> routes;  // aligned with drone_ids
    std::vector<CollisionRecord> collisions;
    int ticks = 0;
    bool timed_out = false;
    double wall_ms = 0.0;
    std::vector<std::string> trace;  // line-delimited records when tracing

    bool collision_free() const { return collisions.empty(); }
};

/// The greedy navigator: a uniformly random in-bounds neighbor that strictly
/// reduces the distance to the destination and is not `occupied`. Returns the
/// current cell when no such neighbor exists, nullopt when already arrived.
std::optional<Cell> plan_step(const Drone& drone, const Area& area,
                              const std::function<bool(const Cell&)>& occupied, Rng& rng);

/// What one drone did in one tick.
struct DroneDecision {
    int drone_id = 0;
    Mode mode = Mode::Normal;
    Cell from;
    Cell to;
    std::string action;  // move, redirect, hover, backtrack, parked
    std::string cause;   // prediction kind that triggered avoidance, if any
    std::vector<Prediction> predictions;
};

struct EngineOptions {
    bool trace = false;
    std::ostream* match_trace = nullptr;
};

/// Tick-synchronous orchestration of the proposed navigation stack.
class Engine {
public:
    explicit Engine(const SimConfig& cfg, EngineOptions options = {});

    /// Runs one tick. Throws EngineInvariantViolation if a safety invariant
    /// is broken by the committed moves.
    void run_tick();

    bool all_arrived() const;
    int tick() const { return tick_; }
    std::int64_t now_ms() const;

    const Area& area() const { return area_; }
    const std::vector<Drone>& drones() const { return drones_; }
    const std::vector<StaticObstacle>& static_obstacles() const { return statics_; }
    const std::vector<MovingObstacle>& moving_obstacles() const { return movings_; }
    const LockTable& locks() const { return locks_; }
    const std::vector<CollisionRecord>& collisions() const { return collisions_; }
    const std::vector<DroneDecision>& last_decisions() const { return decisions_; }
    const std::vector<Event>& last_events() const { return events_; }
    const std::vector<ProximityMatch>& last_matches() const { return matches_; }

    SimResult result(bool timed_out, double wall_ms) const;

private:
    void move_obstacles();
    void emit_events();
    void decide(Drone& drone, const std::vector<ProximityMatch>& matches, ConflictIndex& index,
                const CellSet& known_obstacles, DroneDecision& decision);
    void commit(const std::vector<Cell>& next);
    void check_invariants() const;
    void write_tick_trace();

    SimConfig cfg_;
    EngineOptions options_;
    Area area_;
    std::vector<Drone> drones_;
    std::vector<StallTracker> stall_;
    std::vector<StaticObstacle> statics_;
    std::vector<MovingObstacle> movings_;
    std::vector<bool> static_reported_;
    WindowStore store_;
    LockTable locks_;
    Rng obstacle_rng_;
    Rng order_rng_;
    Rng decision_rng_;
    int tick_ = 0;

    std::vector<Event> events_;
    std::vector<ProximityMatch> matches_;
    std::vector<DroneDecision> decisions_;
    std::vector<bool> ended_backtrack_;
    CellSet drone_cells_;
    std::vector<CollisionRecord> collisions_;
    std::vector<std::string> trace_;
};

/// Runs a mission to completion or max_ticks with the configured algorithm.
/// A timeout is reported through SimResult::timed_out.
SimResult run_mission(const SimConfig& cfg, EngineOptions options = {});

}  // namespace swarmgrid
