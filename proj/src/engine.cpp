#include "swarmgrid/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "swarmgrid/trace.hpp"

namespace swarmgrid {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Proposed:
            return "proposed";
        case Algorithm::Rrt:
            return "rrt";
        case Algorithm::RrtStar:
            return "rrt-star";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "proposed") {
        return Algorithm::Proposed;
    }
    if (name == "rrt") {
        return Algorithm::Rrt;
    }
    if (name == "rrt-star" || name == "rrt_star") {
        return Algorithm::RrtStar;
    }
    throw InvalidConfig("unknown algorithm '" + std::string(name) + "'");
}

Area AreaSpec::build() const {
    return Area(dims, spacing_m, sensing_range_m, SafetyParams(speed_mps, latency_s, processing_s));
}

int SimConfig::effective_max_ticks() const {
    return max_ticks.value_or(50 * (area.dims.x + area.dims.y + area.dims.z));
}

void SimConfig::validate() const {
    const Area a = area.build();
    if (tick_len_ms <= 0) {
        throw InvalidConfig("tick_len_ms must be positive");
    }
    if (effective_max_ticks() <= 0) {
        throw InvalidConfig("max_ticks must be positive");
    }
    if (detection_radius < 1) {
        throw InvalidConfig("detection_radius must be at least 1");
    }
    backtrack.validate();

    CellSet starts;
    CellSet dests;
    for (const auto& d : drones) {
        if (!a.contains(d.start) || !a.contains(d.dest)) {
            throw InvalidConfig("drone start/destination outside the area");
        }
        if (!starts.insert(d.start).second) {
            throw InvalidConfig("duplicate drone start " + to_string(d.start));
        }
        if (!dests.insert(d.dest).second) {
            throw InvalidConfig("duplicate drone destination " + to_string(d.dest));
        }
    }
    auto check_obstacle = [&](const Cell& c) {
        if (!a.contains(c)) {
            throw InvalidConfig("obstacle " + to_string(c) + " outside the area");
        }
        if (starts.contains(c) || dests.contains(c)) {
            throw InvalidConfig("obstacle placed on a drone start or destination " + to_string(c));
        }
    };
    for (const auto& c : static_obstacles) {
        check_obstacle(c);
    }
    for (const auto& m : moving_obstacles) {
        check_obstacle(m.cell);
        if (m.cadence <= 0 || m.spawn_tick < 0) {
            throw InvalidConfig("moving obstacle cadence must be positive and spawn_tick non-negative");
        }
    }
    if (planner.max_iters <= 0 || planner.goal_bias < 0.0 || planner.goal_bias > 1.0 || planner.rewire_radius < 1) {
        throw InvalidConfig("invalid planner configuration");
    }
}

std::string_view to_string(CollisionRecord::Kind k) {
    switch (k) {
        case CollisionRecord::Kind::CoLocation:
            return "co-location";
        case CollisionRecord::Kind::DroneStatic:
            return "drone-static";
        case CollisionRecord::Kind::DroneMoving:
            return "drone-moving";
        case CollisionRecord::Kind::EdgeSwap:
            return "edge-swap";
    }
    return "unknown";
}

std::vector<CollisionRecord> detect_collisions_ground_truth(int tick, std::span<const DronePosition> before,
                                                            std::span<const DronePosition> after,
                                                            std::span<const StaticObstacle> statics,
                                                            std::span<const MovingObstacle> movings) {
    std::vector<CollisionRecord> out;

    std::map<Cell, std::vector<int>> occupants;
    for (const auto& p : after) {
        occupants[p.cell].push_back(p.id);
    }
    for (auto& [cell, ids] : occupants) {
        if (ids.size() >= 2) {
            std::sort(ids.begin(), ids.end());
            out.push_back({tick, CollisionRecord::Kind::CoLocation, ids[0], ids[1], cell});
        }
    }

    for (const auto& s : statics) {
        const auto it = occupants.find(s.cell);
        if (it != occupants.end()) {
            for (const int id : it->second) {
                out.push_back({tick, CollisionRecord::Kind::DroneStatic, id, s.id, s.cell});
            }
        }
    }
    for (const auto& m : movings) {
        if (!m.present_at(tick)) {
            continue;
        }
        const auto it = occupants.find(m.cell);
        if (it != occupants.end()) {
            for (const int id : it->second) {
                out.push_back({tick, CollisionRecord::Kind::DroneMoving, id, m.id, m.cell});
            }
        }
    }

    // Same edge at the same time: a left b's cell while b entered a's.
    std::map<std::pair<Cell, Cell>, std::vector<std::size_t>> moves;
    const std::size_t n = std::min(before.size(), after.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (before[i].cell != after[i].cell) {
            moves[{before[i].cell, after[i].cell}].push_back(i);
        }
    }
    for (const auto& [edge, movers] : moves) {
        if (!(edge.first < edge.second)) {
            continue;
        }
        const auto back = moves.find({edge.second, edge.first});
        if (back == moves.end()) {
            continue;
        }
        for (const auto i : movers) {
            for (const auto j : back->second) {
                const int a = std::min(after[i].id, after[j].id);
                const int b = std::max(after[i].id, after[j].id);
                out.push_back({tick, CollisionRecord::Kind::EdgeSwap, a, b, std::min(edge.first, edge.second)});
            }
        }
    }

    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Cell> plan_step(const Drone& drone, const Area& area,
                              const std::function<bool(const Cell&)>& occupied, Rng& rng) {
    const Cell cur = drone.current();
    if (cur == drone.dest) {
        return std::nullopt;
    }
    const int here = manhattan(cur, drone.dest);
    std::vector<Cell> options;
    for (const auto& n : area.neighbors(cur)) {
        if (manhattan(n, drone.dest) < here && !occupied(n)) {
            options.push_back(n);
        }
    }
    if (options.empty()) {
        return cur;
    }
    return options[rng.below(options.size())];
}

namespace {

constexpr std::uint64_t kObstacleStream = 1;
constexpr std::uint64_t kOrderStream = 2;
constexpr std::uint64_t kDecisionStream = 3;

}  // namespace

Engine::Engine(const SimConfig& cfg, EngineOptions options)
    : cfg_(cfg),
      options_(options),
      area_((cfg.validate(), cfg.area.build())),
      obstacle_rng_(Rng(cfg.seed).fork(kObstacleStream)),
      order_rng_(Rng(cfg.seed).fork(kOrderStream)),
      decision_rng_(Rng(cfg.seed).fork(kDecisionStream)) {
    drones_.reserve(cfg_.drones.size());
    for (std::size_t i = 0; i < cfg_.drones.size(); ++i) {
        const auto& spec = cfg_.drones[i];
        drones_.push_back(Drone::launch(static_cast<int>(i) + 1, spec.start, spec.dest));
        stall_.push_back(StallTracker::at(manhattan(spec.start, spec.dest)));
        if (!locks_.try_acquire(drones_.back().id, spec.start)) {
            throw InvalidConfig("two drones start on " + to_string(spec.start));
        }
    }
    for (std::size_t i = 0; i < cfg_.static_obstacles.size(); ++i) {
        statics_.push_back({static_cast<int>(i) + 1, cfg_.static_obstacles[i]});
    }
    static_reported_.assign(statics_.size(), false);
    for (std::size_t i = 0; i < cfg_.moving_obstacles.size(); ++i) {
        const auto& m = cfg_.moving_obstacles[i];
        movings_.push_back({static_cast<int>(i) + 1, m.cell, m.cadence, m.spawn_tick, true});
    }

    if (options_.match_trace != nullptr) {
        for (const auto kind : {ProximityKind::DroneDrone, ProximityKind::DroneStatic, ProximityKind::DroneMoving}) {
            store_.register_sink(kind, [this](const ProximityMatch& m) {
                *options_.match_trace << format_match_line(tick_, m) << '\n';
            });
        }
    }
    if (options_.trace) {
        trace_.push_back(trace_header(cfg_, statics_));
    }
}

std::int64_t Engine::now_ms() const { return static_cast<std::int64_t>(tick_) * cfg_.tick_len_ms; }

bool Engine::all_arrived() const {
    return std::all_of(drones_.begin(), drones_.end(), [](const Drone& d) { return d.arrived; });
}

void Engine::move_obstacles() {
    CellSet drone_cells;
    for (const auto& d : drones_) {
        drone_cells.insert(d.current());
    }
    for (auto& o : movings_) {
        o = step_moving_obstacle(o, tick_, obstacle_rng_, area_, drone_cells, cfg_.obstacles_avoid_drones);
    }
}

void Engine::emit_events() {
    events_.clear();
    const std::int64_t t = now_ms();
    for (const auto& d : drones_) {
        events_.emplace_back(DroneLocEvent{d.id, d.current(), t});
    }
    auto detected = [&](const Cell& c) {
        return std::any_of(drones_.begin(), drones_.end(), [&](const Drone& d) {
            return chebyshev(d.current(), c) <= cfg_.detection_radius;
        });
    };
    for (std::size_t i = 0; i < statics_.size(); ++i) {
        if (!static_reported_[i] && detected(statics_[i].cell)) {
            static_reported_[i] = true;
            events_.emplace_back(SObsEvent{statics_[i].id, statics_[i].cell});
        }
    }
    for (const auto& m : movings_) {
        if (m.present_at(tick_) && detected(m.cell)) {
            events_.emplace_back(MObsEvent{m.id, m.cell, t});
        }
    }
}

void Engine::decide(Drone& drone, const std::vector<ProximityMatch>& matches, ConflictIndex& index,
                    const CellSet& known_obstacles, DroneDecision& decision) {
    const Cell cur = drone.current();
    const std::size_t slot = static_cast<std::size_t>(drone.id - 1);
    const MoveContext ctx{area_, locks_,
                          [&](const Cell& c) { return !index.evaluate(drone.id, c, matches).empty(); }};

    Cell next = cur;
    auto run_backtrack = [&] {
        if (const auto step = backtrack_step(drone, ctx, decision_rng_)) {
            next = *step;
            decision.action = "backtrack";
        } else {
            decision.action = "hover";
        }
        if (backtrack_exit_check(drone, cfg_.backtrack)) {
            ended_backtrack_[slot] = true;
        }
    };

    if (drone.mode == Mode::Backtrack) {
        run_backtrack();
    } else {
        auto occupied = [&](const Cell& c) { return drone_cells_.contains(c) || known_obstacles.contains(c); };
        const Cell intent = plan_step(drone, area_, occupied, decision_rng_).value_or(cur);
        std::vector<Prediction> predictions;
        if (intent != cur) {
            predictions = index.evaluate(drone.id, intent, matches);
        }
        if (intent != cur && predictions.empty() && locks_.available_to(drone.id, intent)) {
            next = intent;
            decision.action = "move";
        } else {
            std::optional<Prediction> cause;
            if (!predictions.empty()) {
                cause = predictions.front();
                decision.cause = std::string(to_string(cause->kind));
            } else {
                decision.cause = "blocked";
            }
            decision.predictions = std::move(predictions);
            const auto action = avoid(drone, cause, ctx, stall_[slot], decision_rng_, cfg_.backtrack);
            if (const auto* r = std::get_if<Redirect>(&action)) {
                next = r->next;
                decision.action = "redirect";
            } else if (std::holds_alternative<EnterBacktrack>(action)) {
                drone.mode = Mode::Backtrack;
                drone.backtrack = {};
                run_backtrack();
            } else {
                decision.action = "hover";
            }
        }
    }

    if (next != cur && !locks_.try_acquire(drone.id, next)) {
        throw EngineInvariantViolation("drone " + std::to_string(drone.id) + " chose locked cell " +
                                       to_string(next));
    }
    index.set_intent(drone.id, next);
    decision.to = next;
}

void Engine::commit(const std::vector<Cell>& next) {
    for (std::size_t i = 0; i < drones_.size(); ++i) {
        Drone& d = drones_[i];
        if (d.arrived) {
            continue;
        }
        const Cell prev = d.current();
        d = record_move(std::move(d), next[i]);
        if (next[i] != prev) {
            locks_.release(d.id, prev);
        }
        if (d.current() == d.dest) {
            d.arrived = true;
            d.mode = Mode::Normal;
        } else if (d.mode == Mode::Backtrack) {
            // progress is not tracked while retreating
        } else if (ended_backtrack_[i]) {
            stall_[i] = StallTracker::at(d.distance_to_dest());
        } else {
            d.mode = next[i] == prev ? Mode::Hover : Mode::Normal;
            stall_[i].observe(d.distance_to_dest());
        }
    }
}

void Engine::check_invariants() const {
    for (const auto& d : drones_) {
        const auto& held = locks_.held_by(d.id);
        if (held.size() != 1 || held.front() != d.current()) {
            throw EngineInvariantViolation("drone " + std::to_string(d.id) + " does not hold exactly its cell");
        }
    }
    for (const auto& c : collisions_) {
        if (c.tick == tick_ &&
            (c.kind == CollisionRecord::Kind::CoLocation || c.kind == CollisionRecord::Kind::EdgeSwap)) {
            throw EngineInvariantViolation("drones " + std::to_string(c.first) + " and " + std::to_string(c.second) +
                                           " collided at " + to_string(c.cell));
        }
    }
}

void Engine::run_tick() {
    // (1) obstacles move on their cadence
    move_obstacles();

    // (2) location and detection events, (3) windowed proximity joins
    emit_events();
    matches_.clear();
    for (const auto& e : events_) {
        auto found = store_.ingest(e, now_ms());
        matches_.insert(matches_.end(), found.begin(), found.end());
    }

    std::unordered_map<int, std::vector<ProximityMatch>> matches_by_drone;
    std::unordered_map<int, CellSet> known_obstacles;
    for (const auto& m : matches_) {
        matches_by_drone[m.subject_id].push_back(m);
        if (m.kind == ProximityKind::DroneStatic) {
            known_obstacles[m.subject_id].insert(statics_[static_cast<std::size_t>(m.other_id - 1)].cell);
        } else if (m.kind == ProximityKind::DroneMoving) {
            const auto& o = movings_[static_cast<std::size_t>(m.other_id - 1)];
            if (o.present_at(tick_)) {
                known_obstacles[m.subject_id].insert(o.cell);
            }
        }
    }

    WorldSnapshot snapshot;
    for (const auto& d : drones_) {
        snapshot.drones[d.id] = d.current();
    }
    for (const auto& s : statics_) {
        snapshot.static_obstacles[s.id] = s.cell;
    }
    for (const auto& m : movings_) {
        if (m.present_at(tick_)) {
            snapshot.moving_obstacles[m.id] = m.cell;
        }
    }

    // (4) serial decisions in a fresh seeded order
    std::vector<std::size_t> order(drones_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    order_rng_.shuffle(std::span<std::size_t>(order));

    decisions_.assign(drones_.size(), DroneDecision{});
    ended_backtrack_.assign(drones_.size(), false);
    drone_cells_.clear();
    for (const auto& d : drones_) {
        drone_cells_.insert(d.current());
    }
    std::vector<Cell> next(drones_.size());
    ConflictIndex index(snapshot);
    static const std::vector<ProximityMatch> kNoMatches;
    static const CellSet kNoObstacles;
    for (const std::size_t i : order) {
        Drone& d = drones_[i];
        auto& decision = decisions_[i];
        decision.drone_id = d.id;
        decision.from = d.current();
        decision.to = d.current();
        decision.mode = d.mode;
        next[i] = d.current();
        if (d.arrived) {
            decision.action = "parked";
            continue;
        }
        const auto m = matches_by_drone.find(d.id);
        const auto k = known_obstacles.find(d.id);
        decide(d, m == matches_by_drone.end() ? kNoMatches : m->second, index,
               k == known_obstacles.end() ? kNoObstacles : k->second, decision);
        next[i] = decision.to;
    }

    // (5) commit moves and release the previous cells
    std::vector<DronePosition> before;
    before.reserve(drones_.size());
    for (const auto& d : drones_) {
        before.push_back({d.id, d.current()});
    }
    commit(next);
    for (std::size_t i = 0; i < drones_.size(); ++i) {
        decisions_[i].mode = drones_[i].mode;
    }

    // (6) ground truth
    std::vector<DronePosition> after;
    after.reserve(drones_.size());
    for (const auto& d : drones_) {
        after.push_back({d.id, d.current()});
    }
    const auto found = detect_collisions_ground_truth(tick_, before, after, statics_, movings_);
    collisions_.insert(collisions_.end(), found.begin(), found.end());
    check_invariants();

    if (options_.trace) {
        write_tick_trace();
    }
    ++tick_;
}

void Engine::write_tick_trace() {
    trace_.push_back(trace_obstacles(tick_, movings_));
    for (const auto& d : decisions_) {
        trace_.push_back(trace_drone(tick_, d));
    }
}

SimResult Engine::result(bool timed_out, double wall_ms) const {
    SimResult r;
    for (const auto& d : drones_) {
        r.drone_ids.push_back(d.id);
        r.routes.push_back(d.route);
    }
    r.collisions = collisions_;
    r.ticks = tick_;
    r.timed_out = timed_out;
    r.wall_ms = wall_ms;
    r.trace = trace_;
    return r;
}

}  // namespace swarmgrid
