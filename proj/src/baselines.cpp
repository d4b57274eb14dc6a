#include "swarmgrid/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "swarmgrid/trace.hpp"

namespace swarmgrid {
namespace {

constexpr int kNoNode = -1;
constexpr std::size_t kLinearNearestLimit = 256;

class GridTree {
public:
    GridTree(const Area& area, const CellSet& obstacles, const Cell& root)
        : area_(area), node_of_(area.volume(), kNoNode), blocked_(area.volume(), false) {
        for (const auto& c : obstacles) {
            if (area.contains(c)) {
                blocked_[area.index(c)] = true;
            }
        }
        add(root, kNoNode, 0);
    }

    bool blocked(const Cell& c) const { return blocked_[area_.index(c)]; }
    int node_at(const Cell& c) const { return node_of_[area_.index(c)]; }
    std::size_t size() const { return tree_.nodes.size(); }
    const Cell& cell(int n) const { return tree_.nodes[static_cast<std::size_t>(n)]; }
    int cost(int n) const { return tree_.cost[static_cast<std::size_t>(n)]; }
    int parent(int n) const { return tree_.parent[static_cast<std::size_t>(n)]; }

    int add(const Cell& c, int parent, int cost) {
        const int id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.push_back(c);
        tree_.parent.push_back(parent);
        tree_.cost.push_back(cost);
        children_.emplace_back();
        if (parent != kNoNode) {
            children_[static_cast<std::size_t>(parent)].push_back(id);
        }
        node_of_[area_.index(c)] = id;
        return id;
    }

    /// Re-parents `n` and shifts the cost of its whole subtree.
    void reparent(int n, int new_parent, int new_cost) {
        auto& old_children = children_[static_cast<std::size_t>(parent(n))];
        std::erase(old_children, n);
        children_[static_cast<std::size_t>(new_parent)].push_back(n);
        tree_.parent[static_cast<std::size_t>(n)] = new_parent;
        const int delta = new_cost - cost(n);
        std::vector<int> stack{n};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            tree_.cost[static_cast<std::size_t>(v)] += delta;
            const auto& ch = children_[static_cast<std::size_t>(v)];
            stack.insert(stack.end(), ch.begin(), ch.end());
        }
    }

    bool connector_free(const Cell& from, const Cell& to) const {
        for (const auto& c : staircase(from, to)) {
            if (blocked(c)) {
                return false;
            }
        }
        return true;
    }

    int nearest(const Cell& target) const {
        if (size() <= kLinearNearestLimit) {
            int best = 0;
            int best_d = std::numeric_limits<int>::max();
            for (std::size_t i = 0; i < size(); ++i) {
                const int d = manhattan(tree_.nodes[i], target);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(i);
                }
            }
            return best;
        }
        const Extents& e = area_.dims();
        const int max_r = e.x + e.y + e.z;
        for (int r = 0; r <= max_r; ++r) {
            for (int dx = -r; dx <= r; ++dx) {
                const int ry = r - std::abs(dx);
                for (int dy = -ry; dy <= ry; ++dy) {
                    const int rz = ry - std::abs(dy);
                    for (const int dz : {-rz, rz}) {
                        const Cell c{target.x + dx, target.y + dy, target.z + dz};
                        if (area_.contains(c)) {
                            const int n = node_at(c);
                            if (n != kNoNode) {
                                return n;
                            }
                        }
                        if (rz == 0) {
                            break;
                        }
                    }
                }
            }
        }
        return 0;
    }

    Cell sample(Rng& rng, const Cell& goal, double goal_bias) const {
        if (rng.chance(goal_bias)) {
            return goal;
        }
        for (;;) {
            const Cell c = area_.cell_at(rng.below(area_.volume()));
            if (!blocked(c)) {
                return c;
            }
        }
    }

    /// One axis step from `from` toward `target`, over a random differing axis
    /// that is not blocked. nullopt when every such step is blocked.
    std::optional<Cell> steer(const Cell& from, const Cell& target, Rng& rng) const {
        std::vector<int> axes;
        for (int a = 0; a < 3; ++a) {
            if (from[a] != target[a]) {
                axes.push_back(a);
            }
        }
        rng.shuffle(std::span<int>(axes));
        for (const int a : axes) {
            Cell next = from;
            next[a] += target[a] > from[a] ? 1 : -1;
            if (!blocked(next)) {
                return next;
            }
        }
        return std::nullopt;
    }

    Route route_to(int n) const {
        std::vector<int> chain;
        for (int v = n; v != kNoNode; v = parent(v)) {
            chain.push_back(v);
        }
        std::reverse(chain.begin(), chain.end());
        Route route{cell(chain.front())};
        for (std::size_t i = 1; i < chain.size(); ++i) {
            const auto seg = staircase(cell(chain[i - 1]), cell(chain[i]));
            route.insert(route.end(), seg.begin(), seg.end());
        }
        return route;
    }

    const PlannerTree& tree() const { return tree_; }
    const Area& area() const { return area_; }

private:
    const Area& area_;
    PlannerTree tree_;
    std::vector<std::vector<int>> children_;
    std::vector<int> node_of_;
    std::vector<bool> blocked_;
};

void check_endpoints(const Cell& start, const Cell& dest, const CellSet& obstacles, const Area& area) {
    if (!area.contains(start) || !area.contains(dest)) {
        throw OutOfBounds("planner endpoints must lie inside the area");
    }
    if (obstacles.contains(start) || obstacles.contains(dest)) {
        throw PlanFailure("planner endpoint is occupied by a static obstacle");
    }
}

std::vector<Cell> ball_offsets(int radius) {
    std::vector<Cell> out;
    for (int dx = -radius; dx <= radius; ++dx) {
        for (int dy = -radius; dy <= radius; ++dy) {
            for (int dz = -radius; dz <= radius; ++dz) {
                const Cell d{dx, dy, dz};
                const int r = manhattan(d, Cell{});
                if (r > 0 && r <= radius) {
                    out.push_back(d);
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Cell& a, const Cell& b) { return manhattan(a, Cell{}) < manhattan(b, Cell{}); });
    return out;
}

}  // namespace

std::vector<Cell> staircase(const Cell& from, const Cell& to) {
    std::vector<Cell> out;
    Cell c = from;
    for (int a = 0; a < 3; ++a) {
        while (c[a] != to[a]) {
            c[a] += to[a] > c[a] ? 1 : -1;
            out.push_back(c);
        }
    }
    return out;
}

Route rrt_plan(const Cell& start, const Cell& dest, const CellSet& static_obstacles, const Area& area, Rng& rng,
               const PlannerConfig& cfg, PlannerTree* tree_out) {
    check_endpoints(start, dest, static_obstacles, area);
    GridTree tree(area, static_obstacles, start);
    if (start == dest) {
        return {start};
    }
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const Cell target = tree.sample(rng, dest, cfg.goal_bias);
        const int near = tree.nearest(target);
        if (tree.cell(near) == target) {
            continue;
        }
        const auto next = tree.steer(tree.cell(near), target, rng);
        if (!next || tree.node_at(*next) != kNoNode) {
            continue;
        }
        const int n = tree.add(*next, near, tree.cost(near) + 1);
        if (*next == dest) {
            if (tree_out != nullptr) {
                *tree_out = tree.tree();
            }
            return tree.route_to(n);
        }
    }
    if (tree_out != nullptr) {
        *tree_out = tree.tree();
    }
    throw PlanFailure("RRT did not reach " + to_string(dest) + " within " + std::to_string(cfg.max_iters) +
                      " iterations");
}

Route rrt_star_plan(const Cell& start, const Cell& dest, const CellSet& static_obstacles, const Area& area, Rng& rng,
                    const PlannerConfig& cfg, PlannerTree* tree_out) {
    check_endpoints(start, dest, static_obstacles, area);
    GridTree tree(area, static_obstacles, start);
    if (start == dest) {
        return {start};
    }
    const auto offsets = ball_offsets(cfg.rewire_radius);
    const int lower_bound = manhattan(start, dest);

    auto neighborhood = [&](const Cell& c) {
        std::vector<int> out;
        for (const auto& d : offsets) {
            const Cell n{c.x + d.x, c.y + d.y, c.z + d.z};
            if (area.contains(n)) {
                const int id = tree.node_at(n);
                if (id != kNoNode) {
                    out.push_back(id);
                }
            }
        }
        return out;
    };

    // Cheapest obstacle-free parent for `c` among `near`, starting from a known one.
    auto choose_parent = [&](const Cell& c, const std::vector<int>& near, int parent, int cost) {
        for (const int u : near) {
            const int via = tree.cost(u) + manhattan(tree.cell(u), c);
            if (via < cost && tree.connector_free(tree.cell(u), c)) {
                parent = u;
                cost = via;
            }
        }
        return std::pair{parent, cost};
    };

    auto rewire = [&](int n, const std::vector<int>& near) {
        for (const int u : near) {
            if (u == 0 || u == tree.parent(n)) {
                continue;
            }
            const int via = tree.cost(n) + manhattan(tree.cell(n), tree.cell(u));
            if (via < tree.cost(u) && tree.connector_free(tree.cell(n), tree.cell(u))) {
                tree.reparent(u, n, via);
            }
        }
    };

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const int goal = tree.node_at(dest);
        if (goal != kNoNode && tree.cost(goal) == lower_bound) {
            break;
        }
        const Cell target = tree.sample(rng, dest, cfg.goal_bias);
        const int near = tree.nearest(target);
        if (tree.cell(near) == target) {
            if (near == 0) {
                continue;
            }
            const auto around = neighborhood(target);
            const auto [p, c] = choose_parent(target, around, tree.parent(near), tree.cost(near));
            if (p != tree.parent(near)) {
                tree.reparent(near, p, c);
            }
            rewire(near, around);
            continue;
        }
        const auto next = tree.steer(tree.cell(near), target, rng);
        if (!next || tree.node_at(*next) != kNoNode) {
            continue;
        }
        const auto around = neighborhood(*next);
        const auto [p, c] = choose_parent(*next, around, near, tree.cost(near) + 1);
        const int n = tree.add(*next, p, c);
        rewire(n, around);
    }

    if (tree_out != nullptr) {
        *tree_out = tree.tree();
    }
    const int goal = tree.node_at(dest);
    if (goal == kNoNode) {
        throw PlanFailure("RRT* did not reach " + to_string(dest) + " within " + std::to_string(cfg.max_iters) +
                          " iterations");
    }
    return tree.route_to(goal);
}

SimResult execute_open_loop(const std::vector<Route>& routes, const SimConfig& cfg, bool trace) {
    const Area area = cfg.area.build();
    SimResult result;
    std::vector<StaticObstacle> statics;
    for (std::size_t i = 0; i < cfg.static_obstacles.size(); ++i) {
        statics.push_back({static_cast<int>(i) + 1, cfg.static_obstacles[i]});
    }
    std::vector<MovingObstacle> movings;
    for (std::size_t i = 0; i < cfg.moving_obstacles.size(); ++i) {
        const auto& m = cfg.moving_obstacles[i];
        movings.push_back({static_cast<int>(i) + 1, m.cell, m.cadence, m.spawn_tick, true});
    }
    if (trace) {
        result.trace.push_back(trace_header(cfg, statics));
    }

    std::size_t longest = 0;
    for (std::size_t i = 0; i < routes.size(); ++i) {
        result.drone_ids.push_back(static_cast<int>(i) + 1);
        result.routes.push_back(routes[i]);
        longest = std::max(longest, routes[i].size());
    }
    auto position = [&](std::size_t i, std::size_t step) {
        const auto& r = routes[i];
        return r[std::min(step, r.size() - 1)];
    };

    Rng obstacle_rng = Rng(cfg.seed).fork(1);
    const CellSet no_drones;
    int tick = 0;
    for (std::size_t step = 1; step < longest; ++step, ++tick) {
        for (auto& o : movings) {
            o = step_moving_obstacle(o, tick, obstacle_rng, area, no_drones, false);
        }
        std::vector<DronePosition> before;
        std::vector<DronePosition> after;
        for (std::size_t i = 0; i < routes.size(); ++i) {
            before.push_back({static_cast<int>(i) + 1, position(i, step - 1)});
            after.push_back({static_cast<int>(i) + 1, position(i, step)});
        }
        const auto found = detect_collisions_ground_truth(tick, before, after, statics, movings);
        result.collisions.insert(result.collisions.end(), found.begin(), found.end());
        if (trace) {
            result.trace.push_back(trace_obstacles(tick, movings));
            for (std::size_t i = 0; i < routes.size(); ++i) {
                DroneDecision d;
                d.drone_id = static_cast<int>(i) + 1;
                d.from = before[i].cell;
                d.to = after[i].cell;
                d.action = step < routes[i].size() ? "follow" : "parked";
                result.trace.push_back(trace_drone(tick, d));
            }
        }
    }
    result.ticks = tick;
    return result;
}

SimResult run_baseline(const SimConfig& cfg, bool trace) {
    cfg.validate();
    const Area area = cfg.area.build();
    const auto t0 = std::chrono::steady_clock::now();

    const CellSet obstacles(cfg.static_obstacles.begin(), cfg.static_obstacles.end());
    const Rng base(cfg.seed);
    std::vector<Route> routes;
    bool failed = false;
    for (std::size_t i = 0; i < cfg.drones.size(); ++i) {
        Rng rng = base.fork(1000 + i);
        const auto& d = cfg.drones[i];
        try {
            routes.push_back(cfg.algorithm == Algorithm::RrtStar
                                 ? rrt_star_plan(d.start, d.dest, obstacles, area, rng, cfg.planner)
                                 : rrt_plan(d.start, d.dest, obstacles, area, rng, cfg.planner));
        } catch (const PlanFailure&) {
            failed = true;
            routes.push_back({d.start});
        }
    }
    SimResult result = execute_open_loop(routes, cfg, trace);
    result.timed_out = failed;
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace swarmgrid
