#pragma once

#include <vector>

#include "swarmgrid/engine.hpp"

namespace swarmgrid {

using Route = std::vector<Cell>;

/// Search tree over grid cells. Edges are axis-ordered staircase connectors
/// (x, then y, then z), so an edge may span several cells; cost is the sum of
/// edge lengths from the root.
struct PlannerTree {
    std::vector<Cell> nodes;
    std::vector<int> parent;  // -1 for the root
    std::vector<int> cost;
};

/// Cells strictly after `from` up to and including `to`, stepping x, then y, then z.
std::vector<Cell> staircase(const Cell& from, const Cell& to);

/// Grid RRT: goal-biased uniform sampling, Manhattan-nearest node, one axis
/// step toward the sample. Returns as soon as the destination joins the tree.
/// Throws PlanFailure after cfg.max_iters iterations without reaching it.
Route rrt_plan(const Cell& start, const Cell& dest, const CellSet& static_obstacles, const Area& area, Rng& rng,
               const PlannerConfig& cfg, PlannerTree* tree_out = nullptr);

/// Grid RRT*: RRT extension plus choose-parent and rewiring among tree nodes
/// within cfg.rewire_radius (Manhattan). A sample landing on an existing node
/// re-optimizes that node. Runs the full iteration budget unless the
/// destination is reached at its Manhattan lower bound.
Route rrt_star_plan(const Cell& start, const Cell& dest, const CellSet& static_obstacles, const Area& area, Rng& rng,
                    const PlannerConfig& cfg, PlannerTree* tree_out = nullptr);

/// Moves every drone one route step per tick with no locking, prediction or
/// avoidance; moving obstacles wander without avoiding drones. Drones that
/// finish their route stay parked at its last cell.
SimResult execute_open_loop(const std::vector<Route>& routes, const SimConfig& cfg, bool trace = false);

/// Plans each drone with the configured sampling planner, then executes the
/// routes open-loop. A planning failure marks the result as timed out.
SimResult run_baseline(const SimConfig& cfg, bool trace = false);

}  // namespace swarmgrid
