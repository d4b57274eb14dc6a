#include <set>

#include "doctest.h"
#include "swarmgrid/avoidance.hpp"

using namespace swarmgrid;

namespace {

Area area_of(int n) { return Area({n, n, n}, 10.0, 30.0, SafetyParams(5.0, 0.2, 0.5)); }

struct Fixture {
    Area area = area_of(10);
    LockTable locks;
    std::set<Cell> hazards;
    MoveContext ctx{area, locks, [this](const Cell& c) { return hazards.contains(c); }};
};

}  // namespace

TEST_CASE("redirect prefers a free distance-reducing neighbor") {
    Fixture f;
    f.hazards = {{1, 0, 0}};
    const Drone d = Drone::launch(1, {0, 0, 0}, {3, 3, 0});
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto a = avoid(d, std::nullopt, f.ctx, StallTracker::at(6), rng, {});
        REQUIRE(std::holds_alternative<Redirect>(a));
        CHECK(std::get<Redirect>(a).next == Cell{0, 1, 0});
    }
}

TEST_CASE("locked neighbors are not redirect targets") {
    Fixture f;
    f.locks.try_acquire(2, {0, 1, 0});
    f.hazards = {{1, 0, 0}};
    const Drone d = Drone::launch(1, {0, 0, 0}, {3, 3, 0});
    Rng rng(1);
    CHECK(std::holds_alternative<Hover>(avoid(d, std::nullopt, f.ctx, StallTracker::at(6), rng, {})));
}

TEST_CASE("a fully blocked drone hovers until a threshold is reached") {
    Fixture f;
    Drone d = Drone::launch(1, {5, 5, 5}, {8, 8, 8});
    for (const auto& n : f.area.neighbors({5, 5, 5})) {
        f.hazards.insert(n);
    }
    Rng rng(1);
    const BacktrackConfig cfg;
    d.hover_streak = 4;
    CHECK(std::holds_alternative<Hover>(avoid(d, std::nullopt, f.ctx, StallTracker::at(9), rng, cfg)));
    d.hover_streak = 5;
    CHECK(std::holds_alternative<EnterBacktrack>(avoid(d, std::nullopt, f.ctx, StallTracker::at(9), rng, cfg)));
    d.hover_streak = 0;
    StallTracker stalled = StallTracker::at(9);
    stalled.ticks_without_progress = 14;
    CHECK(std::holds_alternative<Hover>(avoid(d, std::nullopt, f.ctx, stalled, rng, cfg)));
    stalled.ticks_without_progress = 15;
    CHECK(std::holds_alternative<EnterBacktrack>(avoid(d, std::nullopt, f.ctx, stalled, rng, cfg)));
}

TEST_CASE("stall tracker counts ticks without a new best distance") {
    StallTracker s = StallTracker::at(10);
    s.observe(10);
    s.observe(11);
    CHECK(s.ticks_without_progress == 2);
    s.observe(9);
    CHECK(s.ticks_without_progress == 0);
    CHECK(s.best_distance == 9);
}

TEST_CASE("backtrack moves away from the destination along the drawn axis") {
    Fixture f;
    int x_draws = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng probe(seed);
        const auto axis = probe.below(3);
        Drone d = Drone::launch(1, {2, 2, 2}, {0, 0, 0});
        Rng rng(seed);
        const auto next = backtrack_step(d, f.ctx, rng);
        REQUIRE(next);
        Cell expected{2, 2, 2};
        expected[static_cast<int>(axis)] = 3;
        CHECK(*next == expected);
        CHECK(d.backtrack.attempts == 1);
        CHECK(d.backtrack.steps_done == 1);
        x_draws += axis == 0 ? 1 : 0;
    }
    CHECK(x_draws > 0);
}

TEST_CASE("a blocked backtrack cell means hover and counts the attempt") {
    Fixture f;
    f.hazards = {{3, 2, 2}, {2, 3, 2}, {2, 2, 3}};
    Drone d = Drone::launch(1, {2, 2, 2}, {0, 0, 0});
    Rng rng(3);
    CHECK_FALSE(backtrack_step(d, f.ctx, rng));
    CHECK(d.backtrack.attempts == 1);
    CHECK(d.backtrack.steps_done == 0);
}

TEST_CASE("backtrack outcomes match an enumeration of away cells near the boundary") {
    const Area area = area_of(3);
    LockTable locks;
    const MoveContext ctx{area, locks, [](const Cell&) { return false; }};
    for (std::size_t ci = 0; ci < area.volume(); ++ci) {
        for (std::size_t di = 0; di < area.volume(); ++di) {
            const Cell cur = area.cell_at(ci);
            const Cell dest = area.cell_at(di);
            if (cur == dest) {
                continue;
            }
            // Every unit step that increases the distance, in or out of bounds.
            std::set<Cell> valid;
            bool some_invalid = false;
            for (const auto& s : kAxisSteps) {
                const Cell n = shifted(cur, s);
                if (manhattan(n, dest) <= manhattan(cur, dest)) {
                    continue;
                }
                if (area.contains(n)) {
                    valid.insert(n);
                } else {
                    some_invalid = true;
                }
            }
            std::set<Cell> seen;
            bool saw_hover = false;
            for (std::uint64_t seed = 0; seed < 200; ++seed) {
                Drone d = Drone::launch(1, cur, dest);
                Rng rng(seed);
                if (const auto next = backtrack_step(d, ctx, rng)) {
                    CHECK(area.contains(*next));
                    CHECK(manhattan(*next, dest) == manhattan(cur, dest) + 1);
                    seen.insert(*next);
                } else {
                    saw_hover = true;
                }
            }
            CHECK(seen == valid);
            CHECK(saw_hover == some_invalid);
        }
    }
}

TEST_CASE("backtrack exit conditions") {
    const BacktrackConfig cfg;
    Drone d = Drone::launch(1, {0, 0, 0}, {5, 5, 5});
    d.mode = Mode::Backtrack;
    d.backtrack = {2, 4};
    CHECK_FALSE(backtrack_exit_check(d, cfg));
    CHECK(d.mode == Mode::Backtrack);
    d.backtrack = {3, 3};
    CHECK(backtrack_exit_check(d, cfg));
    CHECK(d.mode == Mode::Normal);
    CHECK(d.backtrack.steps_done == 0);
    d.mode = Mode::Backtrack;
    d.backtrack = {1, 10};
    CHECK(backtrack_exit_check(d, cfg));
}

TEST_CASE("backtrack configuration must be positive") {
    CHECK_NOTHROW(BacktrackConfig{}.validate());
    CHECK_THROWS_AS((BacktrackConfig{0, 10, 5, 15}.validate()), InvalidConfig);
    CHECK_THROWS_AS((BacktrackConfig{3, 10, -1, 15}.validate()), InvalidConfig);
}

TEST_CASE("action names") {
    CHECK(action_name(Redirect{}) == "redirect");
    CHECK(action_name(Hover{}) == "hover");
    CHECK(action_name(EnterBacktrack{}) == "enter-backtrack");
}
