#include <set>
#include <sstream>

#include "doctest.h"
#include "swarmgrid/harness.hpp"
#include "swarmgrid/scenario.hpp"

using namespace swarmgrid;

namespace {

std::vector<Cell> straight_route(int moves) {
    std::vector<Cell> r{{0, 0, 0}};
    for (int i = 1; i <= moves; ++i) {
        r.push_back({i, 0, 0});
        r.push_back({i, 0, 0});  // a hover between moves does not count
    }
    return r;
}

std::string csv_of(const BatchResult& b, bool wall_clock) {
    std::ostringstream os;
    write_csv(os, b, wall_clock);
    return os.str();
}

}  // namespace

TEST_CASE("metrics count moves and ignore hovers") {
    SimResult r;
    r.drone_ids = {1, 2};
    r.routes = {straight_route(10), straight_route(20)};
    const Metrics m = compute_metrics(r, 12.5);
    CHECK(m.arl == 15.0);
    CHECK(m.llr == 20.0);
    CHECK(m.nc == 0.0);
    CHECK(m.t_ms == 12.5);

    SimResult one;
    one.drone_ids = {1};
    one.routes = {{{0, 0, 0}, {0, 0, 1}}};
    one.collisions.push_back({});
    const Metrics n = compute_metrics(one, 0.0);
    CHECK(n.arl == 1.0);
    CHECK(n.llr == 1.0);
    CHECK(n.nc == 1.0);
}

TEST_CASE("experiment designs are the four fixed layouts") {
    const auto& s = experiment_specs();
    CHECK(s[0].id == 1);
    CHECK(s[0].dims == Extents{10, 10, 10});
    CHECK(s[0].drones == 20);
    CHECK(s[0].static_obstacles == 20);
    CHECK(s[0].moving_obstacles == 20);
    CHECK(s[1].id == 2);
    CHECK(s[1].dims == Extents{20, 20, 20});
    CHECK(s[1].drones == 50);
    CHECK(s[1].static_obstacles == 50);
    CHECK(s[1].moving_obstacles == 50);
    CHECK(s[2].id == 3);
    CHECK(s[2].dims == Extents{10, 10, 10});
    CHECK(s[2].drones == 20);
    CHECK(s[2].static_obstacles == 40);
    CHECK(s[2].moving_obstacles == 40);
    CHECK(s[3].id == 4);
    CHECK(s[3].dims == Extents{20, 20, 20});
    CHECK(s[3].drones == 100);
    CHECK(s[3].static_obstacles == 50);
    CHECK(s[3].moving_obstacles == 50);
    CHECK(experiment_spec(4).drones == 100);
    CHECK_THROWS_AS(experiment_spec(0), InvalidConfig);
    CHECK_THROWS_AS(experiment_spec(5), InvalidConfig);
}

TEST_CASE("experiment placement uses distinct in-bounds cells") {
    for (int id = 1; id <= 4; ++id) {
        const ExperimentSpec& spec = experiment_spec(id);
        const SimConfig cfg = build_experiment(spec, 99);
        CHECK(static_cast<int>(cfg.drones.size()) == spec.drones);
        CHECK(static_cast<int>(cfg.static_obstacles.size()) == spec.static_obstacles);
        CHECK(static_cast<int>(cfg.moving_obstacles.size()) == spec.moving_obstacles);
        const Area area = cfg.area.build();
        std::set<Cell> cells;
        for (const auto& d : cfg.drones) {
            cells.insert(d.start);
            cells.insert(d.dest);
        }
        for (const auto& c : cfg.static_obstacles) {
            cells.insert(c);
        }
        for (const auto& m : cfg.moving_obstacles) {
            cells.insert(m.cell);
        }
        CHECK(cells.size() ==
              static_cast<std::size_t>(2 * spec.drones + spec.static_obstacles + spec.moving_obstacles));
        for (const Cell& c : cells) {
            CHECK(area.contains(c));
        }
        CHECK_NOTHROW(cfg.validate());
    }
}

TEST_CASE("placement fails when the area is too small") {
    ExperimentSpec tiny = experiment_spec(1);
    tiny.dims = {2, 2, 2};
    CHECK_THROWS_AS(build_experiment(tiny, 1), PlacementFailure);
}

TEST_CASE("placement depends on the seed only") {
    const auto a = dump_scenario(build_experiment(experiment_spec(1), 5, Algorithm::Proposed));
    const auto b = dump_scenario(build_experiment(experiment_spec(1), 5, Algorithm::Proposed));
    const auto c = dump_scenario(build_experiment(experiment_spec(1), 6, Algorithm::Proposed));
    CHECK(a == b);
    CHECK(a != c);
    const SimConfig p = build_experiment(experiment_spec(1), 5, Algorithm::Proposed);
    const SimConfig r = build_experiment(experiment_spec(1), 5, Algorithm::RrtStar);
    for (std::size_t i = 0; i < p.drones.size(); ++i) {
        CHECK(p.drones[i].start == r.drones[i].start);
        CHECK(p.drones[i].dest == r.drones[i].dest);
    }
}

TEST_CASE("run seeds differ per run and per base") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t base : {0ULL, 1ULL, 2ULL}) {
        for (int run = 0; run < 10; ++run) {
            seen.insert(run_seed(base, run));
        }
    }
    CHECK(seen.size() == 30);
}

TEST_CASE("a single-run batch aggregates to that run") {
    const BatchResult b = run_batch(experiment_spec(1), Algorithm::Proposed, 1, 7);
    REQUIRE(b.runs.size() == 1);
    CHECK(b.mean.metrics == b.runs[0].metrics);
    CHECK(b.mean.ticks == b.runs[0].ticks);
    CHECK(b.mean.run == -1);
}

TEST_CASE("proposed batches are collision free and respect the distance bound") {
    const BatchResult b = run_batch(experiment_spec(1), Algorithm::Proposed, 3, 11);
    for (const auto& row : b.runs) {
        CHECK(row.metrics.nc == 0.0);
        CHECK(row.timeouts == 0);
        CHECK(row.metrics.llr >= row.metrics.arl);
        const SimConfig cfg = build_experiment(experiment_spec(1), run_seed(11, row.run), Algorithm::Proposed);
        double lower = 0.0;
        for (const auto& d : cfg.drones) {
            lower += manhattan(d.start, d.dest);
        }
        CHECK(row.metrics.arl >= lower / static_cast<double>(cfg.drones.size()));
    }
}

TEST_CASE("CSV output is reproducible and round-trips") {
    const BatchResult a = run_batch(experiment_spec(1), Algorithm::Proposed, 2, 3);
    const BatchResult b = run_batch(experiment_spec(1), Algorithm::Proposed, 2, 3);
    CHECK(csv_of(a, false) == csv_of(b, false));

    std::istringstream in(csv_of(a, true));
    const ParsedCsv parsed = parse_csv(in);
    REQUIRE(parsed.runs.size() == 2);
    CHECK(parsed.runs[0] == a.runs[0]);
    CHECK(parsed.runs[1] == a.runs[1]);
    REQUIRE(parsed.mean);
    CHECK(*parsed.mean == a.mean);
}

TEST_CASE("CSV header and row shape are checked") {
    const std::string header = "run,algorithm,experiment,ARL,LLR,NC,T_ms,ticks,timeouts\n";
    std::istringstream bad_header("run,ARL\n");
    CHECK_THROWS_AS(parse_csv(bad_header), ParseError);
    std::istringstream short_row(header + "0,proposed,1,2\n");
    CHECK_THROWS_AS(parse_csv(short_row), ParseError);
    std::istringstream bad_number(header + "0,proposed,1,x,2,0,1,3,0\n");
    CHECK_THROWS_AS(parse_csv(bad_number), ParseError);
    std::istringstream ok(header + "0,rrt-star,2,1.5,3,4,0,3,0\nmean,rrt-star,2,1.5,3,4,0,3,0\n");
    const ParsedCsv p = parse_csv(ok);
    REQUIRE(p.runs.size() == 1);
    CHECK(p.runs[0].algorithm == Algorithm::RrtStar);
    CHECK(p.runs[0].metrics.arl == 1.5);
    CHECK(p.mean->run == -1);
}

TEST_CASE("scenario documents round-trip") {
    const SimConfig cfg = build_experiment(experiment_spec(3), 8, Algorithm::Rrt);
    std::istringstream in(dump_scenario(cfg));
    const SimConfig back = parse_scenario(in);
    CHECK(dump_scenario(back) == dump_scenario(cfg));
    CHECK(back.algorithm == Algorithm::Rrt);
    CHECK(back.drones.size() == 20);
}

TEST_CASE("malformed scenarios raise parse errors") {
    std::istringstream not_json("{ area: ");
    CHECK_THROWS_AS(parse_scenario(not_json), ParseError);
    std::istringstream no_area(R"({"drones": []})");
    CHECK_THROWS_AS(parse_scenario(no_area), ParseError);
    std::istringstream bad_cell(R"({"area": {"dims": [5, 5, 5]}, "drones": [{"start": [1, 2], "dest": [0, 0, 0]}]})");
    CHECK_THROWS_AS(parse_scenario(bad_cell), ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ParseError);
}
