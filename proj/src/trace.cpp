#include "swarmgrid/trace.hpp"

#include <sstream>

#include "json.hpp"

namespace swarmgrid {
namespace {

using ojson = nlohmann::ordered_json;

ojson cell_json(const Cell& c) { return ojson::array({c.x, c.y, c.z}); }

Cell cell_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError("cell must be an [x,y,z] array");
    }
    return Cell{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

char drone_glyph(int id) {
    static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    return id >= 0 && id < 36 ? kDigits[id] : '*';
}

}  // namespace

std::string trace_header(const SimConfig& cfg, std::span<const StaticObstacle> statics) {
    ojson j;
    j["type"] = "header";
    j["algorithm"] = std::string(to_string(cfg.algorithm));
    j["dims"] = ojson::array({cfg.area.dims.x, cfg.area.dims.y, cfg.area.dims.z});
    j["tick_len_ms"] = cfg.tick_len_ms;
    j["seed"] = cfg.seed;
    ojson drones = ojson::array();
    for (std::size_t i = 0; i < cfg.drones.size(); ++i) {
        ojson d;
        d["id"] = static_cast<int>(i) + 1;
        d["start"] = cell_json(cfg.drones[i].start);
        d["dest"] = cell_json(cfg.drones[i].dest);
        drones.push_back(std::move(d));
    }
    j["drones"] = std::move(drones);
    ojson st = ojson::array();
    for (const auto& s : statics) {
        st.push_back(ojson{{"id", s.id}, {"cell", cell_json(s.cell)}});
    }
    j["static"] = std::move(st);
    return j.dump();
}

std::string trace_obstacles(int tick, std::span<const MovingObstacle> movings) {
    ojson j;
    j["type"] = "obstacles";
    j["tick"] = tick;
    ojson mv = ojson::array();
    for (const auto& m : movings) {
        if (m.present_at(tick)) {
            mv.push_back(ojson{{"id", m.id}, {"cell", cell_json(m.cell)}});
        }
    }
    j["moving"] = std::move(mv);
    return j.dump();
}

std::string trace_drone(int tick, const DroneDecision& decision) {
    ojson j;
    j["type"] = "drone";
    j["tick"] = tick;
    j["drone"] = decision.drone_id;
    j["mode"] = std::string(to_string(decision.mode));
    j["cell"] = cell_json(decision.to);
    j["action"] = decision.action;
    j["cause"] = decision.cause;
    ojson preds = ojson::array();
    for (const auto& p : decision.predictions) {
        preds.push_back(
            ojson{{"kind", std::string(to_string(p.kind))}, {"with", p.conflicting_id}, {"cell", cell_json(p.conflict_cell)}});
    }
    j["predictions"] = std::move(preds);
    return j.dump();
}

ReplayTrace read_trace(std::istream& in) {
    ReplayTrace trace;
    bool have_header = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (type == "header") {
                const auto& dims = j.at("dims");
                trace.dims = Extents{dims.at(0).get<int>(), dims.at(1).get<int>(), dims.at(2).get<int>()};
                trace.algorithm = j.at("algorithm").get<std::string>();
                for (const auto& s : j.at("static")) {
                    trace.statics.push_back(cell_from(s.at("cell")));
                }
                have_header = true;
            } else if (type == "obstacles") {
                auto& t = trace.ticks[j.at("tick").get<int>()];
                t.tick = j.at("tick").get<int>();
                for (const auto& m : j.at("moving")) {
                    t.moving.emplace_back(m.at("id").get<int>(), cell_from(m.at("cell")));
                }
            } else if (type == "drone") {
                auto& t = trace.ticks[j.at("tick").get<int>()];
                t.tick = j.at("tick").get<int>();
                t.drones.push_back({j.at("drone").get<int>(), cell_from(j.at("cell")),
                                    j.at("mode").get<std::string>(), j.at("action").get<std::string>()});
            } else {
                throw ParseError("unknown record type '" + type + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) {
        throw ParseError("trace has no header record");
    }
    return trace;
}

std::string render_tick(const ReplayTrace& trace, const ReplayTick& tick, std::optional<int> layer) {
    std::ostringstream os;
    const int z_begin = layer.value_or(0);
    const int z_end = layer ? *layer + 1 : trace.dims.z;
    os << "tick " << tick.tick << '\n';
    for (int z = z_begin; z < z_end; ++z) {
        std::vector<std::string> rows(static_cast<std::size_t>(trace.dims.y),
                                      std::string(static_cast<std::size_t>(trace.dims.x), '.'));
        auto put = [&](const Cell& c, char g) {
            if (c.z == z && c.x >= 0 && c.y >= 0 && c.x < trace.dims.x && c.y < trace.dims.y) {
                rows[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)] = g;
            }
        };
        for (const auto& s : trace.statics) {
            put(s, '#');
        }
        for (const auto& [id, c] : tick.moving) {
            put(c, 'o');
        }
        for (const auto& d : tick.drones) {
            put(d.cell, drone_glyph(d.id));
        }
        os << "z=" << z << '\n';
        for (const auto& r : rows) {
            os << r << '\n';
        }
    }
    return os.str();
}

}  // namespace swarmgrid
