#include "swarmgrid/world.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace swarmgrid {

std::string to_string(const Cell& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cell& c) {
    return os << '(' << c.x << ',' << c.y << ',' << c.z << ')';
}

SafetyParams::SafetyParams(double speed_mps, double latency_s, double processing_s)
    : speed_(speed_mps), latency_(latency_s), processing_(processing_s) {
    if (!(speed_ >= 0.0) || !(latency_ >= 0.0) || !(processing_ >= 0.0)) {
        throw InvalidConfig("safety parameters must be non-negative");
    }
}

double safe_distance(const SafetyParams& p) {
    return 2.0 * p.speed() * (2.0 * p.latency() + p.processing());
}

Area::Area(Extents dims, double spacing_m, double sensing_range_m, SafetyParams params)
    : dims_(dims),
      spacing_(spacing_m),
      sensing_range_(sensing_range_m),
      safe_distance_(swarmgrid::safe_distance(params)),
      params_(params) {
    if (dims_.x < 2 || dims_.y < 2 || dims_.z < 2) {
        throw InvalidConfig("every area extent must be at least 2");
    }
    if (spacing_ < safe_distance_) {
        throw SpacingViolation("grid spacing " + std::to_string(spacing_) +
                               " m is below the safe distance " + std::to_string(safe_distance_) + " m");
    }
    if (spacing_ > sensing_range_) {
        throw SpacingViolation("grid spacing " + std::to_string(spacing_) +
                               " m exceeds the sensing range " + std::to_string(sensing_range_) + " m");
    }
}

std::size_t Area::volume() const {
    return static_cast<std::size_t>(dims_.x) * static_cast<std::size_t>(dims_.y) *
           static_cast<std::size_t>(dims_.z);
}

bool Area::contains(const Cell& c) const {
    return c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < dims_.x && c.y < dims_.y && c.z < dims_.z;
}

std::size_t Area::index(const Cell& c) const {
    return (static_cast<std::size_t>(c.z) * static_cast<std::size_t>(dims_.y) +
            static_cast<std::size_t>(c.y)) *
               static_cast<std::size_t>(dims_.x) +
           static_cast<std::size_t>(c.x);
}

Cell Area::cell_at(std::size_t index) const {
    const auto dx = static_cast<std::size_t>(dims_.x);
    const auto dy = static_cast<std::size_t>(dims_.y);
    return Cell{static_cast<int>(index % dx), static_cast<int>((index / dx) % dy),
                static_cast<int>(index / (dx * dy))};
}

std::vector<Cell> Area::neighbors(const Cell& c) const {
    if (!contains(c)) {
        throw OutOfBounds("cell " + to_string(c) + " is outside the area");
    }
    std::vector<Cell> out;
    out.reserve(kAxisSteps.size());
    for (const auto& step : kAxisSteps) {
        const Cell n = shifted(c, step);
        if (contains(n)) {
            out.push_back(n);
        }
    }
    return out;
}

int manhattan(const Cell& a, const Cell& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

int chebyshev(const Cell& a, const Cell& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

bool axis_adjacent(const Cell& a, const Cell& b) { return manhattan(a, b) == 1; }

}  // namespace swarmgrid
