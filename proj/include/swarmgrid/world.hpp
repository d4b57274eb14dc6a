#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "swarmgrid/error.hpp"

namespace swarmgrid {

/// Integer grid coordinates. Physical position is index * spacing meters.
struct Cell {
    int x = 0;
    int y = 0;
    int z = 0;

    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

    constexpr int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    constexpr int& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
};

std::string to_string(const Cell& c);
std::ostream& operator<<(std::ostream& os, const Cell& c);

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        std::uint64_t h = static_cast<std::uint32_t>(c.x);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(c.y);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(c.z);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

/// Unit step along one axis.
struct Step {
    int axis;
    int delta;  // -1 or +1
};

/// The six axis-aligned unit steps, in the fixed order -x, +x, -y, +y, -z, +z.
inline constexpr std::array<Step, 6> kAxisSteps{{
    {0, -1}, {0, +1}, {1, -1}, {1, +1}, {2, -1}, {2, +1},
}};

constexpr Cell shifted(Cell c, Step s) {
    c[s.axis] += s.delta;
    return c;
}

/// Maximum UAV speed (m/s), communication latency (s), detection and processing time (s).
class SafetyParams {
public:
    SafetyParams(double speed_mps, double latency_s, double processing_s);

    double speed() const { return speed_; }
    double latency() const { return latency_; }
    double processing() const { return processing_; }

private:
    double speed_;
    double latency_;
    double processing_;
};

/// Minimum inter-cell spacing that leaves two approaching UAVs time to react:
/// 2 * Sp * (2 * Cl + Pt).
double safe_distance(const SafetyParams& p);

struct Extents {
    int x = 0;
    int y = 0;
    int z = 0;

    friend constexpr bool operator==(const Extents&, const Extents&) = default;
};

/// The discretized flying zone. Immutable after construction.
class Area {
public:
    /// Throws InvalidConfig for extents < 2 and SpacingViolation unless
    /// safe_distance(params) <= spacing <= sensing_range.
    Area(Extents dims, double spacing_m, double sensing_range_m, SafetyParams params);

    const Extents& dims() const { return dims_; }
    double spacing() const { return spacing_; }
    double sensing_range() const { return sensing_range_; }
    double safe_distance() const { return safe_distance_; }
    const SafetyParams& safety() const { return params_; }

    std::size_t volume() const;
    bool contains(const Cell& c) const;
    std::size_t index(const Cell& c) const;
    Cell cell_at(std::size_t index) const;

    /// In-bounds axis-adjacent cells, in kAxisSteps order. Throws OutOfBounds.
    std::vector<Cell> neighbors(const Cell& c) const;

private:
    Extents dims_;
    double spacing_;
    double sensing_range_;
    double safe_distance_;
    SafetyParams params_;
};

int manhattan(const Cell& a, const Cell& b);
int chebyshev(const Cell& a, const Cell& b);
bool axis_adjacent(const Cell& a, const Cell& b);

}  // namespace swarmgrid

template <>
struct std::hash<swarmgrid::Cell> : swarmgrid::CellHash {};
