#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "swarmgrid/rng.hpp"
#include "swarmgrid/world.hpp"

namespace swarmgrid {

/// Mutually-exclusive cell locks. A cell is either unlocked or held by
/// exactly one drone.
class LockTable {
public:
    /// Succeeds if the cell is unlocked or already held by `drone_id`.
    /// The table is unchanged on failure.
    bool try_acquire(int drone_id, const Cell& cell);

    /// Throws NotHolder unless `drone_id` holds the cell.
    void release(int drone_id, const Cell& cell);

    std::optional<int> holder(const Cell& cell) const;
    bool available_to(int drone_id, const Cell& cell) const;

    /// Cells held by a drone, in acquisition order.
    const std::vector<Cell>& held_by(int drone_id) const;

    std::size_t size() const { return holders_.size(); }

    /// Checks that the cell->holder and holder->cells views agree.
    bool consistent() const;

private:
    std::unordered_map<Cell, int, CellHash> holders_;
    std::unordered_map<int, std::vector<Cell>> held_;
};

struct LockRequest {
    int drone_id = 0;
    Cell cell;
};

/// Processes requests in a seeded-random order through try_acquire, so a
/// contested cell has exactly one winner. Deterministic given the rng state.
std::map<int, bool> arbitrate(LockTable& table, std::vector<LockRequest> requests, Rng& rng);

}  // namespace swarmgrid
