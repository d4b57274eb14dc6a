#include "swarmgrid/coordination.hpp"

#include <algorithm>
#include <set>

#include "swarmgrid/error.hpp"

namespace swarmgrid {

bool LockTable::try_acquire(int drone_id, const Cell& cell) {
    const auto [it, inserted] = holders_.try_emplace(cell, drone_id);
    if (inserted) {
        held_[drone_id].push_back(cell);
        return true;
    }
    return it->second == drone_id;
}

void LockTable::release(int drone_id, const Cell& cell) {
    const auto it = holders_.find(cell);
    if (it == holders_.end() || it->second != drone_id) {
        throw NotHolder("drone " + std::to_string(drone_id) + " does not hold " + to_string(cell));
    }
    holders_.erase(it);
    auto& cells = held_[drone_id];
    std::erase(cells, cell);
    if (cells.empty()) {
        held_.erase(drone_id);
    }
}

std::optional<int> LockTable::holder(const Cell& cell) const {
    const auto it = holders_.find(cell);
    if (it == holders_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool LockTable::available_to(int drone_id, const Cell& cell) const {
    const auto it = holders_.find(cell);
    return it == holders_.end() || it->second == drone_id;
}

const std::vector<Cell>& LockTable::held_by(int drone_id) const {
    static const std::vector<Cell> kNone;
    const auto it = held_.find(drone_id);
    return it == held_.end() ? kNone : it->second;
}

bool LockTable::consistent() const {
    std::size_t total = 0;
    for (const auto& [drone, cells] : held_) {
        std::set<Cell> unique(cells.begin(), cells.end());
        if (unique.size() != cells.size()) {
            return false;
        }
        for (const auto& c : cells) {
            const auto it = holders_.find(c);
            if (it == holders_.end() || it->second != drone) {
                return false;
            }
        }
        total += cells.size();
    }
    return total == holders_.size();
}

std::map<int, bool> arbitrate(LockTable& table, std::vector<LockRequest> requests, Rng& rng) {
    // Canonical order first, so the outcome depends only on the request set and the seed.
    std::sort(requests.begin(), requests.end(),
              [](const LockRequest& a, const LockRequest& b) { return a.drone_id < b.drone_id; });
    rng.shuffle(std::span<LockRequest>(requests));
    std::map<int, bool> granted;
    for (const auto& r : requests) {
        granted[r.drone_id] = table.try_acquire(r.drone_id, r.cell);
    }
    return granted;
}

}  // namespace swarmgrid
