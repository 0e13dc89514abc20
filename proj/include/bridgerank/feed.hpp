#pragma once
// Atomic allocations and ranked feeds.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bridgerank/types.hpp"

namespace bridgerank {

struct AllocationProperties {
    // Context: the viewer's group when known.
    std::optional<GroupId> viewer_group;
    double value = 0.0;
    // Every component signal used by the value model, for audit.
    std::map<std::string, double> signals;
    // Filled once the allocation is realized (simulator): -1, 0 or +1.
    std::optional<int> realized_vote;
    // Slot filled at random rather than by value (simulator exploration).
    bool explored = false;
};

struct AtomicAllocation {
    int slot = 0;  // 1-based
    ItemId object;
    AllocationProperties properties;
};

struct RankedFeed {
    PersonId viewer;
    std::vector<AtomicAllocation> allocations;
    std::string value_model_digest;
};

}  // namespace bridgerank
