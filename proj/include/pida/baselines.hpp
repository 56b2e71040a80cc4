#pragma once

#include <cstdint>

#include "pida/domain.hpp"

namespace pida {

/// First-come-first-served: buyers in order of earliest arrival over their
/// entries (ties by id), each placed at the earliest start on the first
/// seller, by ascending id, that fits and where value covers duration * cost.
/// With a nonzero seed, buyers with equal arrival are shuffled instead of
/// ordered by id.
Schedule fcfs_allocate(const Instance& instance, std::uint64_t seed = 0);

/// Full-information greedy: pairs ranked by per-slot surplus v/r - c, then
/// total surplus, then buyer and seller id; one pass, each pair placed at its
/// earliest start if the buyer is still free and the seller still has room.
/// Pairs with negative surplus never trade.
Schedule greedy_allocate(const Instance& instance);

}  // namespace pida
