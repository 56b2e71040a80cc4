#pragma once

// Single-seller sequencing: can a set of non-preemptive jobs with release
// times and deadlines all be placed on one charger?

#include <cstdint>
#include <span>
#include <vector>

#include "pida/domain.hpp"

namespace pida::detail {

struct Job {
  TimeSlot release = 0;   // earliest start
  TimeSlot deadline = 0;  // latest finish
  std::int32_t duration = 1;
};

/// Exact feasibility test. Returns start times (same order as `jobs`) of a
/// left-shifted feasible sequence, or an empty vector when none exists.
/// An empty job list yields an empty vector as well; check `jobs.empty()`.
std::vector<TimeSlot> sequence(std::span<const Job> jobs);

bool sequenceable(std::span<const Job> jobs);

}  // namespace pida::detail
