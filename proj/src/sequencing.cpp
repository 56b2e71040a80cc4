#include "sequencing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace pida::detail {

namespace {

// Earliest-deadline list scheduling without unforced idling. Succeeds on
// most sets met in practice; failure proves nothing.
bool edf_greedy(std::span<const Job> jobs, std::vector<TimeSlot>& starts) {
  const std::size_t n = jobs.size();
  std::vector<bool> done(n, false);
  TimeSlot time = std::numeric_limits<TimeSlot>::max();
  for (const auto& j : jobs) time = std::min(time, j.release);
  std::size_t placed = 0;
  while (placed < n) {
    std::size_t pick = n;
    TimeSlot next_release = std::numeric_limits<TimeSlot>::max();
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (jobs[i].release <= time) {
        if (pick == n || jobs[i].deadline < jobs[pick].deadline) pick = i;
      } else {
        next_release = std::min(next_release, jobs[i].release);
      }
    }
    if (pick == n) {
      time = next_release;
      continue;
    }
    if (time + jobs[pick].duration > jobs[pick].deadline) return false;
    starts[pick] = time;
    time += jobs[pick].duration;
    done[pick] = true;
    ++placed;
  }
  return true;
}

class ExactSequencer {
 public:
  explicit ExactSequencer(std::span<const Job> jobs) : jobs_(jobs), starts_(jobs.size()) {
    order_.resize(jobs.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return jobs_[a].deadline != jobs_[b].deadline ? jobs_[a].deadline < jobs_[b].deadline
                                                    : jobs_[a].release < jobs_[b].release;
    });
    full_ = jobs.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << jobs.size()) - 1;
  }

  bool run() { return dfs(0, std::numeric_limits<TimeSlot>::min()); }
  const std::vector<TimeSlot>& starts() const { return starts_; }

 private:
  bool dfs(std::uint64_t mask, TimeSlot time) {
    if (mask == full_) return true;
    auto [it, inserted] = best_time_.try_emplace(mask, time);
    if (!inserted) {
      if (it->second <= time) return false;
      it->second = time;
    }
    for (std::size_t k : order_) {
      if (mask >> k & 1U) continue;
      if (std::max(time, jobs_[k].release) + jobs_[k].duration > jobs_[k].deadline) return false;
    }
    for (std::size_t j : order_) {
      if (mask >> j & 1U) continue;
      const TimeSlot start = std::max(time, jobs_[j].release);
      // A job that fits entirely before `start` dominates starting j now.
      bool dominated = false;
      for (std::size_t k : order_) {
        if (k == j || (mask >> k & 1U)) continue;
        if (std::max(time, jobs_[k].release) + jobs_[k].duration <= start) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      starts_[j] = start;
      if (dfs(mask | (std::uint64_t{1} << j), start + jobs_[j].duration)) return true;
    }
    return false;
  }

  std::span<const Job> jobs_;
  std::vector<std::size_t> order_;
  std::vector<TimeSlot> starts_;
  std::uint64_t full_ = 0;
  std::unordered_map<std::uint64_t, TimeSlot> best_time_;
};

}  // namespace

std::vector<TimeSlot> sequence(std::span<const Job> jobs) {
  if (jobs.empty()) return {};
  if (jobs.size() > 64) throw std::length_error("sequence: more than 64 jobs on one seller");
  for (const auto& j : jobs) {
    if (j.release + j.duration > j.deadline) return {};
  }
  std::vector<TimeSlot> starts(jobs.size());
  if (edf_greedy(jobs, starts)) return starts;
  ExactSequencer exact(jobs);
  if (exact.run()) return exact.starts();
  return {};
}

bool sequenceable(std::span<const Job> jobs) { return jobs.empty() || !sequence(jobs).empty(); }

}  // namespace pida::detail
