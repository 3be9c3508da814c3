#pragma once

#include <chrono>

#include "commprof/error.hpp"

namespace commprof {

// Cooperative time limit. Long-running algorithms call check() at iteration
// boundaries; an expired deadline raises TimeoutError.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  static Deadline never() { return Deadline(Clock::time_point::max()); }

  static Deadline after(std::chrono::duration<double> budget) {
    const auto now = Clock::now();
    const auto limit = std::chrono::duration_cast<Clock::duration>(budget);
    if (limit >= Clock::time_point::max() - now) return never();
    return Deadline(now + limit);
  }

  bool unlimited() const { return at_ == Clock::time_point::max(); }
  bool expired() const { return !unlimited() && Clock::now() >= at_; }

  void check() const {
    if (expired()) throw TimeoutError("deadline exceeded");
  }

 private:
  explicit Deadline(Clock::time_point at) : at_(at) {}
  Clock::time_point at_;
};

}  // namespace commprof
