// Copyright 2026 The hyperdt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERDT_BUDGET_H_
#define HYPERDT_BUDGET_H_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>

#include "hyperdt/errors.h"

namespace hyperdt {

using Clock = std::chrono::steady_clock;

// Thrown from inside an evaluation whose per-evaluation deadline passed.
class EvaluationTimeout : public Error {
 public:
  EvaluationTimeout() : Error("evaluation timed out") {}
};

// Optional point in time checked cooperatively by long-running builders.
class Deadline {
 public:
  Deadline() = default;
  static Deadline After(std::chrono::duration<double> d) {
    Deadline out;
    out.at_ = Clock::now() +
              std::chrono::duration_cast<Clock::duration>(d);
    return out;
  }
  static Deadline At(Clock::time_point t) {
    Deadline out;
    out.at_ = t;
    return out;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void Check() const {
    if (expired()) throw EvaluationTimeout();
  }

 private:
  std::optional<Clock::time_point> at_;
};

// Search budget: an optional wall-clock limit and an optional evaluation
// count limit. Once expired() returns true it keeps returning true.
class BudgetClock {
 public:
  // No limit at all.
  BudgetClock() : start_(Clock::now()) {}

  static BudgetClock Seconds(double seconds) {
    BudgetClock b;
    b.deadline_ = b.start_ + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(seconds));
    return b;
  }
  static BudgetClock Evaluations(int64_t count) {
    BudgetClock b;
    b.max_evaluations_ = count;
    return b;
  }
  BudgetClock& WithEvaluationLimit(int64_t count) {
    max_evaluations_ = count;
    return *this;
  }

  BudgetClock(const BudgetClock& other)
      : start_(other.start_),
        deadline_(other.deadline_),
        max_evaluations_(other.max_evaluations_),
        used_(other.used_.load()),
        latched_(other.latched_.load()) {}

  bool expired() const {
    if (latched_.load()) return true;
    const bool out =
        (deadline_ && Clock::now() >= *deadline_) ||
        (max_evaluations_ && used_.load() >= *max_evaluations_);
    if (out) latched_.store(true);
    return out;
  }

  // Records one evaluation.
  void Charge() { used_.fetch_add(1); }
  int64_t evaluations() const { return used_.load(); }
  // Remaining evaluation allowance, empty when unlimited.
  std::optional<int64_t> remaining_evaluations() const {
    if (!max_evaluations_) return std::nullopt;
    return std::max<int64_t>(0, *max_evaluations_ - used_.load());
  }
  bool has_deadline() const { return deadline_.has_value(); }

  double elapsed_seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  Clock::time_point start() const { return start_; }

 private:
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::optional<int64_t> max_evaluations_;
  std::atomic<int64_t> used_{0};
  mutable std::atomic<bool> latched_{false};
};

}  // namespace hyperdt

#endif  // HYPERDT_BUDGET_H_
