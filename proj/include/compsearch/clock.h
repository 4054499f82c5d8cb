// Copyright 2026 The compsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPSEARCH_CLOCK_H_
#define COMPSEARCH_CLOCK_H_

#include <map>
#include <mutex>
#include <string>
#include <string_view>

namespace compsearch {

// Monotonic clock in seconds. Every time-dependent part of a run (rate
// limiting, fetch timestamps, completion telemetry) reads time through this
// interface so tests can substitute a deterministic one. Implementations must
// be safe to call from concurrent per-database tasks.
class Clock {
 public:
  virtual ~Clock() = default;

  virtual double Now() = 0;
  virtual void SleepUntil(double deadline) = 0;

  // Seconds after `run_start` at which `database` finished its extraction
  // pipeline. Called exactly once per database, at the moment it finishes.
  virtual double CompletionOffset(std::string_view database, double run_start) {
    (void)database;
    return Now() - run_start;
  }
};

class SteadyClock final : public Clock {
 public:
  double Now() override;
  void SleepUntil(double deadline) override;
};

// Time only moves when told to. SleepUntil jumps forward instead of blocking.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(double start = 0.0) : now_(start) {}

  double Now() override;
  void SleepUntil(double deadline) override;
  void Advance(double seconds);

 private:
  std::mutex mu_;
  double now_;
};

// Replays recorded per-database completion offsets. Everything else is
// delegated to `base`; databases missing from the schedule fall back to it.
class ReplayClock final : public Clock {
 public:
  ReplayClock(Clock& base, std::map<std::string, double> schedule)
      : base_(base), schedule_(std::move(schedule)) {}

  double Now() override { return base_.Now(); }
  void SleepUntil(double deadline) override { base_.SleepUntil(deadline); }
  double CompletionOffset(std::string_view database,
                          double run_start) override;

  const std::map<std::string, double>& schedule() const { return schedule_; }

 private:
  Clock& base_;
  std::map<std::string, double> schedule_;
};

}  // namespace compsearch

#endif  // COMPSEARCH_CLOCK_H_
