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

#include "compsearch/clock.h"

#include <algorithm>
#include <chrono>
#include <thread>

namespace compsearch {

double SteadyClock::Now() {
  using std::chrono::duration;
  return duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void SteadyClock::SleepUntil(double deadline) {
  const double remaining = deadline - Now();
  if (remaining > 0) {
    std::this_thread::sleep_for(std::chrono::duration<double>(remaining));
  }
}

double ManualClock::Now() {
  std::lock_guard lock(mu_);
  return now_;
}

void ManualClock::SleepUntil(double deadline) {
  std::lock_guard lock(mu_);
  now_ = std::max(now_, deadline);
}

void ManualClock::Advance(double seconds) {
  std::lock_guard lock(mu_);
  now_ += seconds;
}

double ReplayClock::CompletionOffset(std::string_view database,
                                     double run_start) {
  auto it = schedule_.find(std::string(database));
  if (it == schedule_.end()) return base_.CompletionOffset(database, run_start);
  return it->second;
}

}  // namespace compsearch
