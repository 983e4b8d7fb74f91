// Copyright 2026 The Hearth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEARTH_CORE_CLOCK_H_
#define HEARTH_CORE_CLOCK_H_

#include <atomic>
#include <chrono>
#include <cstdint>

namespace hearth {

// Milliseconds since the Unix epoch.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual int64_t NowMillis() = 0;
};

class SystemClock final : public Clock {
 public:
  int64_t NowMillis() override {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  }
};

// Starts at `start` and advances by `step` on every read, so replays with
// the same call sequence see the same timestamps.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(int64_t start = 1'700'000'000'000, int64_t step = 1000)
      : now_(start), step_(step) {}
  int64_t NowMillis() override { return now_.fetch_add(step_); }
  void Set(int64_t now) { now_.store(now); }

 private:
  std::atomic<int64_t> now_;
  const int64_t step_;
};

}  // namespace hearth

#endif  // HEARTH_CORE_CLOCK_H_
