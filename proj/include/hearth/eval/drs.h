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

#ifndef HEARTH_EVAL_DRS_H_
#define HEARTH_EVAL_DRS_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "hearth/core/types.h"

namespace hearth::eval {

// Reduced fraction with a positive denominator.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational Of(int64_t num, int64_t den);
  double value() const { return static_cast<double>(num) / den; }
  std::string ToString() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Device relevance score: (|truth ∩ predicted| - |predicted \ truth|) /
// |predicted|, in [-1, 1]. An empty prediction is an EmptyPrediction error.
absl::StatusOr<Rational> Drs(const DeviceSet& truth, const DeviceSet& predicted);

}  // namespace hearth::eval

#endif  // HEARTH_EVAL_DRS_H_
