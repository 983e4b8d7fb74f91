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

#include "hearth/eval/drs.h"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "hearth/core/errors.h"
#include "hearth/core/strings.h"

namespace hearth::eval {

Rational Rational::Of(int64_t num, int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::ToString() const {
  return den == 1 ? StrCat(num) : StrCat(num, "/", den);
}

absl::StatusOr<Rational> Drs(const DeviceSet& truth,
                             const DeviceSet& predicted) {
  if (predicted.empty()) {
    return EmptyPredictionError("DRS is undefined for an empty prediction");
  }
  DeviceSet common;
  std::set_intersection(truth.begin(), truth.end(), predicted.begin(),
                        predicted.end(), std::inserter(common, common.end()));
  const auto overlap = static_cast<int64_t>(common.size());
  const auto size = static_cast<int64_t>(predicted.size());
  return Rational::Of(overlap - (size - overlap), size);
}

}  // namespace hearth::eval
