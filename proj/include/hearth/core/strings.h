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

#ifndef HEARTH_CORE_STRINGS_H_
#define HEARTH_CORE_STRINGS_H_

#include <iterator>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"
#include "fmt/format.h"

// The system absl ships its own string_view type; let fmt print it.
template <>
struct fmt::formatter<absl::string_view> : fmt::formatter<fmt::string_view> {
  template <typename Ctx>
  auto format(absl::string_view v, Ctx& ctx) const {
    return fmt::formatter<fmt::string_view>::format(
        fmt::string_view(v.data(), v.size()), ctx);
  }
};

namespace hearth {

template <typename... Args>
void StrAppend(std::string* out, const Args&... args) {
  (fmt::format_to(std::back_inserter(*out), "{}", args), ...);
}

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::string out;
  StrAppend(&out, args...);
  return out;
}

template <typename Range>
std::string StrJoin(const Range& items, std::string_view sep) {
  return fmt::format("{}", fmt::join(items, sep));
}

// Splits on any byte in `delims`.
std::vector<std::string_view> SplitAny(std::string_view text,
                                       std::string_view delims,
                                       bool skip_empty = false);

// Splits on `delim` into at most `max_parts` pieces; the last piece keeps
// the remainder.
std::vector<std::string> SplitN(std::string_view text, char delim,
                                size_t max_parts);

std::string ReplaceAll(
    std::string_view text,
    const std::vector<std::pair<std::string, std::string>>& subs);

inline std::string StatusMessage(const absl::Status& status) {
  return std::string(status.message().data(), status.message().size());
}

}  // namespace hearth

#endif  // HEARTH_CORE_STRINGS_H_
