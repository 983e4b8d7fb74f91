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

#include "hearth/core/strings.h"

namespace hearth {

std::vector<std::string_view> SplitAny(std::string_view text,
                                       std::string_view delims,
                                       bool skip_empty) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || delims.find(text[i]) != std::string_view::npos) {
      std::string_view piece = text.substr(start, i - start);
      if (!skip_empty || !piece.empty()) out.push_back(piece);
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> SplitN(std::string_view text, char delim,
                                size_t max_parts) {
  std::vector<std::string> out;
  size_t start = 0;
  while (out.size() + 1 < max_parts) {
    const size_t pos = text.find(delim, start);
    if (pos == std::string_view::npos) break;
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  out.emplace_back(text.substr(start));
  return out;
}

std::string ReplaceAll(
    std::string_view text,
    const std::vector<std::pair<std::string, std::string>>& subs) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    bool replaced = false;
    for (const auto& [from, to] : subs) {
      if (!from.empty() && text.compare(i, from.size(), from) == 0) {
        out += to;
        i += from.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(text[i++]);
  }
  return out;
}

}  // namespace hearth
