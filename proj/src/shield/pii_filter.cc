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

#include "hearth/shield/pii_filter.h"

#include <algorithm>
#include <cctype>
#include <regex>

#include "hearth/core/types.h"

namespace hearth::shield {
namespace {

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         static_cast<unsigned char>(c) >= 0x80;
}

struct Pattern {
  const char* kind;
  std::regex regex;
};

const std::vector<Pattern>& Patterns() {
  static const auto* patterns = new std::vector<Pattern>{
      {"email",
       std::regex(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,})")},
      {"phone", std::regex(R"(\+?\d([ .()-]*\d){7,})")},
      {"address",
       std::regex(R"(\b\d{1,5}\s+([A-Za-z]+\s+){0,3}(street|st|avenue|ave|road|rd|lane|ln|drive|dr|boulevard|blvd|court|ct|way|place|pl)\b\.?)",
                  std::regex::ECMAScript | std::regex::icase)},
  };
  return *patterns;
}

}  // namespace

PiiFilter::PiiFilter(std::vector<std::string> denylist) {
  for (std::string& entry : denylist) {
    std::string lowered = ToLower(Trim(entry));
    if (!lowered.empty()) denylist_.push_back(std::move(lowered));
  }
  std::sort(denylist_.begin(), denylist_.end());
  denylist_.erase(std::unique(denylist_.begin(), denylist_.end()),
                  denylist_.end());
}

std::vector<PiiHit> PiiFilter::Scan(std::string_view text) const {
  std::vector<PiiHit> hits;
  const std::string lowered = ToLower(text);
  for (const std::string& word : denylist_) {
    size_t pos = lowered.find(word);
    while (pos != std::string::npos) {
      const size_t end = pos + word.size();
      const bool left_ok = pos == 0 || !IsWordChar(lowered[pos - 1]);
      const bool right_ok = end == lowered.size() || !IsWordChar(lowered[end]);
      if (left_ok && right_ok) {
        hits.push_back({"denylist", std::string(text.substr(pos, word.size())),
                        pos});
      }
      pos = lowered.find(word, pos + 1);
    }
  }
  const std::string owned(text);
  for (const Pattern& p : Patterns()) {
    for (auto it = std::sregex_iterator(owned.begin(), owned.end(), p.regex);
         it != std::sregex_iterator(); ++it) {
      hits.push_back({p.kind, it->str(), static_cast<size_t>(it->position())});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const PiiHit& a, const PiiHit& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.text.size() > b.text.size();
  });
  return hits;
}

Redaction PiiFilter::Redact(std::string_view text) const {
  Redaction out;
  out.hits = Scan(text);
  size_t cursor = 0;
  for (const PiiHit& hit : out.hits) {
    if (hit.offset < cursor) {
      // Overlaps a span already replaced; extend it if needed.
      cursor = std::max(cursor, hit.offset + hit.text.size());
      continue;
    }
    out.text.append(text.substr(cursor, hit.offset - cursor));
    out.text.append(kRedactedPlaceholder);
    cursor = hit.offset + hit.text.size();
  }
  if (cursor < text.size()) out.text.append(text.substr(cursor));
  return out;
}

}  // namespace hearth::shield
