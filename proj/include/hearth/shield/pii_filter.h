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

#ifndef HEARTH_SHIELD_PII_FILTER_H_
#define HEARTH_SHIELD_PII_FILTER_H_

#include <string>
#include <string_view>
#include <vector>

namespace hearth::shield {

inline constexpr std::string_view kRedactedPlaceholder = "[redacted]";

struct PiiHit {
  std::string kind;  // "denylist", "email", "phone", "address"
  std::string text;
  size_t offset = 0;
};

struct Redaction {
  std::string text;
  std::vector<PiiHit> hits;
};

// Local redaction pass: a whole-word, case-insensitive denylist plus regex
// patterns for e-mail addresses, phone numbers and street addresses.
class PiiFilter {
 public:
  PiiFilter() = default;
  explicit PiiFilter(std::vector<std::string> denylist);

  const std::vector<std::string>& denylist() const { return denylist_; }

  std::vector<PiiHit> Scan(std::string_view text) const;
  Redaction Redact(std::string_view text) const;

 private:
  std::vector<std::string> denylist_;
};

}  // namespace hearth::shield

#endif  // HEARTH_SHIELD_PII_FILTER_H_
