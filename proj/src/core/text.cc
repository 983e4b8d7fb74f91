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

#include "hearth/core/text.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "hearth/core/types.h"
#include "hearth/core/strings.h"

namespace hearth {
namespace {

bool IsTokenByte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsTokenByte(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool IsStopword(std::string_view token) {
  static const std::unordered_set<std::string_view> kStopwords = {
      "a",     "an",   "the",  "and",  "or",   "to",    "of",   "in",
      "on",    "at",   "for",  "with", "my",   "me",    "i",    "is",
      "it",    "be",   "will", "can",  "you",  "your",  "please", "so",
      "that",  "this", "when", "if",   "as",   "up",    "down", "all",
      "some",  "we",   "our",  "us",   "are",  "do",    "make", "let",
      "from",  "into", "by",   "just", "now",  "then",  "get",  "set",
  };
  return kStopwords.contains(token);
}

std::vector<std::string> Keywords(std::string_view text) {
  std::vector<std::string> out;
  for (std::string& token : Tokenize(text)) {
    if (IsStopword(token)) continue;
    if (std::find(out.begin(), out.end(), token) == out.end()) {
      out.push_back(std::move(token));
    }
  }
  return out;
}

std::vector<std::string> NonEmptyLines(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view line : SplitAny(text, "\n")) {
    std::string trimmed = Trim(line);
    if (!trimmed.empty()) out.push_back(std::move(trimmed));
  }
  return out;
}

bool StartsWithIgnoreCase(std::string_view text, std::string_view prefix) {
  const std::string t = ToLower(Trim(text));
  const std::string p = ToLower(prefix);
  return t.size() >= p.size() && t.compare(0, p.size(), p) == 0;
}

}  // namespace hearth
