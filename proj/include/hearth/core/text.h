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

#ifndef HEARTH_CORE_TEXT_H_
#define HEARTH_CORE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace hearth {

// Lowercases and splits on whitespace and ASCII punctuation. No stemming.
// Bytes >= 0x80 are kept as token characters.
std::vector<std::string> Tokenize(std::string_view text);

bool IsStopword(std::string_view token);

// Tokens of `text` minus stopwords, deduplicated, in first-seen order.
std::vector<std::string> Keywords(std::string_view text);

// Non-empty trimmed lines of `text`.
std::vector<std::string> NonEmptyLines(std::string_view text);

// Case-insensitive "does `text` start with `prefix`" after trimming.
bool StartsWithIgnoreCase(std::string_view text, std::string_view prefix);

}  // namespace hearth

#endif  // HEARTH_CORE_TEXT_H_
