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

#ifndef HEARTH_FORGE_ROUGE_H_
#define HEARTH_FORGE_ROUGE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hearth::forge {

// Longest common subsequence length over tokens, O(|a|·|b|) time and
// O(min(|a|,|b|)) space.
size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b);

// ROUGE-L F1 (beta = 1) with P = LCS/|b| and R = LCS/|a|. Returns 0 when
// either side is empty or nothing is shared. Symmetric.
double RougeL(std::span<const std::string> a, std::span<const std::string> b);

// RougeL over Tokenize(a), Tokenize(b).
double RougeLText(std::string_view a, std::string_view b);

}  // namespace hearth::forge

#endif  // HEARTH_FORGE_ROUGE_H_
