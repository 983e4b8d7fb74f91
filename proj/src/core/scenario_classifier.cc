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

#include "hearth/core/scenario_classifier.h"

#include <string>
#include <unordered_map>
#include <vector>

#include "hearth/core/text.h"

namespace hearth {
namespace {

const std::unordered_map<std::string, size_t>& KeywordIndex() {
  static const auto* index = [] {
    const std::vector<std::vector<std::string>> words = {
        // lighting
        {"light", "lights", "lamp", "lamps", "bright", "brighten", "dim",
         "bulb", "bulbs", "illuminate", "glow", "led"},
        // climate
        {"temperature", "thermostat", "warm", "warmer", "cool", "cooler",
         "heat", "heater", "heating", "chilly", "cold", "hot", "ac",
         "conditioner", "fan", "humid", "humidity", "degrees"},
        // security
        {"lock", "locked", "unlock", "door", "doors", "camera", "alarm",
         "security", "intruder", "sensor", "garage", "guests", "doorbell",
         "arm", "burglar", "window", "windows"},
        // atmosphere
        {"mood", "cozy", "romantic", "relax", "relaxing", "ambiance",
         "atmosphere", "blinds", "curtains", "scent", "aroma", "calm",
         "party", "dinner"},
        // power
        {"energy", "power", "electricity", "plug", "plugs", "save",
         "saving", "standby", "bill", "charger", "charge", "solar"},
        // entertainment
        {"tv", "movie", "movies", "music", "song", "songs", "play",
         "netflix", "show", "game", "games", "soundbar", "volume",
         "speaker"},
        // cleaning
        {"vacuum", "clean", "cleaning", "laundry", "wash", "washing",
         "dishes", "dishwasher", "dryer", "mop", "dust"},
        // kitchen
        {"coffee", "oven", "kettle", "cook", "cooking", "breakfast",
         "fridge", "refrigerator", "tea", "bake", "kitchen", "preheat"},
        // air quality
        {"air", "purifier", "pollen", "smoke", "stuffy", "fresh",
         "allergy", "allergies", "pm2", "dusty", "odor", "ventilate"},
    };
    auto* m = new std::unordered_map<std::string, size_t>();
    for (size_t i = 0; i < words.size(); ++i) {
      for (const std::string& w : words[i]) m->emplace(w, i);
    }
    return m;
  }();
  return *index;
}

}  // namespace

std::array<int, 9> ScenarioKeywordHits(std::string_view text) {
  std::array<int, 9> hits{};
  const auto& index = KeywordIndex();
  for (const std::string& token : Tokenize(text)) {
    if (auto it = index.find(token); it != index.end()) ++hits[it->second];
  }
  return hits;
}

std::optional<Scenario> ClassifyScenario(std::string_view text) {
  const std::array<int, 9> hits = ScenarioKeywordHits(text);
  size_t best = 0;
  for (size_t i = 1; i < hits.size(); ++i) {
    if (hits[i] > hits[best]) best = i;
  }
  if (hits[best] == 0) return std::nullopt;
  return kAllScenarios[best];
}

}  // namespace hearth
