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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hearth/core/catalog.h"
#include "hearth/core/errors.h"
#include "hearth/core/hash.h"
#include "hearth/core/scenario_classifier.h"
#include "hearth/core/serialize.h"
#include "hearth/core/strings.h"
#include "hearth/core/text.h"
#include "hearth/core/types.h"
#include "test_support.h"

namespace hearth {
namespace {

using ::hearth::testing::CatalogIds;
using ::hearth::testing::DataPath;
using ::hearth::testing::RandomSubset;
using ::hearth::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsEmpty;

// Recorded from data/catalog.json once; a change here means the canonical
// form or the fixture changed.
constexpr char kCatalogGoldenSha256[] =
    "dff9d4f78e02460fa9f23150e330b4d8cda594324d11a254147bf9d95d90fb6b";

TEST(ScenarioTest, NineTagsRoundTripByName) {
  std::set<std::string> names;
  for (Scenario s : kAllScenarios) {
    names.insert(std::string(ScenarioName(s)));
    EXPECT_EQ(ParseScenario(ScenarioName(s)), s);
  }
  EXPECT_EQ(names.size(), 9u);
  EXPECT_EQ(ParseScenario(" Climate "), Scenario::kClimate);
  EXPECT_FALSE(ParseScenario("gardening").has_value());
}

TEST(CommandTest, RejectsBlankText) {
  Command c{"c-1", "   \t", Scenario::kLighting, Provenance::kUser};
  EXPECT_THAT(ValidateCommand(c), StatusIs(absl::StatusCode::kInvalidArgument));
  c.text = "lights on";
  HEARTH_EXPECT_OK(ValidateCommand(c));
  c.id.clear();
  EXPECT_THAT(ValidateCommand(c), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(SlugTest, OnlyLowercaseDigitsAndHyphens) {
  EXPECT_TRUE(IsValidSlug("smart-lamp"));
  EXPECT_TRUE(IsValidSlug("tv2"));
  EXPECT_FALSE(IsValidSlug(""));
  EXPECT_FALSE(IsValidSlug("Smart-Lamp"));
  EXPECT_FALSE(IsValidSlug("smart_lamp"));
  EXPECT_FALSE(IsValidSlug("smart lamp"));
}

TEST(CatalogTest, DefaultHasThirtyNineUniqueSlugs) {
  const DeviceCatalog& c = DefaultCatalog();
  EXPECT_EQ(c.size(), 39u);
  std::set<std::string> ids;
  for (const Device& d : c.devices()) {
    EXPECT_TRUE(IsValidSlug(d.id)) << d.id;
    EXPECT_FALSE(d.capabilities.empty()) << d.id;
    ids.insert(d.id);
  }
  EXPECT_EQ(ids.size(), 39u);
}

TEST(CatalogTest, FixtureFileMatchesBuiltinCatalog) {
  HEARTH_ASSERT_OK_AND_ASSIGN(DeviceCatalog c,
                              LoadCatalogFile(DataPath("catalog.json")));
  EXPECT_EQ(c.devices(), DefaultCatalog().devices());
}

TEST(CatalogTest, FixtureHashIsStable) {
  HEARTH_ASSERT_OK_AND_ASSIGN(DeviceCatalog c,
                              LoadCatalogFile(DataPath("catalog.json")));
  const std::string first = Sha256Hex(Serialize(c));
  for (int i = 0; i < 3; ++i) {
    HEARTH_ASSERT_OK_AND_ASSIGN(DeviceCatalog again,
                                LoadCatalogFile(DataPath("catalog.json")));
    EXPECT_EQ(Sha256Hex(Serialize(again)), first);
  }
  EXPECT_EQ(first, kCatalogGoldenSha256);
}

TEST(CatalogTest, DuplicateIdsRejected) {
  std::vector<Device> devices = {{"tv", "TV", {"power"}},
                                 {"tv", "Television", {"power"}}};
  EXPECT_THAT(DeviceCatalog::Create(devices),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DeviceCatalog::Create({{"Bad Id", "x", {}}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CanonicalizeTest, DuplicateSpellingsCollapse) {
  CanonicalDevices out =
      CanonicalizeDeviceSet({"Smart Lamp", "smart-lamp"}, DefaultCatalog());
  EXPECT_EQ(out.ids, DeviceSet({"smart-lamp"}));
  EXPECT_THAT(out.unmatched, IsEmpty());
}

TEST(CanonicalizeTest, UnknownNamesAreReported) {
  CanonicalDevices out = CanonicalizeDeviceSet({"Teleporter"}, DefaultCatalog());
  EXPECT_THAT(out.ids, IsEmpty());
  EXPECT_THAT(out.unmatched, ElementsAre("Teleporter"));
}

// Case folding table built from the catalog itself: every display name and
// slug, upper- and lower-cased, resolves to its own id.
TEST(CanonicalizeTest, CaseFoldTableOverCatalog) {
  EXPECT_EQ(CanonicalizeDeviceSet({"THERMOSTAT"}, DefaultCatalog()).ids,
            DeviceSet({"thermostat"}));
  for (const Device& d : DefaultCatalog().devices()) {
    std::string upper = d.display_name;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    for (const std::string& name :
         {d.id, d.display_name, upper, ToLower(d.display_name)}) {
      CanonicalDevices out = CanonicalizeDeviceSet({name}, DefaultCatalog());
      EXPECT_EQ(out.ids, DeviceSet({d.id})) << name;
    }
  }
}

TEST(CanonicalizeTest, IdempotentOnItsOwnOutput) {
  SeededRng rng(7);
  const std::vector<DeviceId> universe = CatalogIds();
  for (int i = 0; i < 200; ++i) {
    DeviceSet s = RandomSubset(rng, universe, 0.3);
    std::vector<std::string> names(s.begin(), s.end());
    names.push_back("Flux Capacitor");
    CanonicalDevices once = CanonicalizeDeviceSet(names, DefaultCatalog());
    CanonicalDevices twice = CanonicalizeDeviceSet(
        std::vector<std::string>(once.ids.begin(), once.ids.end()),
        DefaultCatalog());
    EXPECT_EQ(once.ids, s);
    EXPECT_EQ(twice.ids, once.ids);
    EXPECT_THAT(twice.unmatched, IsEmpty());
  }
}

TEST(SplitDeviceListTest, StripsBulletsQuotesAndNumbers) {
  EXPECT_THAT(SplitDeviceList("- Smart Lamp\n2) \"TV\"\n3. soundbar.; blinds"),
              ElementsAre("Smart Lamp", "TV", "soundbar", "blinds"));
}

TEST(HomeTest, ValidationNamesTheField) {
  HomeConfig h;
  h.home_id = "h";
  h.available = {"tv", "warp-drive"};
  absl::Status s = ValidateHome(h, DefaultCatalog());
  EXPECT_THAT(s, StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(std::string(s.message()), HasSubstr("warp-drive"));
  h.available = {"tv"};
  h.state["smart-lamp"]["power"] = "on";
  EXPECT_THAT(std::string(ValidateHome(h, DefaultCatalog()).message()),
              HasSubstr("HomeConfig.state"));
  h.state.clear();
  HEARTH_EXPECT_OK(ValidateHome(h, DefaultCatalog()));
}

TEST(HomeTest, UserSuggestedDeviceIsLocalToHome) {
  HomeConfig h;
  h.home_id = "h";
  HEARTH_ASSERT_OK_AND_ASSIGN(
      DeviceId id, AddUserSuggestedDevice(h, DefaultCatalog(), "Pool Heater"));
  EXPECT_EQ(id, "pool-heater");
  EXPECT_TRUE(h.available.contains("pool-heater"));
  EXPECT_FALSE(DefaultCatalog().contains("pool-heater"));
  EXPECT_EQ(h.notes.size(), 1u);
  HEARTH_EXPECT_OK(ValidateHome(h, DefaultCatalog()));
  // Known devices join the home without a note.
  HEARTH_ASSERT_OK_AND_ASSIGN(id, AddUserSuggestedDevice(h, DefaultCatalog(), "TV"));
  EXPECT_EQ(id, "tv");
  EXPECT_EQ(h.notes.size(), 1u);
}

TEST(PlanTest, DevicesIsUnionOfSteps) {
  ActionPlan p{{{"tv", "power", "on"}, {"soundbar", "volume", "20"},
                {"tv", "input", "hdmi1"}},
               "movie"};
  EXPECT_EQ(p.devices(), DeviceSet({"soundbar", "tv"}));
  EXPECT_EQ(p.Render(),
            "tv | power | on\nsoundbar | volume | 20\ntv | input | hdmi1\n"
            "Rationale: movie\n");
}

TEST(SerializeTest, EmptyHomeHasFixedBytes) {
  EXPECT_EQ(Serialize(HomeConfig{}),
            R"({"available":[],"custom_devices":[],"home_id":"","notes":[],"state":{}})");
}

TEST(SerializeTest, CommandRoundTrip) {
  Command c{"seed-001", "Turn on the lamp", Scenario::kLighting,
            Provenance::kSeed};
  HEARTH_ASSERT_OK_AND_ASSIGN(Command back, Deserialize<Command>(Serialize(c)));
  EXPECT_EQ(back, c);
}

TEST(SerializeTest, MalformedInputNamesFieldAndPosition) {
  absl::StatusOr<Command> bad = Deserialize<Command>(R"({"id": "x", "text": 3})");
  EXPECT_THAT(bad, StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(std::string(bad.status().message()), HasSubstr("text"));
  absl::StatusOr<Json> syntax = ParseJson("{\"id\": ");
  EXPECT_THAT(syntax, StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(std::string(syntax.status().message()), HasSubstr("column 8"));
}

// Random valid instances of every type survive a round trip.
TEST(SerializeTest, RandomRoundTripProperty) {
  SeededRng rng(11);
  const std::vector<DeviceId> universe = CatalogIds();
  auto word = [&](int len) {
    std::string s;
    for (int i = 0; i < len; ++i) {
      s.push_back(static_cast<char>('a' + rng.Below(26)));
    }
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    Command c{word(5), word(3) + " \"" + word(4) + "\" \xc3\xa9",
              kAllScenarios[rng.Below(9)],
              static_cast<Provenance>(rng.Below(4))};
    HEARTH_ASSERT_OK_AND_ASSIGN(Command c2, Deserialize<Command>(Serialize(c)));
    EXPECT_EQ(c2, c);

    HomeConfig h;
    h.home_id = word(6);
    h.available = RandomSubset(rng, universe, 0.4);
    for (const DeviceId& id : h.available) {
      if (rng.Below(3) == 0) h.state[id][word(4)] = word(2);
    }
    HEARTH_ASSERT_OK_AND_ASSIGN(HomeConfig h2,
                                Deserialize<HomeConfig>(Serialize(h)));
    EXPECT_EQ(h2, h);
    EXPECT_EQ(Serialize(h2), Serialize(h));

    ActionPlan p;
    for (int s = 0, n = static_cast<int>(rng.Below(5)); s < n; ++s) {
      p.steps.push_back({universe[rng.Below(universe.size())], word(4), word(3)});
    }
    p.rationale = word(10);
    HEARTH_ASSERT_OK_AND_ASSIGN(ActionPlan p2,
                                Deserialize<ActionPlan>(Serialize(p)));
    EXPECT_EQ(p2, p);

    Device d{universe[rng.Below(universe.size())], word(7), {word(3), word(4)}};
    HEARTH_ASSERT_OK_AND_ASSIGN(Device d2, Deserialize<Device>(Serialize(d)));
    EXPECT_EQ(d2, d);
  }
}

TEST(SerializeTest, CatalogRoundTrip) {
  HEARTH_ASSERT_OK_AND_ASSIGN(
      DeviceCatalog c, Deserialize<DeviceCatalog>(Serialize(DefaultCatalog())));
  EXPECT_EQ(c.devices(), DefaultCatalog().devices());
}

TEST(TextTest, TokenizeLowercasesAndSplitsPunctuation) {
  EXPECT_THAT(Tokenize("Turn ON the Light, please!"),
              ElementsAre("turn", "on", "the", "light", "please"));
  EXPECT_THAT(Tokenize("  "), IsEmpty());
  EXPECT_THAT(Keywords("Turn on the light in the den"),
              ElementsAre("turn", "light", "den"));
}

TEST(ScenarioClassifierTest, KeywordVotes) {
  EXPECT_EQ(ClassifyScenario("dim the lamp"), Scenario::kLighting);
  EXPECT_EQ(ClassifyScenario("brew coffee in the kitchen"), Scenario::kKitchen);
  EXPECT_EQ(ClassifyScenario("lock the door"), Scenario::kSecurity);
  EXPECT_FALSE(ClassifyScenario("hello there").has_value());
}

TEST(RngTest, BelowStaysInRangeAndCoversIt) {
  SeededRng rng(3);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 5000; ++i) ++counts[rng.Below(5)];
  for (int c : counts) EXPECT_NEAR(c, 1000, 150);
  SeededRng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.Next(), b.Next());
}

TEST(HashTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ErrorsTest, KindTravelsWithStatus) {
  absl::Status s = RecoveryFailureError("no section");
  EXPECT_EQ(KindOf(s), ErrorKind::kRecoveryFailure);
  EXPECT_EQ(KindOf(absl::InternalError("x")), ErrorKind::kNone);
  EXPECT_EQ(KindOf(NeedsClarificationError("which?")),
            ErrorKind::kNeedsClarification);
}

TEST(StringsTest, Helpers) {
  EXPECT_EQ(StrCat("a", 1, '-', 2.5), "a1-2.5");
  EXPECT_EQ(StrJoin(std::vector<std::string>{"x", "y"}, ", "), "x, y");
  EXPECT_THAT(SplitAny("a,,b", ","), ElementsAre("a", "", "b"));
  EXPECT_THAT(SplitAny("a,,b", ",", true), ElementsAre("a", "b"));
  EXPECT_THAT(SplitN("a|b|c|d", '|', 3), ElementsAre("a", "b", "c|d"));
  EXPECT_EQ(ReplaceAll("{{x}} {{y}}", {{"{{x}}", "1"}, {"{{y}}", "2"}}), "1 2");
}

}  // namespace
}  // namespace hearth
