// Copyright 2026 The glhdiary Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "glh/diary.hpp"
#include "glh/trips.hpp"
#include "test_support.hpp"

using namespace glh;
using namespace glh::test;

namespace {

constexpr std::size_t kCases = 250;

void require_check(const CheckResult& r) {
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.cases >= 200);
}

}  // namespace

TEST_CASE("property: histogram counts are conserved") { require_check(prop_histogram_conservation(kCases, 1)); }
TEST_CASE("property: mode shares sum to one") { require_check(prop_mode_share_normalised(kCases, 2)); }
TEST_CASE("property: haversine symmetry and identity") { require_check(prop_haversine_symmetry_identity(kCases, 3)); }
TEST_CASE("property: persistence round trip") { require_check(prop_persistence_round_trip(kCases, 4)); }
TEST_CASE("property: confusion matrix ignores leg order") { require_check(prop_confusion_order_invariance(kCases, 5)); }

TEST_CASE("property: validation touches only the targeted events") {
  std::mt19937_64 rng(6);
  std::size_t cases = 0;
  for (int c = 0; c < 300; ++c) {
    const TravelDiary d = random_diary(rng, "v");
    if (d.events.empty()) continue;
    std::vector<ValidationResponse> responses;
    std::vector<bool> targeted(d.events.size(), false);
    for (std::size_t i = 0; i < d.events.size(); ++i) {
      if (std::bernoulli_distribution(0.4)(rng)) {
        targeted[i] = true;
        if (d.events[i].is_activity()) {
          responses.push_back({i, ValidationResponse::Purpose{"Shopping & errands"}});
        } else {
          responses.push_back({i, ValidationResponse::ModeResponse{"Cycle"}});
        }
      }
    }
    const TravelDiary v = apply_validation(d, responses);
    REQUIRE(v.events.size() == d.events.size());
    for (std::size_t i = 0; i < d.events.size(); ++i) {
      if (!targeted[i]) {
        CHECK(v.events[i] == d.events[i]);
        continue;
      }
      CHECK(v.events[i].window == d.events[i].window);
      if (v.events[i].is_activity()) {
        CHECK(v.events[i].activity().purpose->value == PurposeClass::ShoppingErrands);
        CHECK(v.events[i].activity().name == d.events[i].activity().name);
      } else {
        CHECK(v.events[i].leg().validated_mode == Mode::Cycle);
        CHECK(v.events[i].leg().inferred_mode == d.events[i].leg().inferred_mode);
        CHECK(v.events[i].leg().path == d.events[i].leg().path);
      }
    }
    ++cases;
  }
  CHECK(cases >= 200);
}

TEST_CASE("property: census is additive and groups partition the legs") {
  std::mt19937_64 rng(8);
  for (int c = 0; c < 250; ++c) {
    const TravelDiary a = random_diary(rng, "a"), b = random_diary(rng, "b");
    const std::vector<TravelDiary> both = {a, b};
    const std::vector<TravelDiary> only_a = {a}, only_b = {b};
    EventCensus sum = event_census(only_a);
    sum += event_census(only_b);
    CHECK(event_census(both) == sum);

    const auto groups = group_legs(a.events);
    std::vector<int> seen(a.events.size(), 0);
    std::size_t prev_end = 0;
    for (const auto& g : groups) {
      REQUIRE_FALSE(g.empty());
      CHECK(g.front() >= prev_end);
      for (std::size_t k = 0; k < g.size(); ++k) {
        ++seen[g[k]];
        CHECK(a.events[g[k]].is_leg());
        if (k) CHECK(g[k] == g[k - 1] + 1);
      }
      // A boundary sits exactly at an activity (or the sequence edge).
      if (g.back() + 1 < a.events.size()) CHECK(a.events[g.back() + 1].is_activity());
      if (g.front() > 0) CHECK(a.events[g.front() - 1].is_activity());
      prev_end = g.back() + 1;
    }
    for (std::size_t i = 0; i < a.events.size(); ++i) CHECK(seen[i] == (a.events[i].is_leg() ? 1 : 0));
  }
}
