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

#include "glh/trips.hpp"

#include <algorithm>

#include "glh/error.hpp"

namespace glh {

std::string_view to_string(TripCategory c) noexcept {
  return c == TripCategory::SingleMode ? "SingleMode" : "Multimodal";
}

std::vector<std::vector<std::size_t>> group_legs(std::span<const DiaryEvent> events) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> run;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].is_leg()) {
      run.push_back(i);
    } else if (!run.empty()) {
      groups.push_back(std::move(run));
      run.clear();
    }
  }
  if (!run.empty()) groups.push_back(std::move(run));
  return groups;
}

std::optional<Mode> effective_mode(const LegDetails& leg) noexcept {
  return leg.validated_mode ? leg.validated_mode : leg.inferred_mode;
}

Trip classify_group(std::span<const DiaryEvent> events, std::span<const std::size_t> group) {
  if (group.empty()) throw Error(ErrorCode::EmptyGroup, "cannot classify an empty leg group");

  Trip trip;
  trip.leg_indices.assign(group.begin(), group.end());

  std::vector<Mode> distinct;
  std::optional<std::size_t> longest;  // position in group
  for (std::size_t pos = 0; pos < group.size(); ++pos) {
    const DiaryEvent& ev = events[group[pos]];
    const LegDetails& leg = ev.leg();
    trip.distance_m += leg.distance_m;
    trip.leg_duration_sum_s += ev.duration_s();
    const auto mode = effective_mode(leg);
    if (!mode) {
      trip.unlabeled_legs.push_back(group[pos]);
      continue;
    }
    if (!leg.validated_mode) trip.inferred_fallback_legs.push_back(group[pos]);
    if (std::find(distinct.begin(), distinct.end(), *mode) == distinct.end()) distinct.push_back(*mode);
    // Strict comparison keeps the earliest leg on distance ties.
    if (!longest || leg.distance_m > events[group[*longest]].leg().distance_m) longest = pos;
  }

  const auto non_walk = std::count_if(distinct.begin(), distinct.end(),
                                      [](Mode m) { return m != Mode::Walk; });
  if (distinct.size() <= 1) {
    trip.category = TripCategory::SingleMode;
    if (!distinct.empty()) trip.main_mode = distinct.front();
  } else if (distinct.size() == 2 && non_walk == 1) {
    trip.category = TripCategory::SingleMode;
    trip.main_mode = *std::find_if(distinct.begin(), distinct.end(),
                                   [](Mode m) { return m != Mode::Walk; });
  } else {
    trip.category = TripCategory::Multimodal;
    trip.main_mode = effective_mode(events[group[*longest]].leg());
  }

  if (group.size() == 1 && trip.main_mode) {
    // A standalone leg is reached and left on foot.
    trip.access_mode = Mode::Walk;
    trip.egress_mode = Mode::Walk;
  } else {
    trip.access_mode = effective_mode(events[group.front()].leg());
    trip.egress_mode = effective_mode(events[group.back()].leg());
  }

  const DiaryEvent& first = events[group.front()];
  const DiaryEvent& last = events[group.back()];
  trip.depart = first.window.begin;
  trip.arrive = last.window.end;
  trip.duration_s = std::chrono::duration<double>(trip.arrive - trip.depart).count();
  trip.origin = first.leg().path.front();
  trip.destination = last.leg().path.back();
  return trip;
}

std::vector<Trip> aggregate(const TravelDiary& diary) {
  std::vector<Trip> trips;
  for (const auto& group : group_legs(diary.events)) {
    trips.push_back(classify_group(diary.events, group));
  }
  return trips;
}

}  // namespace glh
