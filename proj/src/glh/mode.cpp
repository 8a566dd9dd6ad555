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

#include "glh/mode.hpp"

#include <algorithm>
#include <cctype>

#include "glh/csv.hpp"
#include "glh/error.hpp"

namespace glh {

namespace {

struct ModeNames {
  std::string_view id;
  std::string_view display;
};

constexpr std::array<ModeNames, kModeCount> kNames = {{
    {"Automobile", "Automobile"},
    {"LocalTransit", "Local Transit"},
    {"RegionalTransit", "Regional Transit"},
    {"TaxiRidehail", "Taxi/Ridehail"},
    {"Motorcycle", "Motorcycle"},
    {"Cycle", "Cycle"},
    {"Walk", "Walk"},
}};

struct LabelEntry {
  std::string_view label;
  Mode mode;
};

// Google movement labels (lower-cased). Canonical identifiers and display
// names are added on top so that mapping a taxonomy label is a no-op.
constexpr LabelEntry kDefaultLabels[] = {
    {"driving", Mode::Automobile},
    {"in a car", Mode::Automobile},
    {"on a bus", Mode::LocalTransit},
    {"on a tram", Mode::LocalTransit},
    {"on a subway", Mode::LocalTransit},
    {"on the subway", Mode::LocalTransit},
    {"on a ferry", Mode::LocalTransit},
    {"on a train", Mode::RegionalTransit},
    {"in a taxi", Mode::TaxiRidehail},
    {"in a rideshare", Mode::TaxiRidehail},
    {"in a taxi or rideshare", Mode::TaxiRidehail},
    {"motorcycling", Mode::Motorcycle},
    {"on a motorcycle", Mode::Motorcycle},
    {"cycling", Mode::Cycle},
    {"on a bicycle", Mode::Cycle},
    {"walking", Mode::Walk},
    {"on foot", Mode::Walk},
    {"running", Mode::Walk},
};

struct ResponseEntry {
  std::string_view text;
  Mode mode;
};

constexpr ResponseEntry kModeResponses[] = {
    {"Driving alone", Mode::Automobile},
    {"Driving with household members only", Mode::Automobile},
    {"Driving with non-household members only", Mode::Automobile},
    {"Driving with household and non-household members", Mode::Automobile},
    {"Local transit (bus, streetcar, subway)", Mode::LocalTransit},
    {"Regional transit (GO train, GO bus)", Mode::RegionalTransit},
    {"Taxi or ride-hailing", Mode::TaxiRidehail},
    {"Motorcycle", Mode::Motorcycle},
    {"Cycle", Mode::Cycle},
    {"Walk", Mode::Walk},
};

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view to_string(Mode m) noexcept { return kNames[index_of(m)].id; }

std::string_view display_name(Mode m) noexcept { return kNames[index_of(m)].display; }

std::optional<Mode> mode_from_string(std::string_view s) noexcept {
  for (Mode m : kAllModes) {
    if (kNames[index_of(m)].id == s) return m;
  }
  return std::nullopt;
}

ModeMapper::ModeMapper() {
  for (const auto& e : kDefaultLabels) table_.emplace(std::string(e.label), e.mode);
  for (Mode m : kAllModes) {
    table_.emplace(to_lower_ascii(kNames[index_of(m)].id), m);
    table_.emplace(to_lower_ascii(kNames[index_of(m)].display), m);
  }
}

void ModeMapper::set(std::string_view label, Mode m) {
  table_.insert_or_assign(to_lower_ascii(trim(label)), m);
}

void ModeMapper::load_overrides(const std::filesystem::path& csv_path) {
  const csv::Table t = csv::read_file(csv_path);
  for (const auto& row : t.rows) {
    const auto mode = mode_from_string(row["mode"]);
    if (row["label"].empty() || !mode) {
      throw Error(ErrorCode::InvalidArgument,
                  "bad mode mapping row at line " + std::to_string(row.line()),
                  {{"file", csv_path.string()}, {"line", row.line()}});
    }
    set(row["label"], *mode);
  }
}

std::optional<Mode> ModeMapper::map(std::string_view raw_label) const {
  const auto it = table_.find(to_lower_ascii(trim(raw_label)));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::optional<Mode> map_inferred_mode(std::string_view raw_label) {
  static const ModeMapper mapper;
  return mapper.map(raw_label);
}

const std::vector<std::string>& mode_response_options() {
  static const std::vector<std::string> options = [] {
    std::vector<std::string> v;
    for (const auto& r : kModeResponses) v.emplace_back(r.text);
    return v;
  }();
  return options;
}

std::optional<Mode> collapse_mode_response(std::string_view response) {
  const std::string lower = to_lower_ascii(trim(response));
  if (lower.empty()) return std::nullopt;
  // Every occupancy variant of driving is an automobile leg.
  if (lower.starts_with("driving")) return Mode::Automobile;
  for (const auto& r : kModeResponses) {
    if (to_lower_ascii(r.text) == lower) return r.mode;
  }
  for (Mode m : kAllModes) {
    if (to_lower_ascii(kNames[index_of(m)].id) == lower ||
        to_lower_ascii(kNames[index_of(m)].display) == lower) {
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace glh
