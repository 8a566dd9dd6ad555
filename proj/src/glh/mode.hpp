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

#ifndef GLH_MODE_HPP
#define GLH_MODE_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glh {

/// The seven-way analysis mode taxonomy. Order is the confusion-matrix order.
enum class Mode : unsigned char {
  Automobile,
  LocalTransit,
  RegionalTransit,
  TaxiRidehail,
  Motorcycle,
  Cycle,
  Walk,
};

inline constexpr std::size_t kModeCount = 7;
inline constexpr std::array<Mode, kModeCount> kAllModes = {
    Mode::Automobile, Mode::LocalTransit, Mode::RegionalTransit, Mode::TaxiRidehail,
    Mode::Motorcycle, Mode::Cycle,        Mode::Walk};

constexpr std::size_t index_of(Mode m) noexcept { return static_cast<std::size_t>(m); }

/// Stable identifier used in JSON/CSV ("Automobile", "LocalTransit", ...).
std::string_view to_string(Mode m) noexcept;
/// Human-readable column heading ("Local Transit", "Taxi/Ridehail", ...).
std::string_view display_name(Mode m) noexcept;
/// Accepts the identifier form only (exact match).
std::optional<Mode> mode_from_string(std::string_view s) noexcept;

/// Case-insensitive lookup from Google's movement labels into the taxonomy.
/// nullopt means Unmapped; there is no fallback mode.
class ModeMapper {
 public:
  /// The built-in table.
  ModeMapper();

  /// Adds or replaces entries from a two-column CSV (label,mode); the mode
  /// column uses identifier form. Throws Error(InvalidArgument) on bad rows.
  void load_overrides(const std::filesystem::path& csv_path);
  void set(std::string_view label, Mode m);

  std::optional<Mode> map(std::string_view raw_label) const;

 private:
  std::map<std::string, Mode, std::less<>> table_;
};

/// Uses a process-wide default ModeMapper.
std::optional<Mode> map_inferred_mode(std::string_view raw_label);

/// Respondent-facing travel mode options (validation dropdown).
const std::vector<std::string>& mode_response_options();

/// Collapses a detailed respondent mode answer ("Driving alone", ...) to the
/// taxonomy. nullopt when the answer is not recognised.
std::optional<Mode> collapse_mode_response(std::string_view response);

std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s) noexcept;

}  // namespace glh

#endif  // GLH_MODE_HPP
