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

#ifndef GLH_METRICS_HPP
#define GLH_METRICS_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glh/diary.hpp"
#include "glh/trips.hpp"

namespace glh {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Left-closed, right-open bins; the last edge may be +inf.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
  /// counts[i] / total, or all zeros when empty.
  std::vector<double> shares() const;
  std::size_t bin_of(double value) const noexcept;  // counts.size() when outside

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

Histogram make_histogram(std::vector<double> edges, std::span<const double> values);

inline const std::vector<double> kTripDistanceEdgesKm = {0, 0.5, 1, 2, 4, 8, 16, kInf};
inline const std::vector<double> kTripDurationEdgesMin = {0, 10, 30, 60, 120, kInf};
inline const std::vector<double> kActivityDurationEdgesMin = {0, 5, 10, 30, 60, 120, 240, kInf};

/// Trip distances in km.
Histogram trip_distance_histogram(std::span<const Trip> trips);

struct DurationStats {
  Histogram histogram;  // minutes
  double mean_min = 0.0;
  double median_min = 0.0;  // lower median
  std::size_t count = 0;
};

DurationStats trip_duration_stats(std::span<const Trip> trips);

/// Lower median for even counts; 0 for an empty sample.
double lower_median(std::vector<double> values);

enum class AggregateMode { Automobile, Transit, Walk, Cycle };
inline constexpr std::array<AggregateMode, 4> kAggregateModes = {
    AggregateMode::Automobile, AggregateMode::Transit, AggregateMode::Walk, AggregateMode::Cycle};
std::string_view to_string(AggregateMode m) noexcept;
AggregateMode aggregate_of(Mode m) noexcept;

struct ModeShare {
  std::array<double, 4> share{};  // indexed by AggregateMode
  std::size_t total = 0;          // trips with a main mode
  std::size_t unlabeled = 0;      // trips without one, excluded
  bool undefined() const noexcept { return total == 0; }
};

ModeShare mode_share(std::span<const Trip> trips);

/// trip_count / (respondents * days). Throws Error(ZeroPersonDays).
double trip_rate(std::size_t trip_count, std::size_t respondents, std::size_t days_per_respondent);
double trip_rate_per_person_day(std::size_t trip_count, std::size_t person_days);

/// Out-of-home purpose classes.
inline constexpr std::array<PurposeClass, 4> kOutOfHomeClasses = {
    PurposeClass::ShoppingErrands, PurposeClass::Work, PurposeClass::School, PurposeClass::Other};

struct ActivityComposition {
  std::array<double, 4> share{};  // indexed like kOutOfHomeClasses
  std::array<std::size_t, 4> counts{};
  std::size_t total = 0;            // out-of-home activities with a purpose
  std::size_t home_excluded = 0;    // Home + WorkFromHome
  std::size_t without_purpose = 0;  // not yet validated, excluded
  bool empty_denominator() const noexcept { return total == 0; }
};

ActivityComposition activity_composition(std::span<const DiaryEvent> events);

/// One minutes histogram per out-of-home class, keyed like kOutOfHomeClasses.
std::array<Histogram, 4> activity_duration_histograms(std::span<const DiaryEvent> events);

// ---------------------------------------------------------------------------
// Sample-vs-reference marginals.

struct ReferenceShare {
  std::string attribute;
  std::string category;
  double share = 0.0;  // fraction
};

struct MarginalTable {
  std::string attribute;
  std::vector<std::string> categories;
  std::vector<double> sample_share;
  std::vector<std::optional<double>> reference_share;
  std::vector<std::optional<double>> diff_pp;
  std::size_t answered = 0;
};

/// Attribute names and their categories, in report order.
const std::vector<std::pair<std::string, std::vector<std::string>>>& marginal_attributes();

/// Category of a respondent for an attribute, nullopt when unanswered.
std::optional<std::string> marginal_category(const Respondent& r, std::string_view attribute);

/// Reads attribute,category,share_pct rows. Throws Error(UnknownCategory)
/// for attributes or categories outside marginal_attributes().
std::vector<ReferenceShare> read_reference_marginals(const std::filesystem::path& csv_path);
void check_reference(std::span<const ReferenceShare> reference);

std::vector<MarginalTable> marginals_comparison(std::span<const Respondent> respondents,
                                                std::span<const ReferenceShare> reference);

}  // namespace glh

#endif  // GLH_METRICS_HPP
