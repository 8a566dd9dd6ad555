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

#include "glh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glh/csv.hpp"
#include "glh/error.hpp"

namespace glh {

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<double> Histogram::shares() const {
  std::vector<double> out(counts.size(), 0.0);
  const auto n = total();
  if (n == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return out;
}

std::size_t Histogram::bin_of(double value) const noexcept {
  if (bin_edges.size() < 2 || std::isnan(value) || value < bin_edges.front()) return counts.size();
  const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), value);
  const auto idx = static_cast<std::size_t>(it - bin_edges.begin());
  if (idx == 0 || idx > counts.size()) return counts.size();
  return idx - 1;
}

Histogram make_histogram(std::vector<double> edges, std::span<const double> values) {
  Histogram h;
  h.bin_edges = std::move(edges);
  h.counts.assign(h.bin_edges.size() > 0 ? h.bin_edges.size() - 1 : 0, 0);
  for (double v : values) {
    const auto b = h.bin_of(v);
    if (b < h.counts.size()) ++h.counts[b];
  }
  return h;
}

Histogram trip_distance_histogram(std::span<const Trip> trips) {
  std::vector<double> km;
  km.reserve(trips.size());
  for (const auto& t : trips) km.push_back(t.distance_m / 1000.0);
  return make_histogram(kTripDistanceEdgesKm, km);
}

double lower_median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t k = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

DurationStats trip_duration_stats(std::span<const Trip> trips) {
  std::vector<double> minutes;
  minutes.reserve(trips.size());
  for (const auto& t : trips) minutes.push_back(t.duration_s / 60.0);
  DurationStats s;
  s.count = minutes.size();
  s.histogram = make_histogram(kTripDurationEdgesMin, minutes);
  if (!minutes.empty()) {
    s.mean_min = std::accumulate(minutes.begin(), minutes.end(), 0.0) /
                 static_cast<double>(minutes.size());
  }
  s.median_min = lower_median(std::move(minutes));
  return s;
}

std::string_view to_string(AggregateMode m) noexcept {
  switch (m) {
    case AggregateMode::Automobile: return "Automobile";
    case AggregateMode::Transit: return "Transit";
    case AggregateMode::Walk: return "Walk";
    case AggregateMode::Cycle: return "Cycle";
  }
  return "";
}

AggregateMode aggregate_of(Mode m) noexcept {
  switch (m) {
    case Mode::Automobile:
    case Mode::TaxiRidehail:
    case Mode::Motorcycle: return AggregateMode::Automobile;
    case Mode::LocalTransit:
    case Mode::RegionalTransit: return AggregateMode::Transit;
    case Mode::Cycle: return AggregateMode::Cycle;
    case Mode::Walk: return AggregateMode::Walk;
  }
  return AggregateMode::Automobile;
}

ModeShare mode_share(std::span<const Trip> trips) {
  ModeShare ms;
  std::array<std::size_t, 4> counts{};
  for (const auto& t : trips) {
    if (!t.main_mode) {
      ++ms.unlabeled;
      continue;
    }
    ++counts[static_cast<std::size_t>(aggregate_of(*t.main_mode))];
    ++ms.total;
  }
  if (ms.total == 0) return ms;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    ms.share[i] = static_cast<double>(counts[i]) / static_cast<double>(ms.total);
  }
  return ms;
}

double trip_rate_per_person_day(std::size_t trip_count, std::size_t person_days) {
  if (person_days == 0) throw Error(ErrorCode::ZeroPersonDays, "no person-days in the denominator");
  return static_cast<double>(trip_count) / static_cast<double>(person_days);
}

double trip_rate(std::size_t trip_count, std::size_t respondents, std::size_t days_per_respondent) {
  if (respondents == 0 || days_per_respondent == 0) {
    throw Error(ErrorCode::ZeroPersonDays, "no person-days in the denominator",
                {{"respondents", respondents}, {"days", days_per_respondent}});
  }
  return trip_rate_per_person_day(trip_count, respondents * days_per_respondent);
}

namespace {

std::optional<std::size_t> out_of_home_slot(PurposeClass p) noexcept {
  for (std::size_t i = 0; i < kOutOfHomeClasses.size(); ++i) {
    if (kOutOfHomeClasses[i] == p) return i;
  }
  return std::nullopt;
}

}  // namespace

ActivityComposition activity_composition(std::span<const DiaryEvent> events) {
  ActivityComposition c;
  for (const auto& ev : events) {
    if (!ev.is_activity()) continue;
    const auto& purpose = ev.activity().purpose;
    if (!purpose) {
      ++c.without_purpose;
      continue;
    }
    const auto slot = out_of_home_slot(purpose->value);
    if (!slot) {
      ++c.home_excluded;
      continue;
    }
    ++c.counts[*slot];
    ++c.total;
  }
  if (c.total > 0) {
    for (std::size_t i = 0; i < c.counts.size(); ++i) {
      c.share[i] = static_cast<double>(c.counts[i]) / static_cast<double>(c.total);
    }
  }
  return c;
}

std::array<Histogram, 4> activity_duration_histograms(std::span<const DiaryEvent> events) {
  std::array<std::vector<double>, 4> minutes;
  for (const auto& ev : events) {
    if (!ev.is_activity() || !ev.activity().purpose) continue;
    if (const auto slot = out_of_home_slot(ev.activity().purpose->value)) {
      minutes[*slot].push_back(ev.duration_s() / 60.0);
    }
  }
  std::array<Histogram, 4> out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = make_histogram(kActivityDurationEdgesMin, minutes[i]);
  }
  return out;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& marginal_attributes() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> attrs = {
      {"gender", {"Male", "Female", "Other"}},
      {"age_band", {"20-29", "30-39", "40-49", "50-64", "65+"}},
      {"household_size", {"1", "2", "3", "4", "5+"}},
      {"employment", {"FullTime", "PartTime", "NotEmployed"}},
      {"workplace_arrangement", {"UsualPlace", "HomeOrHybrid", "NoFixedPlace"}},
      {"income_band",
       {"Below40k", "40kTo80k", "80kTo125k", "125kTo200k", "200kAndAbove", "DeclineUnknown"}},
  };
  return attrs;
}

std::optional<std::string> marginal_category(const Respondent& r, std::string_view attribute) {
  if (attribute == "gender") return std::string(to_string(r.gender));
  if (attribute == "age_band") {
    // Reference cohorts start at 20; younger respondents are not compared.
    if (r.age < 20) return std::nullopt;
    if (r.age < 30) return "20-29";
    if (r.age < 40) return "30-39";
    if (r.age < 50) return "40-49";
    if (r.age < 65) return "50-64";
    return "65+";
  }
  if (attribute == "household_size") {
    return r.household_size >= 5 ? std::string("5+") : std::to_string(r.household_size);
  }
  if (attribute == "employment") return std::string(to_string(r.employment));
  if (attribute == "workplace_arrangement") {
    if (r.workplace == Workplace::NotApplicable) return std::nullopt;
    return std::string(to_string(r.workplace));
  }
  if (attribute == "income_band") return std::string(to_string(r.income_band));
  return std::nullopt;
}

void check_reference(std::span<const ReferenceShare> reference) {
  const auto& attrs = marginal_attributes();
  for (const auto& ref : reference) {
    const auto it = std::find_if(attrs.begin(), attrs.end(),
                                 [&](const auto& a) { return a.first == ref.attribute; });
    if (it == attrs.end() ||
        std::find(it->second.begin(), it->second.end(), ref.category) == it->second.end()) {
      throw Error(ErrorCode::UnknownCategory,
                  "unknown reference category " + ref.attribute + "/" + ref.category,
                  {{"attribute", ref.attribute}, {"category", ref.category}});
    }
  }
}

std::vector<ReferenceShare> read_reference_marginals(const std::filesystem::path& csv_path) {
  const csv::Table t = csv::read_file(csv_path);
  std::vector<ReferenceShare> out;
  for (const auto& row : t.rows) {
    ReferenceShare r;
    r.attribute = row["attribute"];
    r.category = row["category"];
    try {
      std::size_t used = 0;
      const std::string& cell = row["share_pct"];
      r.share = std::stod(cell, &used) / 100.0;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument,
                  "bad share_pct at line " + std::to_string(row.line()),
                  {{"file", csv_path.string()}, {"line", row.line()}});
    }
    out.push_back(std::move(r));
  }
  check_reference(out);
  return out;
}

std::vector<MarginalTable> marginals_comparison(std::span<const Respondent> respondents,
                                                std::span<const ReferenceShare> reference) {
  check_reference(reference);
  std::vector<MarginalTable> tables;
  for (const auto& [attribute, categories] : marginal_attributes()) {
    MarginalTable t;
    t.attribute = attribute;
    t.categories = categories;
    std::vector<std::size_t> counts(categories.size(), 0);
    for (const auto& r : respondents) {
      const auto cat = marginal_category(r, attribute);
      if (!cat) continue;
      const auto it = std::find(categories.begin(), categories.end(), *cat);
      ++counts[static_cast<std::size_t>(it - categories.begin())];
      ++t.answered;
    }
    for (std::size_t i = 0; i < categories.size(); ++i) {
      const double sample =
          t.answered ? static_cast<double>(counts[i]) / static_cast<double>(t.answered) : 0.0;
      t.sample_share.push_back(sample);
      std::optional<double> ref;
      for (const auto& r : reference) {
        if (r.attribute == attribute && r.category == categories[i]) ref = r.share;
      }
      t.reference_share.push_back(ref);
      t.diff_pp.push_back(ref ? std::optional<double>((sample - *ref) * 100.0) : std::nullopt);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

}  // namespace glh
