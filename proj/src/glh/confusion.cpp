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

#include "glh/confusion.hpp"

#include <fmt/format.h>

#include "glh/error.hpp"

namespace glh {

ConfusionMatrix& ConfusionMatrix::merge(const ConfusionMatrix& other) noexcept {
  for (std::size_t r = 0; r < kModeCount; ++r) {
    for (std::size_t c = 0; c < kModeCount; ++c) counts_[r][c] += other.counts_[r][c];
  }
  excluded_ += other.excluded_;
  return *this;
}

std::uint64_t ConfusionMatrix::row_sum(Mode validated) const noexcept {
  std::uint64_t s = 0;
  for (auto v : counts_[index_of(validated)]) s += v;
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(Mode inferred) const noexcept {
  std::uint64_t s = 0;
  for (const auto& row : counts_) s += row[index_of(inferred)];
  return s;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < kModeCount; ++i) s += counts_[i][i];
  return s;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t s = 0;
  for (const auto& row : counts_) {
    for (auto v : row) s += v;
  }
  return s;
}

ConfusionMatrix build_confusion(std::span<const LegDetails> legs) {
  ConfusionMatrix m;
  for (const auto& leg : legs) {
    if (leg.validated_mode && leg.inferred_mode) {
      m.add(*leg.validated_mode, *leg.inferred_mode);
    } else {
      m.add_excluded();
    }
  }
  return m;
}

ConfusionMatrix build_confusion(std::span<const TravelDiary> diaries) {
  ConfusionMatrix m;
  for (const auto& d : diaries) {
    for (const auto& ev : d.events) {
      if (!ev.is_leg()) continue;
      const auto& leg = ev.leg();
      if (leg.validated_mode && leg.inferred_mode) {
        m.add(*leg.validated_mode, *leg.inferred_mode);
      } else {
        m.add_excluded();
      }
    }
  }
  return m;
}

std::optional<double> precision(const ConfusionMatrix& m, Mode mode) noexcept {
  const auto col = m.column_sum(mode);
  if (col == 0) return std::nullopt;
  return static_cast<double>(m.at(mode, mode)) / static_cast<double>(col);
}

std::optional<double> recall(const ConfusionMatrix& m, Mode mode) noexcept {
  const auto row = m.row_sum(mode);
  if (row == 0) return std::nullopt;
  return static_cast<double>(m.at(mode, mode)) / static_cast<double>(row);
}

double mismatch_rate(const ConfusionMatrix& m) {
  const auto total = m.total();
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix has no labelled legs");
  return 1.0 - static_cast<double>(m.trace()) / static_cast<double>(total);
}

namespace {
std::string pct(std::optional<double> v) {
  return v ? fmt::format("{:.1f}", *v * 100.0) : std::string();
}
}  // namespace

std::string confusion_csv(const ConfusionMatrix& m) {
  std::string out = "validated\\inferred";
  for (Mode c : kAllModes) out += fmt::format(",{}", display_name(c));
  out += ",Recall (%)\n";
  for (Mode r : kAllModes) {
    out += display_name(r);
    for (Mode c : kAllModes) out += fmt::format(",{}", m.at(r, c));
    out += "," + pct(recall(m, r)) + "\n";
  }
  out += "Precision (%)";
  for (Mode c : kAllModes) out += "," + pct(precision(m, c));
  out += ",\n";
  return out;
}

}  // namespace glh
