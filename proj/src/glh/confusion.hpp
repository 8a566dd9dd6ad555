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

#ifndef GLH_CONFUSION_HPP
#define GLH_CONFUSION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "glh/diary.hpp"
#include "glh/mode.hpp"

namespace glh {

/// Rows: respondent-validated mode. Columns: GLH-inferred mode.
class ConfusionMatrix {
 public:
  void add(Mode validated, Mode inferred, std::uint64_t n = 1) noexcept {
    counts_[index_of(validated)][index_of(inferred)] += n;
  }
  void add_excluded(std::uint64_t n = 1) noexcept { excluded_ += n; }
  ConfusionMatrix& merge(const ConfusionMatrix& other) noexcept;

  std::uint64_t at(Mode validated, Mode inferred) const noexcept {
    return counts_[index_of(validated)][index_of(inferred)];
  }
  std::uint64_t row_sum(Mode validated) const noexcept;
  std::uint64_t column_sum(Mode inferred) const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t total() const noexcept;
  /// Legs skipped because a label was missing or unmapped.
  std::uint64_t excluded() const noexcept { return excluded_; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::array<std::array<std::uint64_t, kModeCount>, kModeCount> counts_{};
  std::uint64_t excluded_ = 0;
};

/// Legs lacking either label are tallied in excluded().
ConfusionMatrix build_confusion(std::span<const LegDetails> legs);
ConfusionMatrix build_confusion(std::span<const TravelDiary> diaries);

/// Diagonal over column sum; nullopt (Undefined) when the column is empty.
std::optional<double> precision(const ConfusionMatrix& m, Mode mode) noexcept;
/// Diagonal over row sum; nullopt (Undefined) when the row is empty.
std::optional<double> recall(const ConfusionMatrix& m, Mode mode) noexcept;
/// 1 - trace/total. Throws Error(EmptyMatrix) when total is 0.
double mismatch_rate(const ConfusionMatrix& m);

/// Table-shaped CSV: a header of inferred modes plus "Recall (%)", one row
/// per validated mode, and a final "Precision (%)" row. Percentages use one
/// decimal; undefined ratios are left blank.
std::string confusion_csv(const ConfusionMatrix& m);

}  // namespace glh

#endif  // GLH_CONFUSION_HPP
