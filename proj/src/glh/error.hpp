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

#ifndef GLH_ERROR_HPP
#define GLH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace glh {

enum class ErrorCode {
  InvalidArgument,
  // kml ingest
  MalformedXml,
  MissingTimeSpan,
  InvalidTimeSpan,
  InvalidCoordinate,
  // diary
  DuplicateDay,
  IndexOutOfRange,
  KindMismatch,
  UnknownResponse,
  // trips / metrics / confusion
  EmptyGroup,
  ZeroPersonDays,
  UnknownCategory,
  EmptyMatrix,
  // logit
  MissingLabel,
  ZeroDuration,
  NonpositiveDensity,
  DegenerateOutcome,
  RankDeficient,
  Separation,
  NoConvergence,
  InvalidLikelihoods,
  EmptyZoneTable,
  // store / service
  SchemaVersionMismatch,
  CorruptRecord,
  NotFound,
  Conflict,
  Io,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown throughout the core. `detail` carries structured
/// context (placemark index, file name, feature name, ...) that the service
/// and the C API forward verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

}  // namespace glh

#endif  // GLH_ERROR_HPP
