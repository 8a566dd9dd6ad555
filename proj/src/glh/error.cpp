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

#include "glh/error.hpp"

namespace glh {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::MissingTimeSpan: return "MissingTimeSpan";
    case ErrorCode::InvalidTimeSpan: return "InvalidTimeSpan";
    case ErrorCode::InvalidCoordinate: return "InvalidCoordinate";
    case ErrorCode::DuplicateDay: return "DuplicateDay";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::UnknownResponse: return "UnknownResponse";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::ZeroPersonDays: return "ZeroPersonDays";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::ZeroDuration: return "ZeroDuration";
    case ErrorCode::NonpositiveDensity: return "NonpositiveDensity";
    case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Separation: return "Separation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidLikelihoods: return "InvalidLikelihoods";
    case ErrorCode::EmptyZoneTable: return "EmptyZoneTable";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::CorruptRecord: return "CorruptRecord";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Conflict: return "Conflict";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace glh
