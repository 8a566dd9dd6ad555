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

#ifndef GLH_STORE_HPP
#define GLH_STORE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "glh/diary.hpp"
#include "glh/serialize.hpp"

namespace glh {

enum class Phase { Setup, Uploading, Validated };
std::string_view to_string(Phase p) noexcept;
std::optional<Phase> phase_from_string(std::string_view s) noexcept;

struct StoreRecord {
  std::string schema_version{kDiarySchema};
  Respondent respondent;
  Phase phase = Phase::Setup;
  /// Self-declared "location history is enabled" flag from the setup phase.
  bool setup_declared = false;
  TravelDiary diary;
  std::map<Date, std::string> raw_files;  // verbatim KML bytes per day

  friend bool operator==(const StoreRecord&, const StoreRecord&) = default;
};

/// Setup until a day is uploaded, Validated once every event is labelled.
Phase derive_phase(const StoreRecord& r) noexcept;

/// On-disk layout under `root`:
///
///   store.json                              {"schema_version": "glh-diary/1"}
///   respondents/<id>/record.json            {"schema_version", "sha256", "payload"}
///   respondents/<id>/kml/<YYYY-MM-DD>.kml   raw uploads
///
/// Every file is written atomically. record.json carries the SHA-256 of its
/// payload and the payload lists the SHA-256 of each KML file.
void persist_record(const std::filesystem::path& root, const StoreRecord& record);
/// Throws CorruptRecord (detail["file"]) or SchemaVersionMismatch.
StoreRecord load_record(const std::filesystem::path& respondent_dir);

void persist(const std::filesystem::path& root, const std::vector<StoreRecord>& records);
std::vector<StoreRecord> load(const std::filesystem::path& root);

/// In-memory view of a store directory with write-through persistence.
///
/// Mutations of one respondent are serialised by a per-respondent mutex and
/// applied in arrival order; different respondents proceed concurrently.
class Store {
 public:
  /// Loads an existing store, or creates an empty one when `create` is set
  /// and the directory holds no store yet.
  Store(std::filesystem::path root, bool create);
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& root() const noexcept { return root_; }

  std::vector<std::string> respondent_ids() const;
  std::size_t size() const;
  bool contains(const std::string& id) const;
  /// Throws Error(NotFound).
  StoreRecord get(const std::string& id) const;
  /// All records sorted by respondent id.
  std::vector<StoreRecord> snapshot() const;

  /// Registers a respondent (allocating an id when empty) and persists the
  /// new record. Throws Conflict for an existing id. Returns the id.
  std::string add(StoreRecord record);

  /// Runs fn(StoreRecord&) on a copy under the respondent's lock, derives
  /// the phase, persists, then publishes. If fn throws nothing changes.
  template <typename F>
  auto update(const std::string& id, F&& fn) {
    auto slot = find_slot(id);
    std::lock_guard lock(slot->mutex);
    StoreRecord working = slot->record;
    if constexpr (std::is_void_v<std::invoke_result_t<F&, StoreRecord&>>) {
      fn(working);
      commit(*slot, std::move(working));
    } else {
      auto result = fn(working);
      commit(*slot, std::move(working));
      return result;
    }
  }

 private:
  struct Slot {
    std::mutex mutex;
    StoreRecord record;
  };

  std::shared_ptr<Slot> find_slot(const std::string& id) const;
  void commit(Slot& slot, StoreRecord working);

  std::filesystem::path root_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace glh

#endif  // GLH_STORE_HPP
