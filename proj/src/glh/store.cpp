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

#include "glh/store.hpp"

#include <array>

#include "glh/error.hpp"
#include "glh/io.hpp"

namespace glh {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 3> kPhaseNames = {"Setup", "Uploading", "Validated"};

fs::path respondent_dir(const fs::path& root, const std::string& id) {
  return root / "respondents" / id;
}

fs::path kml_relpath(Date d) { return fs::path("kml") / (format_date(d) + ".kml"); }

[[noreturn]] void corrupt(const fs::path& file, const std::string& why) {
  throw Error(ErrorCode::CorruptRecord, file.string() + ": " + why, {{"file", file.string()}});
}

json payload_of(const StoreRecord& r) {
  json raw = json::object();
  for (const auto& [day, bytes] : r.raw_files) {
    raw[format_date(day)] = {{"file", kml_relpath(day).generic_string()},
                             {"sha256", sha256_hex(bytes)}};
  }
  return json{{"respondent", to_json(r.respondent)},
              {"phase", std::string(to_string(r.phase))},
              {"setup_declared", r.setup_declared},
              {"diary", to_json(r.diary)},
              {"raw_files", std::move(raw)}};
}

void check_store_marker(const fs::path& root) {
  const fs::path marker = root / "store.json";
  json j;
  try {
    j = json::parse(read_text_file(marker));
  } catch (const json::exception& e) {
    corrupt(marker, e.what());
  }
  const std::string version = j.value("schema_version", "");
  if (version != kDiarySchema) {
    throw Error(ErrorCode::SchemaVersionMismatch,
                "store schema '" + version + "' is not " + std::string(kDiarySchema),
                {{"file", marker.string()}, {"found", version}});
  }
}

void write_store_marker(const fs::path& root) {
  write_file_atomic(root / "store.json",
                    dump_pretty(json{{"schema_version", std::string(kDiarySchema)}}));
}

}  // namespace

std::string_view to_string(Phase p) noexcept { return kPhaseNames[static_cast<std::size_t>(p)]; }

std::optional<Phase> phase_from_string(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kPhaseNames.size(); ++i) {
    if (kPhaseNames[i] == s) return static_cast<Phase>(i);
  }
  return std::nullopt;
}

Phase derive_phase(const StoreRecord& r) noexcept {
  if (r.diary.days.empty()) return Phase::Setup;
  return is_fully_validated(r.diary) ? Phase::Validated : Phase::Uploading;
}

void persist_record(const fs::path& root, const StoreRecord& record) {
  const fs::path dir = respondent_dir(root, record.respondent.id);
  for (const auto& [day, bytes] : record.raw_files) {
    write_file_atomic(dir / kml_relpath(day), bytes);
  }
  const json payload = payload_of(record);
  const json doc{{"schema_version", record.schema_version},
                 {"sha256", sha256_hex(dump(payload))},
                 {"payload", payload}};
  write_file_atomic(dir / "record.json", dump_pretty(doc));
}

StoreRecord load_record(const fs::path& dir) {
  const fs::path file = dir / "record.json";
  json doc;
  try {
    doc = json::parse(read_text_file(file));
  } catch (const json::exception& e) {
    corrupt(file, std::string("unparseable: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("payload") || !doc.contains("sha256")) {
    corrupt(file, "missing payload or checksum");
  }
  const std::string version = doc.value("schema_version", "");
  if (version != kDiarySchema) {
    throw Error(ErrorCode::SchemaVersionMismatch,
                "record schema '" + version + "' is not " + std::string(kDiarySchema),
                {{"file", file.string()}, {"found", version}});
  }
  const json& payload = doc["payload"];
  if (sha256_hex(dump(payload)) != doc["sha256"].get<std::string>()) {
    corrupt(file, "checksum mismatch");
  }

  StoreRecord r;
  r.schema_version = version;
  try {
    r.respondent = respondent_from_json(payload.at("respondent"));
    const auto phase = phase_from_string(payload.at("phase").get<std::string>());
    if (!phase) corrupt(file, "unknown phase");
    r.phase = *phase;
    r.setup_declared = payload.at("setup_declared").get<bool>();
    r.diary = diary_from_json(payload.at("diary"));
    for (const auto& [date_text, meta] : payload.at("raw_files").items()) {
      const auto day = parse_date(date_text);
      if (!day) corrupt(file, "bad raw file date '" + date_text + "'");
      const fs::path kml = dir / meta.at("file").get<std::string>();
      std::string bytes = read_text_file(kml);
      if (sha256_hex(bytes) != meta.at("sha256").get<std::string>()) {
        corrupt(kml, "checksum mismatch");
      }
      r.raw_files.emplace(*day, std::move(bytes));
    }
  } catch (const json::exception& e) {
    corrupt(file, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::Io) corrupt(file, e.what());
    throw;
  }
  if (r.respondent.id != dir.filename().string()) corrupt(file, "respondent id does not match directory");
  return r;
}

void persist(const fs::path& root, const std::vector<StoreRecord>& records) {
  fs::create_directories(root / "respondents");
  write_store_marker(root);
  for (const auto& r : records) persist_record(root, r);
}

std::vector<StoreRecord> load(const fs::path& root) {
  check_store_marker(root);
  std::vector<StoreRecord> out;
  const fs::path dir = root / "respondents";
  if (!fs::exists(dir)) return out;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) out.push_back(load_record(d));
  return out;
}

Store::Store(fs::path root, bool create) : root_(std::move(root)) {
  if (!fs::exists(root_ / "store.json")) {
    if (!create) {
      throw Error(ErrorCode::NotFound, "no store at " + root_.string(), {{"path", root_.string()}});
    }
    persist(root_, {});
  }
  for (auto& r : load(root_)) {
    auto slot = std::make_shared<Slot>();
    const std::string id = r.respondent.id;
    slot->record = std::move(r);
    slots_.emplace(id, std::move(slot));
  }
}

std::vector<std::string> Store::respondent_ids() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : slots_) ids.push_back(id);
  return ids;
}

std::size_t Store::size() const {
  std::shared_lock lock(map_mutex_);
  return slots_.size();
}

bool Store::contains(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  return slots_.contains(id);
}

std::shared_ptr<Store::Slot> Store::find_slot(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = slots_.find(id);
  if (it == slots_.end()) {
    throw Error(ErrorCode::NotFound, "unknown respondent '" + id + "'", {{"respondent_id", id}});
  }
  return it->second;
}

StoreRecord Store::get(const std::string& id) const {
  auto slot = find_slot(id);
  std::lock_guard lock(slot->mutex);
  return slot->record;
}

std::vector<StoreRecord> Store::snapshot() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::shared_lock lock(map_mutex_);
    for (const auto& [_, s] : slots_) slots.push_back(s);
  }
  std::vector<StoreRecord> out;
  out.reserve(slots.size());
  for (const auto& s : slots) {
    std::lock_guard lock(s->mutex);
    out.push_back(s->record);
  }
  return out;
}

std::string Store::add(StoreRecord record) {
  std::unique_lock lock(map_mutex_);
  if (record.respondent.id.empty()) {
    for (std::size_t n = slots_.size() + 1;; ++n) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "r%04zu", n);
      if (!slots_.contains(buf)) {
        record.respondent.id = buf;
        break;
      }
    }
  }
  validate(record.respondent);
  const std::string id = record.respondent.id;
  if (slots_.contains(id)) {
    throw Error(ErrorCode::Conflict, "respondent '" + id + "' already exists",
                {{"respondent_id", id}});
  }
  record.diary.respondent_id = id;
  record.phase = derive_phase(record);
  persist_record(root_, record);
  auto slot = std::make_shared<Slot>();
  slot->record = std::move(record);
  slots_.emplace(id, std::move(slot));
  return id;
}

void Store::commit(Slot& slot, StoreRecord working) {
  working.phase = derive_phase(working);
  persist_record(root_, working);
  slot.record = std::move(working);
}

}  // namespace glh
