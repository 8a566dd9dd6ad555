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

#include "glhdiary/glhdiary.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <thread>

#include "glh/error.hpp"
#include "glh/io.hpp"
#include "glh/kml.hpp"
#include "glh/logit.hpp"
#include "glh/pipeline.hpp"
#include "glh/reports.hpp"
#include "glh/serialize.hpp"
#include "glh/service.hpp"

using nlohmann::json;

struct glh_store {
  glh::PipelineOptions options;
  std::unique_ptr<glh::Store> store;
};

struct glh_server {
  std::unique_ptr<glh::Service> service;
  std::thread thread;
  int port = 0;
};

namespace {

struct LastError {
  std::string code = "None";
  std::string message;
  std::string json_line = "{}";
};

thread_local LastError last_error;

glh_status fail(const glh::Error& e) {
  last_error.code = std::string(glh::to_string(e.code()));
  last_error.message = e.what();
  last_error.json_line = glh::error_body(e);
  return e.code() == glh::ErrorCode::Internal ? GLH_ERR_INTERNAL : GLH_ERR_INPUT;
}

// Runs fn and converts every exception into a status plus last error.
template <typename F>
glh_status guarded(F&& fn) noexcept {
  try {
    fn();
    return GLH_OK;
  } catch (const glh::Error& e) {
    return fail(e);
  } catch (const std::bad_alloc&) {
    return fail(glh::Error(glh::ErrorCode::Internal, "out of memory"));
  } catch (const std::exception& e) {
    return fail(glh::Error(glh::ErrorCode::Internal, e.what()));
  } catch (...) {
    return fail(glh::Error(glh::ErrorCode::Internal, "unknown exception"));
  }
}

void require(const void* p, const char* name) {
  if (!p) throw glh::Error(glh::ErrorCode::InvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

glh::Date date_arg(const char* text) {
  require(text, "date");
  const auto d = glh::parse_date(text);
  if (!d) throw glh::Error(glh::ErrorCode::InvalidArgument, std::string("bad date '") + text + "'");
  return *d;
}

json entry_json(const glh::TimelineEntry& e) {
  json path = json::array();
  for (const auto& p : e.path) path.push_back({p.lat, p.lon});
  return json{{"kind", std::string(glh::to_string(e.kind))},
              {"name", e.name},
              {"address", e.address ? json(*e.address) : json(nullptr)},
              {"begin", glh::format_timestamp(e.window.begin)},
              {"end", glh::format_timestamp(e.window.end)},
              {"raw_mode_label", e.raw_mode_label ? json(*e.raw_mode_label) : json(nullptr)},
              {"category", e.category},
              {"path", std::move(path)}};
}

}  // namespace

extern "C" {

GLH_API const char* glh_version(void) { return "0.1.0"; }

GLH_API const char* glh_last_error_code(void) { return last_error.code.c_str(); }
GLH_API const char* glh_last_error_message(void) { return last_error.message.c_str(); }
GLH_API const char* glh_last_error_json(void) { return last_error.json_line.c_str(); }

GLH_API void glh_string_free(char* s) { std::free(s); }

GLH_API glh_status glh_write_file_atomic(const char* path, const char* data, size_t len) {
  return guarded([&] {
    require(path, "path");
    if (len) require(data, "data");
    glh::write_file_atomic(path, std::string_view(data ? data : "", len));
  });
}

GLH_API glh_status glh_ingest(const char* kml_dir, const char* respondents_csv,
                              const char* validations_csv, const char* store_dir,
                              const char* time_zone, double short_dwell_s, char** summary_json) {
  return guarded([&] {
    require(kml_dir, "kml_dir");
    require(respondents_csv, "respondents_csv");
    require(store_dir, "store_dir");
    glh::PipelineOptions options;
    if (time_zone) options.time_zone = time_zone;
    if (short_dwell_s > 0) options.short_dwell_s = short_dwell_s;
    std::optional<std::filesystem::path> validations;
    if (validations_csv) validations = validations_csv;
    const auto s = glh::ingest(kml_dir, respondents_csv, validations, store_dir, options);
    emit(summary_json,
         glh::dump(json{{"respondents", s.respondents}, {"days", s.days}, {"events", s.events}}));
  });
}

GLH_API glh_status glh_store_open(const char* store_dir, int create, const char* time_zone,
                                  glh_store** out) {
  return guarded([&] {
    require(store_dir, "store_dir");
    require(out, "out");
    auto handle = std::make_unique<glh_store>();
    if (time_zone) {
      glh::TimeZone::load(time_zone);
      handle->options.time_zone = time_zone;
    }
    handle->store = std::make_unique<glh::Store>(store_dir, create != 0);
    *out = handle.release();
  });
}

GLH_API void glh_store_free(glh_store* store) { delete store; }

GLH_API glh_status glh_store_size(const glh_store* store, size_t* out) {
  return guarded([&] {
    require(store, "store");
    require(out, "out");
    *out = store->store->size();
  });
}

GLH_API glh_status glh_respondent_add(glh_store* store, const char* respondent_json, char** out_id) {
  return guarded([&] {
    require(store, "store");
    require(respondent_json, "respondent_json");
    json body;
    try {
      body = json::parse(respondent_json);
    } catch (const json::parse_error& e) {
      throw glh::Error(glh::ErrorCode::InvalidArgument, std::string("respondent is not JSON: ") + e.what());
    }
    glh::StoreRecord record;
    record.respondent = glh::respondent_from_json(body);
    record.setup_declared = body.value("setup_declared", false);
    record.diary.time_zone = store->options.time_zone;
    emit(out_id, store->store->add(std::move(record)));
  });
}

GLH_API glh_status glh_upload_day(glh_store* store, const char* respondent_id, const char* date,
                                  const char* kml, size_t kml_len, char** fragment_json) {
  return guarded([&] {
    require(store, "store");
    require(respondent_id, "respondent_id");
    require(kml, "kml");
    const auto fragment = glh::upload_day(*store->store, respondent_id, date_arg(date),
                                          std::string_view(kml, kml_len), store->options);
    emit(fragment_json, glh::dump(fragment));
  });
}

GLH_API glh_status glh_day_fragment(const glh_store* store, const char* respondent_id,
                                    const char* date, char** fragment_json) {
  return guarded([&] {
    require(store, "store");
    require(respondent_id, "respondent_id");
    const glh::Date day = date_arg(date);
    const auto record = store->store->get(respondent_id);
    if (std::find(record.diary.days.begin(), record.diary.days.end(), day) == record.diary.days.end()) {
      throw glh::Error(glh::ErrorCode::NotFound, "no diary day " + glh::format_date(day),
                       {{"respondent_id", respondent_id}, {"date", glh::format_date(day)}});
    }
    emit(fragment_json, glh::dump(glh::day_fragment(record.diary, day)));
  });
}

GLH_API glh_status glh_submit_validations(glh_store* store, const char* respondent_id,
                                          const char* responses_json, char** status_json) {
  return guarded([&] {
    require(store, "store");
    require(respondent_id, "respondent_id");
    require(responses_json, "responses_json");
    json body;
    try {
      body = json::parse(responses_json);
    } catch (const json::parse_error& e) {
      throw glh::Error(glh::ErrorCode::InvalidArgument, std::string("responses are not JSON: ") + e.what());
    }
    const auto responses = glh::validations_from_json(body);
    emit(status_json, glh::dump(glh::submit_validations(*store->store, respondent_id, responses)));
  });
}

GLH_API glh_status glh_respondent_status(const glh_store* store, const char* respondent_id,
                                         char** status_json) {
  return guarded([&] {
    require(store, "store");
    require(respondent_id, "respondent_id");
    emit(status_json, glh::dump(glh::respondent_status(store->store->get(respondent_id))));
  });
}

GLH_API glh_status glh_export_trips(const glh_store* store, char** csv) {
  return guarded([&] {
    require(store, "store");
    emit(csv, glh::trips_csv(store->store->snapshot()));
  });
}

GLH_API glh_status glh_export_confusion(const glh_store* store, char** csv) {
  return guarded([&] {
    require(store, "store");
    emit(csv, glh::confusion_report_csv(store->store->snapshot()));
  });
}

GLH_API glh_status glh_export_stats(const glh_store* store, const char* reference_csv, char** json_out,
                                    char** text) {
  return guarded([&] {
    require(store, "store");
    std::optional<std::vector<glh::ReferenceShare>> reference;
    if (reference_csv) reference = glh::read_reference_marginals(reference_csv);
    const json report = glh::stats_report(store->store->snapshot(), reference ? &*reference : nullptr);
    emit(json_out, glh::dump_pretty(report));
    emit(text, glh::stats_text(report));
  });
}

GLH_API glh_status glh_fit_logit(const glh_store* store, const char* zones_csv, char** json_out,
                                 char** text) {
  return guarded([&] {
    require(store, "store");
    require(zones_csv, "zones_csv");
    const auto zones = glh::read_zones(zones_csv);
    const auto build = glh::design_rows(store->store->snapshot(), zones);
    const auto fit = glh::logit::fit(glh::logit::from_design(build.rows));
    emit(json_out, glh::dump_pretty(glh::fit_json(fit, &build)));
    emit(text, glh::fit_text(fit));
  });
}

GLH_API glh_status glh_parse_kml_json(const char* kml, size_t kml_len, char** json_out) {
  return guarded([&] {
    require(kml, "kml");
    json out = json::array();
    for (const auto& e : glh::parse_kml(std::string_view(kml, kml_len))) out.push_back(entry_json(e));
    emit(json_out, glh::dump(out));
  });
}

GLH_API glh_status glh_server_start(glh_store* store, const char* host, int port, const char* static_dir,
                                    const char* reference_csv, glh_server** out) {
  return guarded([&] {
    require(store, "store");
    require(host, "host");
    require(out, "out");
    if (port < 0 || port > 65535) {
      throw glh::Error(glh::ErrorCode::InvalidArgument, "port out of range", {{"port", port}});
    }
    glh::ServiceOptions options;
    options.pipeline.time_zone = store->options.time_zone;
    options.pipeline.short_dwell_s = store->options.short_dwell_s;
    options.pipeline.overlap_tolerance_s = store->options.overlap_tolerance_s;
    if (static_dir) options.static_dir = static_dir;
    if (reference_csv) options.reference = glh::read_reference_marginals(reference_csv);
    auto server = std::make_unique<glh_server>();
    server->service = std::make_unique<glh::Service>(*store->store, std::move(options));
    server->port = server->service->bind(host, port);
    glh::Service* service = server->service.get();
    server->thread = std::thread([service] { service->listen_after_bind(); });
    *out = server.release();
  });
}

GLH_API int glh_server_port(const glh_server* server) { return server ? server->port : -1; }

GLH_API void glh_server_wait(glh_server* server) {
  if (server && server->thread.joinable()) server->thread.join();
}

GLH_API void glh_server_stop(glh_server* server) {
  if (server) server->service->stop();
}

GLH_API void glh_server_free(glh_server* server) {
  if (!server) return;
  server->service->stop();
  if (server->thread.joinable()) server->thread.join();
  delete server;
}

GLH_API double glh_haversine_m(double lat1, double lon1, double lat2, double lon2) {
  return glh::haversine_m({lat1, lon1}, {lat2, lon2});
}

GLH_API glh_status glh_trip_rate(size_t trips, size_t respondents, size_t days, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = glh::trip_rate(trips, respondents, days);
  });
}

GLH_API glh_status glh_rho_square(double ll_full, double ll_constant, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = glh::logit::rho_square(ll_full, ll_constant);
  });
}

GLH_API glh_status glh_constant_only_ll(size_t positives, size_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = glh::logit::constant_only_log_likelihood(positives, n);
  });
}

}  // extern "C"
