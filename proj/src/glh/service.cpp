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

#include "glh/service.hpp"

#include <regex>

#include "glh/error.hpp"
#include "glh/reports.hpp"
#include "glh/serialize.hpp"

// After Eigen: httplib drags in <resolv.h>, whose _res macro clashes with
// Eigen parameter names.
#include <httplib.h>

namespace glh {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::DuplicateDay:
    case ErrorCode::Conflict:
      return 409;
    case ErrorCode::MalformedXml:
    case ErrorCode::MissingTimeSpan:
    case ErrorCode::InvalidTimeSpan:
    case ErrorCode::InvalidCoordinate:
      return 422;
    case ErrorCode::Io:
    case ErrorCode::Internal:
    case ErrorCode::CorruptRecord:
    case ErrorCode::SchemaVersionMismatch:
      return 500;
    default:
      return 400;
  }
}

std::string error_body(const Error& e) {
  return dump(json{{"code", std::string(to_string(e.code()))},
                   {"message", e.what()},
                   {"detail", e.detail()}});
}

namespace {

Response json_response(int status, const json& body) { return {status, "application/json", dump(body)}; }

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
  }
}

Date path_date(const std::string& text) {
  const auto d = parse_date(text);
  if (!d) throw Error(ErrorCode::InvalidArgument, "bad date '" + text + "'", {{"date", text}});
  return *d;
}

json options_document() {
  json modes = json::array();
  for (Mode m : kAllModes) modes.push_back(std::string(to_string(m)));
  return json{{"purpose_options", purpose_response_options()},
              {"mode_options", mode_response_options()},
              {"modes", modes},
              {"purpose_prompt", std::string(kPurposePrompt)},
              {"mode_prompt", std::string(kModePrompt)}};
}

const std::regex kDayUpload(R"(^/respondents/([^/]+)/days/([^/]+)/kml$)");
const std::regex kRespondentPart(R"(^/respondents/([^/]+)/(diary|validations|status)$)");
const std::regex kExport(R"(^/export/([a-z]+)$)");

}  // namespace

Service::Service(Store& store, ServiceOptions options) : store_(store), options_(std::move(options)) {}

Service::~Service() = default;

Response Service::handle(const Request& request) {
  try {
    return dispatch(request);
  } catch (const Error& e) {
    return {http_status(e.code()), "application/json", error_body(e)};
  } catch (const std::exception& e) {
    return {500, "application/json", error_body(Error(ErrorCode::Internal, e.what()))};
  }
}

Response Service::dispatch(const Request& req) {
  std::smatch m;
  const std::string& path = req.path;

  if (path == "/respondents" && req.method == "POST") {
    const json body = req.body.empty() ? json::object() : parse_body(req.body);
    StoreRecord record;
    record.respondent = respondent_from_json(body);
    record.setup_declared = body.value("setup_declared", false);
    record.diary.time_zone = options_.pipeline.time_zone;
    const std::string id = store_.add(std::move(record));
    return json_response(201, {{"id", id}});
  }
  if (path == "/respondents" && req.method == "GET") {
    return json_response(200, {{"respondents", store_.respondent_ids()}});
  }
  if (std::regex_match(path, m, kDayUpload)) {
    if (req.method != "POST") return json_response(405, {{"code", "MethodNotAllowed"}});
    const std::string id = m[1];
    const Date day = path_date(m[2]);
    return json_response(201, upload_day(store_, id, day, req.body, options_.pipeline));
  }
  if (std::regex_match(path, m, kRespondentPart)) {
    const std::string id = m[1];
    const std::string part = m[2];
    if (part == "validations") {
      if (req.method != "POST") return json_response(405, {{"code", "MethodNotAllowed"}});
      // Unknown respondent takes precedence over a malformed body.
      if (!store_.contains(id)) store_.get(id);
      const auto responses = validations_from_json(parse_body(req.body));
      return json_response(200, submit_validations(store_, id, responses));
    }
    if (req.method != "GET") return json_response(405, {{"code", "MethodNotAllowed"}});
    const StoreRecord record = store_.get(id);
    if (part == "status") return json_response(200, respondent_status(record));
    json doc{{"respondent", to_json(record.respondent)}, {"diary", to_json(record.diary)}};
    json fragments = json::array();
    for (const auto& day : record.diary.days) fragments.push_back(day_fragment(record.diary, day));
    doc["fragments"] = std::move(fragments);
    return json_response(200, doc);
  }
  if (std::regex_match(path, m, kExport) && req.method == "GET") {
    const auto records = store_.snapshot();
    const std::string what = m[1];
    if (what == "trips") return {200, "text/csv", trips_csv(records)};
    if (what == "confusion") return {200, "text/csv", confusion_report_csv(records)};
    if (what == "stats") {
      return json_response(
          200, stats_report(records, options_.reference ? &*options_.reference : nullptr));
    }
    throw Error(ErrorCode::NotFound, "unknown export '" + what + "'", {{"export", what}});
  }
  if (path == "/options" && req.method == "GET") return json_response(200, options_document());

  throw Error(ErrorCode::NotFound, "no route for " + req.method + " " + path,
              {{"method", req.method}, {"path", path}});
}

int Service::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  auto forward = [this](const httplib::Request& in, httplib::Response& out) {
    const Response r = handle({in.method, in.path, in.body});
    out.status = r.status;
    out.set_content(r.body, r.content_type);
  };
  const std::string api = R"(/(respondents|export|options)(/.*)?)";
  server_->Get(api, forward);
  server_->Post(api, forward);
  if (options_.static_dir) {
    if (!server_->set_mount_point("/", options_.static_dir->string())) {
      throw Error(ErrorCode::InvalidArgument,
                  "static directory not found: " + options_.static_dir->string());
    }
  }
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port),
                {{"host", host}, {"port", port}});
  }
  return bound;
}

void Service::listen_after_bind() {
  {
    std::lock_guard lock(lifecycle_mutex_);
    if (!server_ || stopped_) return;
    started_ = true;
  }
  server_->listen_after_bind();
}

// httplib ignores stop() until its accept loop runs, so a stop racing the
// listener start waits for it first.
void Service::stop() {
  {
    std::lock_guard lock(lifecycle_mutex_);
    stopped_ = true;
    if (!server_ || !started_) return;
  }
  server_->wait_until_ready();
  server_->stop();
}

}  // namespace glh
