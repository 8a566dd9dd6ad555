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

#ifndef GLH_SERVICE_HPP
#define GLH_SERVICE_HPP

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glh/error.hpp"
#include "glh/metrics.hpp"
#include "glh/pipeline.hpp"
#include "glh/store.hpp"

namespace httplib {
class Server;
}

namespace glh {

struct Request {
  std::string method;
  std::string path;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ServiceOptions {
  PipelineOptions pipeline;
  std::optional<std::filesystem::path> static_dir;
  std::optional<std::vector<ReferenceShare>> reference;
};

/// HTTP front end of a Store. handle() is the whole routing table, so tests
/// can drive it without opening a socket; listen() wraps it in cpp-httplib.
class Service {
 public:
  Service(Store& store, ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& request);

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop().
  void listen_after_bind();
  void stop();

 private:
  Response dispatch(const Request& request);

  Store& store_;
  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex lifecycle_mutex_;
  bool started_ = false;
  bool stopped_ = false;
};

/// HTTP status for an error code (400 / 404 / 409 / 422 / 500).
int http_status(ErrorCode code) noexcept;
/// {"code", "message", "detail"}
std::string error_body(const Error& e);

}  // namespace glh

#endif  // GLH_SERVICE_HPP
