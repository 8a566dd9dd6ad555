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

// Command-line front end. Talks to the library through the C interface only.
//
// Exit status: 0 success, 1 input error, 2 internal error. Failures print a
// single JSON line {"code","message","detail"} on stderr.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "glhdiary/glhdiary.h"

namespace {

// Thrown to unwind out of a subcommand with the library's last error.
struct Failed {
  glh_status status;
};

void check(glh_status s) {
  if (s != GLH_OK) throw Failed{s};
}

int report(glh_status s) {
  std::cerr << glh_last_error_json() << '\n';
  return s == GLH_ERR_INTERNAL ? 2 : 1;
}

int usage_error(const std::string& message) {
  std::cerr << nlohmann::json{{"code", "InvalidArgument"}, {"message", message}, {"detail", nlohmann::json::object()}}.dump()
            << '\n';
  return 1;
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { glh_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct StoreHandle {
  glh_store* p = nullptr;
  ~StoreHandle() { glh_store_free(p); }
};

StoreHandle open_store(const std::string& dir, bool create, const std::optional<std::string>& tz) {
  StoreHandle h;
  check(glh_store_open(dir.c_str(), create ? 1 : 0, tz ? tz->c_str() : nullptr, &h.p));
  return h;
}

void write_out(const std::string& path, const std::string& content) {
  check(glh_write_file_atomic(path.c_str(), content.data(), content.size()));
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const char* opt_c(const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; }

glh_server* active_server = nullptr;

extern "C" void on_signal(int) {
  if (active_server) glh_server_stop(active_server);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Travel diaries from Google Location History KML exports"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(glh_version()));

  std::string store_dir, out_path, kml_dir, respondents_csv, zones_csv, listen, respondent, date, input;
  std::optional<std::string> validations_csv, time_zone, census_csv, text_out, static_dir, out_opt;
  double short_dwell = 0.0;

  auto* ingest = app.add_subcommand("ingest", "Build a diary store from KML exports");
  ingest->add_option("--kml-dir", kml_dir, "Directory with one subdirectory of KML files per respondent")->required();
  ingest->add_option("--respondents-csv", respondents_csv, "Respondent attributes")->required();
  ingest->add_option("--out", store_dir, "Store directory to create or extend")->required();
  ingest->add_option("--validations", validations_csv, "Validation responses CSV");
  ingest->add_option("--time-zone", time_zone, "IANA survey time zone");
  ingest->add_option("--short-dwell", short_dwell, "Short-dwell threshold in seconds");

  auto* trips = app.add_subcommand("trips", "Export aggregated trips as CSV");
  trips->add_option("--store", store_dir)->required();
  trips->add_option("--out", out_path)->required();

  auto* stats = app.add_subcommand("stats", "Descriptive statistics report");
  stats->add_option("--store", store_dir)->required();
  stats->add_option("--census", census_csv, "Reference marginals CSV");
  stats->add_option("--out", out_path)->required();
  stats->add_option("--text-out", text_out, "Also write a plain-text rendering");

  auto* confusion = app.add_subcommand("confusion", "Inferred vs validated mode matrix");
  confusion->add_option("--store", store_dir)->required();
  confusion->add_option("--out", out_path)->required();

  auto* logit = app.add_subcommand("logit", "Fit the mode-mismatch logit model");
  logit->add_option("--store", store_dir)->required();
  logit->add_option("--zones", zones_csv, "Zone centroid and density CSV")->required();
  logit->add_option("--out", out_path)->required();
  logit->add_option("--text-out", text_out, "Also write the coefficient table as text");

  auto* serve = app.add_subcommand("serve", "Run the survey HTTP service");
  serve->add_option("--store", store_dir)->required();
  serve->add_option("--listen", listen, "host:port")->required();
  serve->add_option("--static-dir", static_dir, "Directory of UI assets to serve");
  serve->add_option("--census", census_csv, "Reference marginals for /export/stats");
  serve->add_option("--time-zone", time_zone);

  auto* upload = app.add_subcommand("upload", "Attach one day of KML to a respondent");
  upload->add_option("--store", store_dir)->required();
  upload->add_option("--respondent", respondent)->required();
  upload->add_option("--date", date)->required();
  upload->add_option("--kml", input)->required();
  upload->add_option("--out", out_opt, "Write the day fragment here instead of stdout");
  upload->add_option("--time-zone", time_zone);

  auto* fragment = app.add_subcommand("fragment", "Print one diary day as JSON");
  fragment->add_option("--store", store_dir)->required();
  fragment->add_option("--respondent", respondent)->required();
  fragment->add_option("--date", date)->required();
  fragment->add_option("--out", out_opt);

  auto* validate = app.add_subcommand("validate", "Apply validation responses from a JSON file");
  validate->add_option("--store", store_dir)->required();
  validate->add_option("--respondent", respondent)->required();
  validate->add_option("--responses", input)->required();

  auto* parse = app.add_subcommand("parse-kml", "Dump the timeline entries of a KML file");
  parse->add_option("--kml", input)->required();
  parse->add_option("--out", out_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  auto emit = [](const std::optional<std::string>& path, const std::string& content) {
    if (path) {
      write_out(*path, content);
    } else {
      std::cout << content << '\n';
    }
  };

  try {
    if (*ingest) {
      OwnedString summary;
      check(glh_ingest(kml_dir.c_str(), respondents_csv.c_str(), opt_c(validations_csv), store_dir.c_str(),
                       opt_c(time_zone), short_dwell, &summary.p));
      std::cout << summary.str() << '\n';
    } else if (*trips) {
      auto s = open_store(store_dir, false, std::nullopt);
      OwnedString csv;
      check(glh_export_trips(s.p, &csv.p));
      write_out(out_path, csv.str());
    } else if (*stats) {
      auto s = open_store(store_dir, false, std::nullopt);
      OwnedString json, text;
      check(glh_export_stats(s.p, opt_c(census_csv), &json.p, text_out ? &text.p : nullptr));
      write_out(out_path, json.str());
      if (text_out) write_out(*text_out, text.str());
    } else if (*confusion) {
      auto s = open_store(store_dir, false, std::nullopt);
      OwnedString csv;
      check(glh_export_confusion(s.p, &csv.p));
      write_out(out_path, csv.str());
    } else if (*logit) {
      auto s = open_store(store_dir, false, std::nullopt);
      OwnedString json, text;
      check(glh_fit_logit(s.p, zones_csv.c_str(), &json.p, text_out ? &text.p : nullptr));
      write_out(out_path, json.str());
      if (text_out) write_out(*text_out, text.str());
    } else if (*serve) {
      const auto colon = listen.rfind(':');
      int port = -1;
      if (colon != std::string::npos) {
        try {
          std::size_t used = 0;
          port = std::stoi(listen.substr(colon + 1), &used);
          if (used != listen.size() - colon - 1) port = -1;
        } catch (const std::exception&) {
          port = -1;
        }
      }
      if (port < 0 || port > 65535) return usage_error("--listen expects host:port, got '" + listen + "'");
      auto s = open_store(store_dir, true, time_zone);
      glh_server* server = nullptr;
      check(glh_server_start(s.p, listen.substr(0, colon).c_str(), port, opt_c(static_dir), opt_c(census_csv),
                             &server));
      active_server = server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << nlohmann::json{{"listening", listen.substr(0, colon)}, {"port", glh_server_port(server)}}.dump()
                << std::endl;
      glh_server_wait(server);
      active_server = nullptr;
      glh_server_free(server);
    } else if (*upload) {
      auto s = open_store(store_dir, false, time_zone);
      const std::string kml = read_input(input);
      OwnedString frag;
      check(glh_upload_day(s.p, respondent.c_str(), date.c_str(), kml.data(), kml.size(), &frag.p));
      emit(out_opt, frag.str());
    } else if (*fragment) {
      auto s = open_store(store_dir, false, std::nullopt);
      OwnedString frag;
      check(glh_day_fragment(s.p, respondent.c_str(), date.c_str(), &frag.p));
      emit(out_opt, frag.str());
    } else if (*validate) {
      auto s = open_store(store_dir, false, std::nullopt);
      const std::string body = read_input(input);
      OwnedString status;
      check(glh_submit_validations(s.p, respondent.c_str(), body.c_str(), &status.p));
      std::cout << status.str() << '\n';
    } else if (*parse) {
      const std::string kml = read_input(input);
      OwnedString entries;
      check(glh_parse_kml_json(kml.data(), kml.size(), &entries.p));
      emit(out_opt, entries.str());
    }
  } catch (const Failed& f) {
    return report(f.status);
  } catch (const std::runtime_error& e) {
    std::cerr << nlohmann::json{{"code", "Io"}, {"message", e.what()}, {"detail", nlohmann::json::object()}}.dump()
              << '\n';
    return 1;
  }
  return 0;
}
