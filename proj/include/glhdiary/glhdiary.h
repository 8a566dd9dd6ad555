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

/* C interface to the glhdiary travel-diary toolkit.
 *
 * Every fallible function returns a glh_status. On failure the calling
 * thread's last error is set; glh_last_error_json() renders it as
 * {"code","message","detail"}. Strings returned through char** out
 * parameters are heap allocated and must be released with glh_string_free().
 */
#ifndef GLHDIARY_H
#define GLHDIARY_H

#include <stddef.h>

#if defined(GLH_BUILDING_LIBRARY)
#define GLH_API __attribute__((visibility("default")))
#else
#define GLH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glh_status {
  GLH_OK = 0,
  /* Bad input: unreadable or malformed files, unknown ids, rule violations. */
  GLH_ERR_INPUT = 1,
  /* Bug or environment failure. */
  GLH_ERR_INTERNAL = 2
} glh_status;

typedef struct glh_store glh_store;
typedef struct glh_server glh_server;

GLH_API const char* glh_version(void);

/* Last error of the calling thread. The pointers stay valid until the next
 * failing call on the same thread. */
GLH_API const char* glh_last_error_code(void);
GLH_API const char* glh_last_error_message(void);
GLH_API const char* glh_last_error_json(void);

GLH_API void glh_string_free(char* s);

/* Writes via temp file + rename, so readers never see a partial file. */
GLH_API glh_status glh_write_file_atomic(const char* path, const char* data, size_t len);

/* Builds a store at store_dir from the KML files under kml_dir, one
 * subdirectory per respondent id.
 * validations_csv and time_zone may be NULL; short_dwell_s <= 0 keeps the
 * default. summary_json receives {"respondents","days","events"}. */
GLH_API glh_status glh_ingest(const char* kml_dir, const char* respondents_csv,
                              const char* validations_csv, const char* store_dir,
                              const char* time_zone, double short_dwell_s,
                              char** summary_json);

GLH_API glh_status glh_store_open(const char* store_dir, int create, const char* time_zone,
                                  glh_store** out);
GLH_API void glh_store_free(glh_store* store);

GLH_API glh_status glh_store_size(const glh_store* store, size_t* out);

/* Registers a respondent from its JSON description; out_id may be NULL. */
GLH_API glh_status glh_respondent_add(glh_store* store, const char* respondent_json,
                                      char** out_id);
/* Parses and attaches one day of KML; returns that day's diary fragment. */
GLH_API glh_status glh_upload_day(glh_store* store, const char* respondent_id,
                                  const char* date, const char* kml, size_t kml_len,
                                  char** fragment_json);
GLH_API glh_status glh_day_fragment(const glh_store* store, const char* respondent_id,
                                    const char* date, char** fragment_json);
GLH_API glh_status glh_submit_validations(glh_store* store, const char* respondent_id,
                                          const char* responses_json, char** status_json);
GLH_API glh_status glh_respondent_status(const glh_store* store, const char* respondent_id,
                                         char** status_json);

GLH_API glh_status glh_export_trips(const glh_store* store, char** csv);
GLH_API glh_status glh_export_confusion(const glh_store* store, char** csv);
/* reference_csv may be NULL. text may be NULL when not wanted. */
GLH_API glh_status glh_export_stats(const glh_store* store, const char* reference_csv,
                                    char** json, char** text);
GLH_API glh_status glh_fit_logit(const glh_store* store, const char* zones_csv, char** json,
                                 char** text);

/* Timeline entries of a KML document as a JSON array. */
GLH_API glh_status glh_parse_kml_json(const char* kml, size_t kml_len, char** json);

/* Serves the HTTP API on host:port (0 picks a free port) in a background
 * thread. static_dir and reference_csv may be NULL. */
GLH_API glh_status glh_server_start(glh_store* store, const char* host, int port,
                                    const char* static_dir, const char* reference_csv,
                                    glh_server** out);
GLH_API int glh_server_port(const glh_server* server);
/* Blocks until the server stops. */
GLH_API void glh_server_wait(glh_server* server);
GLH_API void glh_server_stop(glh_server* server);
GLH_API void glh_server_free(glh_server* server);

GLH_API double glh_haversine_m(double lat1, double lon1, double lat2, double lon2);
GLH_API glh_status glh_trip_rate(size_t trips, size_t respondents, size_t days, double* out);
GLH_API glh_status glh_rho_square(double ll_full, double ll_constant, double* out);
GLH_API glh_status glh_constant_only_ll(size_t positives, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GLHDIARY_H */
