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

#ifndef GLH_CSV_HPP
#define GLH_CSV_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace glh::csv {

/// One data row addressed by header name. Missing columns read as "".
class Row {
 public:
  Row(std::shared_ptr<const std::vector<std::string>> header, std::vector<std::string> cells,
      std::size_t line)
      : header_(std::move(header)), cells_(std::move(cells)), line_(line) {}

  const std::string& operator[](std::string_view column) const;
  bool has(std::string_view column) const;
  std::size_t line() const noexcept { return line_; }

 private:
  std::shared_ptr<const std::vector<std::string>> header_;
  std::vector<std::string> cells_;
  std::size_t line_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

/// RFC 4180-style field splitting (quoted fields, doubled quotes).
std::vector<std::string> split_line(std::string_view line);
/// Parses text with a header row. Blank lines are skipped.
Table parse(std::string_view text);
/// Throws Error(Io) when the file cannot be read.
Table read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);

}  // namespace glh::csv

#endif  // GLH_CSV_HPP
