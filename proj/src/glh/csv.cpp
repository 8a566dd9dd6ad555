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

#include "glh/csv.hpp"

#include <algorithm>

#include "glh/error.hpp"
#include "glh/io.hpp"
#include "glh/mode.hpp"

namespace glh::csv {

namespace {
const std::string kEmpty;
}

const std::string& Row::operator[](std::string_view column) const {
  const auto it = std::find(header_->begin(), header_->end(), column);
  if (it == header_->end()) return kEmpty;
  const auto idx = static_cast<std::size_t>(it - header_->begin());
  return idx < cells_.size() ? cells_[idx] : kEmpty;
}

bool Row::has(std::string_view column) const {
  return std::find(header_->begin(), header_->end(), column) != header_->end();
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::string(trim(field)));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(std::string(trim(field)));
  return out;
}

Table parse(std::string_view text) {
  Table table;
  std::shared_ptr<const std::vector<std::string>> header;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    if (!have_header) {
      // Strip a UTF-8 BOM.
      if (line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
      table.header = split_line(line);
      header = std::make_shared<const std::vector<std::string>>(table.header);
      have_header = true;
      continue;
    }
    table.rows.emplace_back(header, split_line(line), line_no);
  }
  return table;
}

Table read_file(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace glh::csv
