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

#ifndef GLH_IO_HPP
#define GLH_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace glh {

/// Throws Error(Io) naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, flushes it, then renames over `path`.
/// Readers see either the old or the new content, never a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace glh

#endif  // GLH_IO_HPP
