// Copyright 2026 The qkdna Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Command-line front end. `run` is separate from main so it can be driven
 * from tests with captured streams.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qkdna::cli {

/// Runs one command line (without the program name). Returns the exit status.
int run(std::vector<std::string> args, std::ostream &out, std::ostream &err);

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a 64 of the file contents as 16 lowercase hex digits.
[[nodiscard]] std::string file_checksum(const std::filesystem::path &path);

/// Where the manifest for `artifact` is written: "<artifact>.manifest.json".
[[nodiscard]] std::filesystem::path manifest_path(const std::filesystem::path &artifact);

} // namespace qkdna::cli
