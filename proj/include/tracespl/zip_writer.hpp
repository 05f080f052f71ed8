//------------------------------------------------------------------------------
//
//   Copyright 2026 The tracespl Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tracespl {

/// Builds an uncompressed (stored) zip archive in memory. Entry timestamps
/// are fixed so identical inputs give identical bytes.
std::string make_zip(std::vector<std::pair<std::string, std::string>> const &entries);

/// Reads back the entries of an archive produced by make_zip. Throws
/// std::runtime_error on malformed input or CRC mismatch.
std::vector<std::pair<std::string, std::string>> read_zip(std::string_view archive);

}  // namespace tracespl
