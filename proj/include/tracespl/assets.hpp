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

#include <filesystem>

namespace tracespl {

/// Root of the bundled assets: $TRACESPL_ASSETS when set, otherwise the
/// directory configured at build time.
std::filesystem::path asset_dir();

std::filesystem::path default_model_dir();
std::filesystem::path default_template_dir();
std::filesystem::path default_fixture_dir();
std::filesystem::path bundled_model_path();

}  // namespace tracespl
