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

#include "tracespl/assets.hpp"

#include <cstdlib>

namespace tracespl {

std::filesystem::path asset_dir()
{
  if (char const *env = std::getenv("TRACESPL_ASSETS"); env != nullptr && *env != '\0')
  {
    return env;
  }
  return TRACESPL_ASSET_DIR;
}

std::filesystem::path default_model_dir()
{
  return asset_dir() / "models";
}

std::filesystem::path default_template_dir()
{
  return asset_dir() / "templates";
}

std::filesystem::path default_fixture_dir()
{
  return asset_dir() / "fixtures";
}

std::filesystem::path bundled_model_path()
{
  return default_model_dir() / "traceability.fm";
}

}  // namespace tracespl
