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

#include "tracespl/feature_model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace tracespl {

/**
 * Textual feature-model format:
 *
 *   model      := "model" NAME block constraint*
 *   block      := "{" entry* "}"
 *   entry      := kind NAME ["abstract"] [block]
 *   kind       := "mandatory" | "optional" | "or" | "xor" | "member"
 *   constraint := "constraint" NAME ("=>" | "<=>") NAME
 *
 * `or`/`xor` declare a mandatory child carrying an Or/Xor decomposition whose
 * block lists only `member` entries. An optional group is written as an
 * optional feature with a mandatory abstract group child. `#` starts a
 * comment running to the end of the line.
 */
class ParseError : public ModelError
{
public:
  ParseError(std::string const &message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept
  {
    return line_;
  }
  std::size_t column() const noexcept
  {
    return column_;
  }

private:
  std::size_t line_;
  std::size_t column_;
};

FeatureModel parse_model(std::string_view text);
FeatureModel parse_model_file(std::filesystem::path const &path);

/// Inverse of parse_model. Throws ModelError for models the grammar cannot
/// express (abstract root, groups on non-mandatory features).
std::string serialize_model(FeatureModel const &model);

}  // namespace tracespl
