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

// Logic-less templates: text, {{key}} variables, {{#key}}...{{/key}}
// sections and {{^key}}...{{/key}} inverted sections. Solidity sources use
// block-comment delimiters (/* #Feature */ ... /* /Feature */) so templates
// stay compilable. No partials, lambdas, set-delimiter tags or escaping.

#include <json.hpp>

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracespl {

enum class DelimiterStyle : std::uint8_t
{
  Plain,
  CommentWrapped
};

struct DelimiterPair
{
  std::string    open;
  std::string    close;
  DelimiterStyle style = DelimiterStyle::Plain;

  /// `{{` / `}}`
  static DelimiterPair plain();
  /// `/*` / `*/`, with one optional space on each side of the payload.
  static DelimiterPair comment_wrapped();

  /// Picks comment_wrapped() for `.sol.tpl` files, plain() otherwise.
  static DelimiterPair for_path(std::filesystem::path const &path);
};

struct TemplateNode
{
  enum class Kind : std::uint8_t
  {
    Text,
    Variable,
    Section,
    InvertedSection
  };

  Kind                      kind = Kind::Text;
  /// Literal bytes for Text, the key otherwise.
  std::string               value;
  std::vector<TemplateNode> children;

  bool operator==(TemplateNode const &) const = default;
};

struct TemplateAst
{
  std::vector<TemplateNode> nodes;

  bool operator==(TemplateAst const &) const = default;
};

/// Values are booleans, strings, numbers, arrays of contexts or objects.
using RenderContext = nlohmann::json;

class TemplateError : public std::runtime_error
{
public:
  TemplateError(std::string const &message, std::size_t line);

  std::size_t line() const noexcept
  {
    return line_;
  }

private:
  std::size_t line_;
};

struct ParseOptions
{
  /// Drop lines holding only a section/inverted/close tag plus whitespace.
  bool trim_standalone = false;
};

/**
 * A tag is `open`, an optional sigil (#, ^, /), a key and `close`. Keys are
 * identifiers joined by dots, or `.` for the current list element. Anything
 * that starts with `open` but does not form a tag (for instance an ordinary
 * Solidity comment) is kept as text.
 */
TemplateAst parse_template(std::string_view source, DelimiterPair const &delimiters,
                           ParseOptions const &options = {});

std::string render(TemplateAst const &ast, RenderContext const &context);

/// Reads, parses with standalone-line trimming, and renders.
std::string render_file(std::filesystem::path const &path, DelimiterPair const &delimiters,
                        RenderContext const &context);

/// Top-level keys (first dotted segment) referenced anywhere in the template.
std::set<std::string> referenced_keys(TemplateAst const &ast);

std::string read_text_file(std::filesystem::path const &path);

}  // namespace tracespl
