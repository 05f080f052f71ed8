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

#include "tracespl/template_engine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tracespl {

DelimiterPair DelimiterPair::plain()
{
  return {"{{", "}}", DelimiterStyle::Plain};
}

DelimiterPair DelimiterPair::comment_wrapped()
{
  return {"/*", "*/", DelimiterStyle::CommentWrapped};
}

DelimiterPair DelimiterPair::for_path(std::filesystem::path const &path)
{
  std::string const name = path.filename().string();
  std::string_view const suffix = ".sol.tpl";
  if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
  {
    return comment_wrapped();
  }
  return plain();
}

TemplateError::TemplateError(std::string const &message, std::size_t line)
  : std::runtime_error("line " + std::to_string(line) + ": " + message)
  , line_(line)
{}

std::string read_text_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

struct Tag
{
  char        sigil;  // '#', '^', '/', or 0 for a variable
  std::string key;
  std::size_t begin;  // span in the source, extended by standalone trimming
  std::size_t end;
  std::size_t line;
};

bool is_ident_start(char c)
{
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool valid_key(std::string_view key)
{
  if (key == ".")
  {
    return true;
  }
  bool segment_start = true;
  for (char c : key)
  {
    if (segment_start)
    {
      if (!is_ident_start(c))
      {
        return false;
      }
      segment_start = false;
    }
    else if (c == '.')
    {
      segment_start = true;
    }
    else if (!is_ident_char(c))
    {
      return false;
    }
  }
  return !key.empty() && !segment_start;
}

// Returns the parsed tag payload or nothing if `raw` is not a tag.
bool parse_payload(std::string_view raw, DelimiterStyle style, char &sigil, std::string &key)
{
  if (style == DelimiterStyle::CommentWrapped)
  {
    if (!raw.empty() && raw.front() == ' ')
    {
      raw.remove_prefix(1);
    }
    if (!raw.empty() && raw.back() == ' ')
    {
      raw.remove_suffix(1);
    }
  }
  else
  {
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front())) != 0)
    {
      raw.remove_prefix(1);
    }
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back())) != 0)
    {
      raw.remove_suffix(1);
    }
  }
  sigil = 0;
  if (!raw.empty() && (raw.front() == '#' || raw.front() == '^' || raw.front() == '/'))
  {
    sigil = raw.front();
    raw.remove_prefix(1);
  }
  if (!valid_key(raw))
  {
    return false;
  }
  key = std::string{raw};
  return true;
}

std::vector<Tag> scan_tags(std::string_view src, DelimiterPair const &d)
{
  std::vector<Tag> tags;
  std::size_t      pos  = 0;
  std::size_t      line = 1;
  std::size_t      line_counted_to = 0;
  while (true)
  {
    std::size_t const open = src.find(d.open, pos);
    if (open == std::string_view::npos)
    {
      break;
    }
    std::size_t const payload = open + d.open.size();
    std::size_t const close   = src.find(d.close, payload);
    if (close == std::string_view::npos)
    {
      break;
    }
    char        sigil = 0;
    std::string key;
    if (parse_payload(src.substr(payload, close - payload), d.style, sigil, key))
    {
      line += static_cast<std::size_t>(
          std::count(src.begin() + static_cast<std::ptrdiff_t>(line_counted_to),
                     src.begin() + static_cast<std::ptrdiff_t>(open), '\n'));
      line_counted_to = open;
      tags.push_back({sigil, std::move(key), open, close + d.close.size(), line});
      pos = close + d.close.size();
    }
    else
    {
      pos = open + d.open.size();
    }
  }
  return tags;
}

bool blank(std::string_view s)
{
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

void trim_standalone(std::string_view src, std::vector<Tag> &tags)
{
  for (std::size_t i = 0; i < tags.size(); ++i)
  {
    Tag &t = tags[i];
    if (t.sigil == 0)
    {
      continue;
    }
    std::size_t const nl_before  = src.rfind('\n', t.begin == 0 ? 0 : t.begin - 1);
    std::size_t const line_begin = (t.begin == 0 || nl_before == std::string_view::npos) ? 0 : nl_before + 1;
    std::size_t const nl_after   = src.find('\n', t.end);
    std::size_t const line_end   = nl_after == std::string_view::npos ? src.size() : nl_after + 1;
    std::size_t const rest_end   = nl_after == std::string_view::npos ? src.size() : nl_after;
    if (!blank(src.substr(line_begin, t.begin - line_begin)) ||
        !blank(src.substr(t.end, rest_end - t.end)))
    {
      continue;
    }
    bool const prev_on_line = i > 0 && tags[i - 1].end > line_begin;
    bool const next_on_line = i + 1 < tags.size() && tags[i + 1].begin < line_end;
    if (prev_on_line || next_on_line)
    {
      continue;
    }
    t.begin = line_begin;
    t.end   = line_end;
  }
}

}  // namespace

TemplateAst parse_template(std::string_view source, DelimiterPair const &delimiters,
                           ParseOptions const &options)
{
  if (delimiters.open.empty() || delimiters.close.empty() || delimiters.open == delimiters.close)
  {
    throw std::invalid_argument("delimiters must be non-empty and distinct");
  }
  std::vector<Tag> tags = scan_tags(source, delimiters);
  if (options.trim_standalone)
  {
    trim_standalone(source, tags);
  }

  struct Frame
  {
    TemplateNode node;
    std::size_t  line;
  };
  std::vector<Frame> stack;
  stack.push_back({TemplateNode{}, 0});

  auto emit_text = [&](std::size_t from, std::size_t to) {
    if (to > from)
    {
      auto &kids = stack.back().node.children;
      if (!kids.empty() && kids.back().kind == TemplateNode::Kind::Text)
      {
        kids.back().value.append(source.substr(from, to - from));
      }
      else
      {
        kids.push_back({TemplateNode::Kind::Text, std::string{source.substr(from, to - from)}, {}});
      }
    }
  };

  std::size_t cursor = 0;
  for (Tag const &t : tags)
  {
    emit_text(cursor, t.begin);
    cursor = t.end;
    switch (t.sigil)
    {
    case 0:
      stack.back().node.children.push_back({TemplateNode::Kind::Variable, t.key, {}});
      break;
    case '#':
    case '^':
      stack.push_back({TemplateNode{t.sigil == '#' ? TemplateNode::Kind::Section
                                                   : TemplateNode::Kind::InvertedSection,
                                    t.key,
                                    {}},
                       t.line});
      break;
    case '/': {
      if (stack.size() == 1)
      {
        throw TemplateError("closing tag '" + t.key + "' without an open section", t.line);
      }
      if (stack.back().node.value != t.key)
      {
        throw TemplateError("closing tag '" + t.key + "' does not match open section '" +
                                stack.back().node.value + "' from line " +
                                std::to_string(stack.back().line),
                            t.line);
      }
      TemplateNode done = std::move(stack.back().node);
      stack.pop_back();
      stack.back().node.children.push_back(std::move(done));
      break;
    }
    default:
      break;
    }
  }
  emit_text(cursor, source.size());
  if (stack.size() > 1)
  {
    throw TemplateError("unclosed section '" + stack.back().node.value + "'", stack.back().line);
  }
  return TemplateAst{std::move(stack.front().node.children)};
}

namespace {

using Scopes = std::vector<nlohmann::json const *>;

nlohmann::json const *lookup(Scopes const &scopes, std::string_view key)
{
  if (key == ".")
  {
    return scopes.back();
  }
  std::size_t const dot   = key.find('.');
  std::string const first{key.substr(0, dot)};
  nlohmann::json const *value = nullptr;
  for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
  {
    if ((*it)->is_object())
    {
      auto found = (*it)->find(first);
      if (found != (*it)->end())
      {
        value = &*found;
        break;
      }
    }
  }
  std::size_t pos = dot;
  while (value != nullptr && pos != std::string_view::npos)
  {
    std::size_t const next = key.find('.', pos + 1);
    std::string const part{key.substr(pos + 1, next == std::string_view::npos ? next : next - pos - 1)};
    if (!value->is_object())
    {
      return nullptr;
    }
    auto found = value->find(part);
    value      = found == value->end() ? nullptr : &*found;
    pos        = next;
  }
  return value;
}

bool truthy(nlohmann::json const *v)
{
  if (v == nullptr || v->is_null())
  {
    return false;
  }
  if (v->is_boolean())
  {
    return v->get<bool>();
  }
  if (v->is_array() || v->is_string())
  {
    return !v->empty() && !(v->is_string() && v->get_ref<std::string const &>().empty());
  }
  if (v->is_number())
  {
    return v->get<double>() != 0.0;
  }
  return true;
}

void append_value(std::string &out, nlohmann::json const *v)
{
  if (v == nullptr || v->is_null())
  {
    return;
  }
  if (v->is_string())
  {
    out += v->get_ref<std::string const &>();
  }
  else if (v->is_boolean())
  {
    out += v->get<bool>() ? "true" : "false";
  }
  else if (v->is_number_integer())
  {
    out += v->is_number_unsigned() ? std::to_string(v->get<std::uint64_t>())
                                   : std::to_string(v->get<std::int64_t>());
  }
  else if (v->is_number_float())
  {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v->get<double>());
    out.append(buf, res.ptr);
  }
  else
  {
    out += v->dump();
  }
}

void render_nodes(std::vector<TemplateNode> const &nodes, Scopes &scopes, std::string &out)
{
  for (TemplateNode const &n : nodes)
  {
    switch (n.kind)
    {
    case TemplateNode::Kind::Text:
      out += n.value;
      break;
    case TemplateNode::Kind::Variable:
      append_value(out, lookup(scopes, n.value));
      break;
    case TemplateNode::Kind::Section: {
      nlohmann::json const *v = lookup(scopes, n.value);
      if (!truthy(v))
      {
        break;
      }
      if (v->is_array())
      {
        for (auto const &element : *v)
        {
          scopes.push_back(&element);
          render_nodes(n.children, scopes, out);
          scopes.pop_back();
        }
      }
      else if (v->is_object())
      {
        scopes.push_back(v);
        render_nodes(n.children, scopes, out);
        scopes.pop_back();
      }
      else
      {
        render_nodes(n.children, scopes, out);
      }
      break;
    }
    case TemplateNode::Kind::InvertedSection:
      if (!truthy(lookup(scopes, n.value)))
      {
        render_nodes(n.children, scopes, out);
      }
      break;
    }
  }
}

void collect_keys(std::vector<TemplateNode> const &nodes, std::set<std::string> &keys)
{
  for (TemplateNode const &n : nodes)
  {
    if (n.kind != TemplateNode::Kind::Text && n.value != ".")
    {
      keys.insert(n.value.substr(0, n.value.find('.')));
    }
    collect_keys(n.children, keys);
  }
}

}  // namespace

std::string render(TemplateAst const &ast, RenderContext const &context)
{
  std::string out;
  Scopes      scopes{&context};
  render_nodes(ast.nodes, scopes, out);
  return out;
}

std::string render_file(std::filesystem::path const &path, DelimiterPair const &delimiters,
                        RenderContext const &context)
{
  std::string const source = read_text_file(path);
  return render(parse_template(source, delimiters, ParseOptions{.trim_standalone = true}), context);
}

std::set<std::string> referenced_keys(TemplateAst const &ast)
{
  std::set<std::string> keys;
  collect_keys(ast.nodes, keys);
  return keys;
}

}  // namespace tracespl
