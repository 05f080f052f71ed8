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

#include "tracespl/model_parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace tracespl {

ParseError::ParseError(std::string const &message, std::size_t line, std::size_t column)
  : ModelError(std::to_string(line) + ":" + std::to_string(column) + ": " + message)
  , line_(line)
  , column_(column)
{}

namespace {

enum class TokenKind
{
  Name,
  LBrace,
  RBrace,
  Implies,
  Iff,
  End
};

struct Token
{
  TokenKind        kind;
  std::string_view text;
  std::size_t      line;
  std::size_t      column;
};

class Lexer
{
public:
  explicit Lexer(std::string_view src)
    : src_(src)
  {}

  Token next()
  {
    skip_blank();
    std::size_t const line = line_;
    std::size_t const col  = col_;
    if (pos_ >= src_.size())
    {
      return {TokenKind::End, {}, line, col};
    }
    char const c = src_[pos_];
    if (c == '{' || c == '}')
    {
      advance(1);
      return {c == '{' ? TokenKind::LBrace : TokenKind::RBrace, src_.substr(pos_ - 1, 1), line,
              col};
    }
    if (src_.substr(pos_, 3) == "<=>")
    {
      advance(3);
      return {TokenKind::Iff, src_.substr(pos_ - 3, 3), line, col};
    }
    if (src_.substr(pos_, 2) == "=>")
    {
      advance(2);
      return {TokenKind::Implies, src_.substr(pos_ - 2, 2), line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0)
    {
      std::size_t const start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) != 0 ||
                                    src_[pos_] == '_'))
      {
        advance(1);
      }
      return {TokenKind::Name, src_.substr(start, pos_ - start), line, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

private:
  void advance(std::size_t n)
  {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_)
    {
      if (src_[pos_] == '\n')
      {
        ++line_;
        col_ = 1;
      }
      else
      {
        ++col_;
      }
    }
  }

  void skip_blank()
  {
    while (pos_ < src_.size())
    {
      char const c = src_[pos_];
      if (c == '#')
      {
        while (pos_ < src_.size() && src_[pos_] != '\n')
        {
          advance(1);
        }
      }
      else if (std::isspace(static_cast<unsigned char>(c)) != 0)
      {
        advance(1);
      }
      else
      {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t      pos_  = 0;
  std::size_t      line_ = 1;
  std::size_t      col_  = 1;
};

class Parser
{
public:
  explicit Parser(std::string_view src)
    : lexer_(src)
  {
    shift();
  }

  FeatureModel parse()
  {
    expect_keyword("model");
    Token const root_name = expect_name();
    FeatureModelBuilder builder{std::string{root_name.text}};
    parse_block(builder, builder.root(), GroupKind::And, root_name);

    struct PendingConstraint
    {
      CrossTreeConstraint c;
      Token               lhs;
      Token               rhs;
    };
    std::vector<PendingConstraint> pending;
    while (tok_.kind != TokenKind::End)
    {
      expect_keyword("constraint");
      Token const lhs = expect_name();
      ConstraintOp op;
      if (tok_.kind == TokenKind::Implies)
      {
        op = ConstraintOp::Implies;
      }
      else if (tok_.kind == TokenKind::Iff)
      {
        op = ConstraintOp::Iff;
      }
      else
      {
        throw error("expected '=>' or '<=>'");
      }
      shift();
      Token const rhs = expect_name();
      pending.push_back({{std::string{lhs.text}, op, std::string{rhs.text}}, lhs, rhs});
    }

    for (auto const &p : pending)
    {
      for (Token const *t : {&p.lhs, &p.rhs})
      {
        if (!builder.contains(t->text))
        {
          throw ParseError("constraint references unknown feature '" + std::string{t->text} + "'",
                           t->line, t->column);
        }
      }
      if (p.c.lhs == p.c.rhs)
      {
        throw ParseError("constraint relates feature '" + p.c.lhs + "' to itself", p.lhs.line,
                         p.lhs.column);
      }
      builder.add_constraint(p.c.lhs, p.c.op, p.c.rhs);
    }
    return builder.build();
  }

private:
  void shift()
  {
    tok_ = lexer_.next();
  }

  ParseError error(std::string const &message) const
  {
    return ParseError(message, tok_.line, tok_.column);
  }

  void expect_keyword(std::string_view keyword)
  {
    if (tok_.kind != TokenKind::Name || tok_.text != keyword)
    {
      throw error("expected '" + std::string{keyword} + "'");
    }
    shift();
  }

  Token expect_name()
  {
    if (tok_.kind != TokenKind::Name)
    {
      throw error("expected a feature name");
    }
    Token t = tok_;
    shift();
    return t;
  }

  void parse_block(FeatureModelBuilder &builder, FeatureId parent, GroupKind group,
                   Token const &owner)
  {
    if (tok_.kind != TokenKind::LBrace)
    {
      throw error("expected '{'");
    }
    shift();
    std::size_t members = 0;
    while (tok_.kind != TokenKind::RBrace)
    {
      if (tok_.kind == TokenKind::End)
      {
        throw ParseError("unterminated block of feature '" + std::string{owner.text} + "'", owner.line,
                         owner.column);
      }
      Token const kind = expect_name();
      ParentLink  link;
      GroupKind   own_group = GroupKind::And;
      if (kind.text == "mandatory")
      {
        link = ParentLink::Mandatory;
      }
      else if (kind.text == "optional")
      {
        link = ParentLink::Optional;
      }
      else if (kind.text == "or" || kind.text == "xor")
      {
        link      = ParentLink::Mandatory;
        own_group = kind.text == "or" ? GroupKind::Or : GroupKind::Xor;
      }
      else if (kind.text == "member")
      {
        link = ParentLink::GroupMember;
      }
      else
      {
        throw ParseError("unknown entry kind '" + std::string{kind.text} + "'", kind.line,
                         kind.column);
      }

      bool const in_group = group != GroupKind::And;
      if (in_group != (link == ParentLink::GroupMember))
      {
        throw ParseError(in_group ? "group '" + std::string{owner.text} +
                                        "' may only contain member entries"
                                  : "member entry outside an or/xor group",
                         kind.line, kind.column);
      }

      Token const name = expect_name();
      if (builder.contains(name.text))
      {
        throw ParseError("duplicate feature name '" + std::string{name.text} + "'", name.line,
                         name.column);
      }
      Concreteness concreteness = Concreteness::Concrete;
      if (tok_.kind == TokenKind::Name && tok_.text == "abstract")
      {
        concreteness = Concreteness::Abstract;
        shift();
      }
      FeatureId const id = builder.add(parent, std::string{name.text}, link, concreteness);
      builder.set_group(id, own_group);
      if (tok_.kind == TokenKind::LBrace)
      {
        parse_block(builder, id, own_group, name);
      }
      else if (own_group != GroupKind::And)
      {
        throw ParseError("group '" + std::string{name.text} + "' needs at least 2 members",
                         name.line, name.column);
      }
      ++members;
    }
    if (group != GroupKind::And && members < 2)
    {
      throw ParseError("group '" + std::string{owner.text} + "' needs at least 2 members",
                       owner.line, owner.column);
    }
    shift();
  }

  Lexer lexer_;
  Token tok_{};
};

void write_entry(std::ostringstream &out, FeatureModel const &model, FeatureId id, int depth)
{
  Feature const &f = model.feature(id);
  std::string    kind;
  switch (f.link)
  {
  case ParentLink::Mandatory:
    kind = f.group == GroupKind::And ? "mandatory" : std::string{to_string(f.group)};
    break;
  case ParentLink::Optional:
    kind = "optional";
    break;
  case ParentLink::GroupMember:
    kind = "member";
    break;
  case ParentLink::Root:
    throw ModelError("non-root feature '" + f.name + "' marked as root");
  }
  if (f.group != GroupKind::And && f.link != ParentLink::Mandatory)
  {
    throw ModelError("group on non-mandatory feature '" + f.name + "' is not expressible");
  }
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << kind << ' ' << f.name;
  if (f.is_abstract())
  {
    out << " abstract";
  }
  if (!f.children.empty())
  {
    out << " {\n";
    for (FeatureId c : f.children)
    {
      write_entry(out, model, c, depth + 1);
    }
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "}";
  }
  out << '\n';
}

}  // namespace

FeatureModel parse_model(std::string_view text)
{
  return Parser{text}.parse();
}

FeatureModel parse_model_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ModelError("cannot open model file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(FeatureModel const &model)
{
  Feature const &root = model.feature(model.root());
  if (root.is_abstract() || root.group != GroupKind::And)
  {
    throw ModelError("root feature '" + root.name + "' is not expressible in the text format");
  }
  std::ostringstream out;
  out << "model " << root.name << " {\n";
  for (FeatureId c : root.children)
  {
    write_entry(out, model, c, 1);
  }
  out << "}\n";
  for (auto const &c : model.constraints())
  {
    out << "constraint " << c.lhs << ' ' << to_string(c.op) << ' ' << c.rhs << '\n';
  }
  return out.str();
}

}  // namespace tracespl
