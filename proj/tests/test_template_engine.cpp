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
#include "tracespl/template_engine.hpp"

#include "support/template_oracle.hpp"

#include <doctest.h>

using namespace tracespl;
using nlohmann::json;

namespace {

std::string plain(std::string_view src, json const &ctx, bool trim = false)
{
  return render(parse_template(src, DelimiterPair::plain(), ParseOptions{trim}), ctx);
}

std::string wrapped(std::string_view src, json const &ctx, bool trim = true)
{
  return render(parse_template(src, DelimiterPair::comment_wrapped(), ParseOptions{trim}), ctx);
}

}  // namespace

TEST_CASE("variables")
{
  json const ctx = {{"name", "Dairy"}, {"on", true}, {"off", false}, {"n", 42}, {"neg", -3}, {"x", 1.5},
                    {"nil", nullptr}};
  CHECK(plain("Hello {{name}}!", ctx) == "Hello Dairy!");
  CHECK(plain("{{ name }}", ctx) == "Dairy");
  CHECK(plain("{{on}}/{{off}}", ctx) == "true/false");
  CHECK(plain("{{n}} {{neg}} {{x}}", ctx) == "42 -3 1.5");
  CHECK(plain("[{{missing}}]", ctx) == "[]");
  CHECK(plain("[{{nil}}]", ctx) == "[]");
  CHECK(plain("no tags at all\n", ctx) == "no tags at all\n");
  CHECK(plain("", ctx).empty());
}

TEST_CASE("sections and truthiness")
{
  json const ctx = {{"t", true},      {"f", false},  {"s", "x"},      {"e", ""},
                    {"zero", 0},      {"one", 1},    {"obj", {{"k", "v"}}},
                    {"empty", json::array()}};
  CHECK(plain("{{#t}}A{{/t}}", ctx) == "A");
  CHECK(plain("{{#f}}A{{/f}}", ctx).empty());
  CHECK(plain("{{#missing}}A{{/missing}}", ctx).empty());
  CHECK(plain("{{#s}}A{{/s}}", ctx) == "A");
  CHECK(plain("{{#e}}A{{/e}}", ctx).empty());
  CHECK(plain("{{#zero}}A{{/zero}}", ctx).empty());
  CHECK(plain("{{#one}}A{{/one}}", ctx) == "A");
  CHECK(plain("{{#obj}}{{k}}{{/obj}}", ctx) == "v");
  CHECK(plain("{{#empty}}A{{/empty}}", ctx).empty());
  CHECK(plain("{{#t}}{{#f}}B{{/f}}C{{/t}}", ctx) == "C");
}

TEST_CASE("inverted sections")
{
  json const ctx = {{"t", true}, {"f", false}, {"empty", json::array()}, {"list", {1}}};
  CHECK(plain("{{^t}}A{{/t}}", ctx).empty());
  CHECK(plain("{{^f}}A{{/f}}", ctx) == "A");
  CHECK(plain("{{^missing}}A{{/missing}}", ctx) == "A");
  CHECK(plain("{{^empty}}A{{/empty}}", ctx) == "A");
  CHECK(plain("{{^list}}A{{/list}}", ctx).empty());
}

TEST_CASE("list iteration with local scope")
{
  json const ctx = {{"title", "T"},
                    {"items", {{{"name", "a"}}, {{"name", "b"}, {"title", "inner"}}}},
                    {"nums", {1, 2, 3}}};
  CHECK(plain("{{#items}}<{{name}}:{{title}}>{{/items}}", ctx) == "<a:T><b:inner>");
  CHECK(plain("{{#nums}}{{.}},{{/nums}}", ctx) == "1,2,3,");
}

TEST_CASE("dotted paths")
{
  json const ctx = {{"a", {{"b", {{"c", "deep"}}}}}, {"flag", {{"on", true}}}, {"outer", "O"}};
  CHECK(plain("{{a.b.c}}", ctx) == "deep");
  CHECK(plain("{{a.x.c}}", ctx).empty());
  CHECK(plain("{{#flag.on}}yes{{/flag.on}}", ctx) == "yes");
  CHECK(plain("{{#a}}{{b.c}} {{outer}}{{/a}}", ctx) == "deep O");
}

TEST_CASE("standalone tag lines are removed when trimming")
{
  std::string const src = "first\n  {{#t}}  \nmiddle\n{{/t}}\n{{^t}}\nnever\n{{/t}}\nlast\n";
  CHECK(plain(src, {{"t", true}}, true) == "first\nmiddle\nlast\n");
  CHECK(plain(src, {{"t", false}}, true) == "first\nnever\nlast\n");
  // Without trimming the tag lines leave their whitespace behind.
  CHECK(plain(src, {{"t", false}}, false) == "first\n  \n\nnever\n\nlast\n");
  // A variable on its own line is content, not a standalone tag.
  CHECK(plain("a\n{{v}}\nb\n", {{"v", "x"}}, true) == "a\nx\nb\n");
  // Tags sharing a line with text are never trimmed.
  CHECK(plain("a {{#t}}b{{/t}}\n", {{"t", false}}, true) == "a \n");
  // Standalone on the last line without a newline.
  CHECK(plain("a\n{{#t}}\nb\n{{/t}}", {{"t", true}}, true) == "a\nb\n");
}

TEST_CASE("comment-wrapped delimiters")
{
  json const ctx = {{"name", "P"}, {"On", true}, {"Off", false}};
  CHECK(wrapped("x /* name */ y", ctx) == "x P y");
  CHECK(wrapped("x /*name*/ y", ctx) == "x P y");
  CHECK(wrapped("/* #On */A/* /On */", ctx) == "A");
  CHECK(wrapped("/* ^Off */B/* /Off */", ctx) == "B");
  // Ordinary Solidity comments are not tags.
  CHECK(wrapped("/* plain comment, not a tag */", ctx) == "/* plain comment, not a tag */");
  CHECK(wrapped("/** @dev docs */", ctx) == "/** @dev docs */");
  CHECK(wrapped("uint a; /* a b */", ctx) == "uint a; /* a b */");
  CHECK(DelimiterPair::for_path("x/Factory.sol.tpl").style == DelimiterStyle::CommentWrapped);
  CHECK(DelimiterPair::for_path("x/page.stub.tpl").style == DelimiterStyle::Plain);
}

TEST_CASE("verbatim code sample: gated role function")
{
  std::string const listing = "/* #AddRoleDynamically */\n"
                              "function addRoleToP(address _p, string _rName) public {\n"
                              "   [...]\n"
                              "}\n"
                              "/* /AddRoleDynamically */\n";
  std::string const body = "function addRoleToP(address _p, string _rName) public {\n"
                           "   [...]\n"
                           "}\n";
  CHECK(wrapped(listing, {{"AddRoleDynamically", true}}) == body);
  CHECK(wrapped(listing, {{"AddRoleDynamically", false}}).empty());
  CHECK(wrapped(listing, json::object()).empty());
  auto const ast = parse_template(listing, DelimiterPair::comment_wrapped(), ParseOptions{true});
  CHECK(referenced_keys(ast) == std::set<std::string>{"AddRoleDynamically"});
}

TEST_CASE("parse errors")
{
  try
  {
    parse_template("a\n{{#x}}\nb\n", DelimiterPair::plain());
    FAIL("expected error");
  }
  catch (TemplateError const &e)
  {
    CHECK(std::string(e.what()).find("x") != std::string::npos);
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_template("{{/x}}", DelimiterPair::plain()), TemplateError);
  CHECK_THROWS_AS(parse_template("{{#x}}{{/y}}", DelimiterPair::plain()), TemplateError);
  CHECK_THROWS_AS(parse_template("/* #x */ /* /y */", DelimiterPair::comment_wrapped()), TemplateError);
}

TEST_CASE("ast shape")
{
  auto const ast = parse_template("a{{v}}{{#s}}b{{^i}}c{{/i}}{{/s}}", DelimiterPair::plain());
  REQUIRE(ast.nodes.size() == 3);
  CHECK(ast.nodes[0].kind == TemplateNode::Kind::Text);
  CHECK(ast.nodes[1].kind == TemplateNode::Kind::Variable);
  CHECK(ast.nodes[2].kind == TemplateNode::Kind::Section);
  REQUIRE(ast.nodes[2].children.size() == 2);
  CHECK(ast.nodes[2].children[1].kind == TemplateNode::Kind::InvertedSection);
  CHECK(referenced_keys(ast) == std::set<std::string>{"i", "s", "v"});
}

TEST_CASE("absent boolean keys render like false (participants controller)")
{
  auto const path = default_template_dir() / "contracts" / "ParticipantsController.sol.tpl";
  json       ctx  = {{"product_name", "P"},       {"network", "Testnet"},        {"CreateIndividual", true},
                      {"CreateIndividualAtSetup", true}, {"EventsEmission", true}, {"IndividualTypes", false},
                      {"DeleteIndividual", false}, {"DeleteIndividualByAdmin", false},
                      {"DeleteIndividualByRole", false}, {"CreateIndividualDynamically", false},
                      {"Roles", false},            {"CreateRole", false},         {"CreateRoleAtSetup", false},
                      {"CreateRoleDynamically", false}, {"AddRole", false},       {"AddRoleAtSetup", false},
                      {"AddRoleDynamically", false}, {"RemoveRole", false}};
  json stripped = ctx;
  for (char const *k : {"Roles", "CreateRole", "CreateRoleAtSetup", "CreateRoleDynamically", "AddRole",
                        "AddRoleAtSetup", "AddRoleDynamically", "RemoveRole", "DeleteIndividualByRole"})
  {
    stripped.erase(k);
  }
  auto const a = render_file(path, DelimiterPair::for_path(path), ctx);
  auto const b = render_file(path, DelimiterPair::for_path(path), stripped);
  CHECK(a == b);
  CHECK(a.find("addRoleToP") == std::string::npos);
}

TEST_CASE("subtractive soundness on random template/context pairs")
{
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 100; ++i)
  {
    bool const  trim   = (i % 2) == 0;
    bool const  comment = (i % 3) == 0;
    auto const  tree   = testing::random_template(rng, 4);
    auto const  ctx    = testing::random_bool_context(rng);
    auto const  delims = comment ? DelimiterPair::comment_wrapped() : DelimiterPair::plain();
    auto const  source = testing::emit_template(tree, delims, trim);
    auto const  expect = testing::oracle_render(tree, ctx, trim);
    INFO(source);
    auto const got = render(parse_template(source, delims, ParseOptions{trim}), ctx);
    CHECK(got == expect);
    CHECK(testing::is_subsequence_of_fragments(got, tree));
  }
}
