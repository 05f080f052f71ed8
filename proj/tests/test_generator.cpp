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

#include "tracespl/digest.hpp"
#include "tracespl/generator.hpp"

#include "support/products.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace tracespl;
using testing::fixture;
using testing::ScratchDir;

namespace {

Configuration finalized(std::string const &name)
{
  auto c = fixture(name);
  c.finalize();
  return c;
}

std::vector<std::string> paths_of(Product const &p)
{
  std::vector<std::string> out;
  for (auto const &a : p.artifacts)
  {
    out.push_back(a.path);
  }
  return out;
}

bool contains(std::vector<std::string> const &v, std::string const &s)
{
  return std::find(v.begin(), v.end(), s) != v.end();
}

void strip_key(std::vector<TemplateNode> &nodes, std::string const &key)
{
  std::erase_if(nodes, [&](TemplateNode const &n) { return n.kind != TemplateNode::Kind::Text &&
                                                          n.kind != TemplateNode::Kind::Variable && n.value == key; });
  for (auto &n : nodes)
  {
    strip_key(n.children, key);
  }
}

}  // namespace

TEST_CASE("build_context for the case-study fixtures")
{
  auto const sp = build_context(finalized("spare_parts"), "Spare");
  CHECK(sp.product_name == "Spare");
  CHECK(sp.enabled("StateMachine"));
  CHECK(sp.enabled("AssetTracking"));
  CHECK(sp.enabled("StructuredAssets"));
  CHECK_FALSE(sp.enabled("TokenizedAssets"));
  CHECK_FALSE(sp.enabled("RecordCollections"));
  CHECK_FALSE(sp.enabled("Roles"));
  CHECK_FALSE(sp.enabled("IndividualTypes"));
  CHECK(sp.enabled("EventsEmission"));
  CHECK(sp.network == Network::Testnet);

  auto const da = build_context(finalized("dairy"));
  for (char const *f : {"StateMachine", "AssetTracking", "RecordCollections", "Roles", "AddRoleDynamically"})
  {
    CHECK_MESSAGE(da.enabled(f), f);
  }
  CHECK_FALSE(da.enabled("EventsEmission"));

  // One entry per concrete feature, none for abstract ones.
  auto const &m = testing::bundled_handle()->model();
  CHECK(sp.features.size() == m.concrete_count());
  CHECK_FALSE(sp.features.contains("SmartContracts"));
  CHECK_FALSE(sp.features.contains("TraceabilityMethods"));

  auto const j = sp.to_json();
  CHECK(j.at("product_name") == "Spare");
  CHECK(j.at("network") == "Testnet");
  CHECK(j.at("Roles") == false);
}

TEST_CASE("build_context on a toy model and on incomplete input")
{
  auto h = make_model_handle(parse_model("model Toy {\n optional A\n optional B {\n  optional C\n }\n}\n"));
  auto c = Configuration::create(h);
  CHECK_THROWS_AS(build_context(c), GenerationError);
  c.finalize();
  auto const ctx = build_context(c);
  CHECK(ctx.features == std::map<std::string, bool>{{"Toy", true}, {"A", false}, {"B", false}, {"C", false}});
  CHECK_FALSE(ctx.network.has_value());
}

TEST_CASE("architecture plans")
{
  auto const sp = plan_architecture(build_context(finalized("spare_parts")));
  CHECK(sp.contracts.size() == 7);
  CHECK(sp.pair_count() == 3);
  for (char const *n : {"Factory", "ParticipantsData", "ParticipantsController", "StateMachineData",
                        "StateMachineController", "AssetsData", "AssetsController"})
  {
    CHECK_MESSAGE(sp.contains(n), n);
  }
  CHECK_FALSE(sp.contains("RecordsController"));
  CHECK(sp.contracts.front().role == ContractRole::Factory);
  CHECK_FALSE(sp.contracts.front().gate.has_value());

  auto const da = plan_architecture(build_context(finalized("dairy")));
  CHECK(da.contracts.size() == 9);
  CHECK(da.factory_hooks ==
        std::vector<std::string>{"deployParticipants", "deployStateMachine", "deployAssets", "deployRecords"});

  GenerationContext only_records;
  only_records.features = {{"RecordCollections", true}, {"StateMachine", false}, {"AssetTracking", false}};
  CHECK(plan_architecture(only_records).contracts.size() == 5);

  GenerationContext none;
  none.features = {{"RecordCollections", false}};
  CHECK_THROWS_AS(plan_architecture(none), GenerationError);
}

TEST_CASE("spare-parts and dairy products are gated correctly")
{
  auto const tdir = default_template_dir();
  auto const sp   = render_product(finalized("spare_parts"), tdir);
  auto const spp  = paths_of(sp);
  for (char const *p : {"contracts/Factory.sol", "contracts/ParticipantsData.sol",
                        "contracts/ParticipantsController.sol", "contracts/StateMachineData.sol",
                        "contracts/StateMachineController.sol", "contracts/AssetsData.sol",
                        "contracts/AssetsController.sol", "frontend/deployment.stub", "frontend/participants.stub",
                        "README.md", "context.json"})
  {
    CHECK_MESSAGE(contains(spp, p), p);
  }
  CHECK_FALSE(contains(spp, "frontend/roles.stub"));
  CHECK_FALSE(contains(spp, "contracts/RecordsController.sol"));
  CHECK(sp.find("contracts/ParticipantsController.sol")->content.find("addRoleToP") == std::string::npos);

  auto const da  = render_product(finalized("dairy"), tdir);
  auto const dap = paths_of(da);
  for (char const *p : {"contracts/RecordsData.sol", "contracts/RecordsController.sol", "frontend/roles.stub",
                        "frontend/records.stub"})
  {
    CHECK_MESSAGE(contains(dap, p), p);
  }
  CHECK(da.find("contracts/ParticipantsController.sol")->content.find("function addRoleToP") != std::string::npos);
  for (auto const &a : da.artifacts)
  {
    CHECK_FALSE(has_residual_tags(a.content));
    CHECK(a.sha256 == sha256_hex(a.content));
  }
}

TEST_CASE("manifest layout")
{
  auto const p = render_product(finalized("dairy"), default_template_dir(), "Dairy");
  auto const &m = p.manifest;
  CHECK(m.at("schema") == 1);
  CHECK(m.at("model") == "OnChainTraceability");
  CHECK(m.at("product_name") == "Dairy");
  CHECK(m.at("artifacts").size() == p.artifacts.size());
  std::set<std::string> paths;
  for (auto const &a : m.at("artifacts"))
  {
    CHECK(paths.insert(a.at("path").get<std::string>()).second);
    if (a.at("kind") == "ContractSource")
    {
      auto const stem = std::filesystem::path(a.at("path").get<std::string>()).stem().string();
      CHECK(p.plan.contains(stem));
    }
  }
  CHECK(m.at("configuration").at("selected").size() > 10);
  CHECK(m.at("configuration").at("decisions").is_array());
}

TEST_CASE("generation is deterministic and writes what the manifest lists")
{
  auto const c = finalized("spare_parts");
  ScratchDir a, b;
  auto const pa = generate_product(c, a / "out", default_template_dir());
  auto const pb = generate_product(c, b / "out", default_template_dir());
  CHECK(pa.manifest_text() == pb.manifest_text());
  for (auto const &art : pa.artifacts)
  {
    auto const x = read_text_file(a / ("out/" + art.path));
    auto const y = read_text_file(b / ("out/" + art.path));
    CHECK(x == y);
    CHECK(x == art.content);
  }
  CHECK(read_text_file(a / "out/manifest.json") == pa.manifest_text());
}

TEST_CASE("verification: clean products, tampering and wrong placement")
{
  ScratchDir dir;
  auto const out = dir / "p";
  generate_product(finalized("dairy"), out, default_template_dir());
  auto clean = verify_product_dir(out, default_template_dir());
  CHECK(clean.clean());
  CHECK(clean.checks > 50);

  {
    std::ofstream f(out / "contracts/Factory.sol", std::ios::app);
    f << "// tampered\n";
  }
  auto tampered = verify_product_dir(out, default_template_dir());
  REQUIRE_FALSE(tampered.clean());
  CHECK(tampered.findings.front().find("digest mismatch") != std::string::npos);

  std::filesystem::remove(out / "frontend/roles.stub");
  auto missing = verify_product_dir(out, default_template_dir());
  CHECK(std::any_of(missing.findings.begin(), missing.findings.end(),
                    [](auto const &f) { return f.find("roles.stub") != std::string::npos; }));

  CHECK_FALSE(verify_product_dir(dir / "nowhere", default_template_dir()).clean());
}

TEST_CASE("verification catches structural defects")
{
  ScratchDir dir;
  auto const out = dir / "p";
  auto       p   = render_product(finalized("spare_parts"), default_template_dir());
  auto      &src = const_cast<Artifact &>(*p.find("contracts/AssetsData.sol"));
  src.content += "contract AssetsData { function f() { ParticipantsController x; }\n";
  src.sha256 = sha256_hex(src.content);
  p.manifest["artifacts"][5]["sha256"] = src.sha256;
  REQUIRE(p.manifest["artifacts"][5]["path"] == "contracts/AssetsData.sol");
  write_product(p, out);
  auto const report = verify_product_dir(out, default_template_dir());
  auto has = [&](char const *needle) {
    return std::any_of(report.findings.begin(), report.findings.end(),
                       [&](auto const &f) { return f.find(needle) != std::string::npos; });
  };
  CHECK(has("unclosed"));
  CHECK(has("declared 2 times"));
  CHECK(has("references ParticipantsController"));
}

TEST_CASE("generation refuses bad inputs")
{
  ScratchDir dir;
  CHECK_THROWS_AS(generate_product(fixture("spare_parts"), dir / "x", default_template_dir()), GenerationError);

  {
    std::ofstream(dir / "occupied.txt") << "x";
  }
  CHECK_THROWS_AS(generate_product(finalized("spare_parts"), dir.path(), default_template_dir()), GenerationError);

  // A template referencing an unknown key is rejected at generation time.
  auto const copy = dir / "templates";
  std::filesystem::copy(default_template_dir(), copy, std::filesystem::copy_options::recursive);
  {
    std::ofstream(copy / "frontend/participants.stub.tpl", std::ios::app) << "{{NotAFeature}}\n";
  }
  CHECK_THROWS_WITH_AS(render_product(finalized("spare_parts"), copy), doctest::Contains("NotAFeature"),
                       GenerationError);

  // Unclosed section in a template never reaches verification.
  {
    std::ofstream(copy / "frontend/participants.stub.tpl") << "{{#Roles}}\nx\n";
  }
  CHECK_THROWS_AS(render_product(finalized("spare_parts"), copy), GenerationError);
}

TEST_CASE("monotone gating: one-feature flips change only gated artifacts and sections")
{
  auto const  h    = testing::bundled_handle();
  auto const &m    = h->model();
  auto const  tdir = default_template_dir();
  std::mt19937_64 rng(77);
  int             compared = 0;
  for (int round = 0; round < 8; ++round)
  {
    auto base = Configuration::create(h);
    for (int k = 0; k < 6; ++k)
    {
      auto const f = static_cast<FeatureId>(rng() % m.size());
      if (base.state(f) == FeatureState::Undecided)
      {
        base.decide(m.feature(f).name, (rng() & 1U) ? FeatureState::Selected : FeatureState::Deselected);
      }
    }
    base.finalize();

    for (FeatureId f = 1; f < m.size(); ++f)
    {
      if (m.feature(f).is_abstract())
      {
        continue;
      }
      std::vector<std::pair<std::string, FeatureState>> flipped;
      for (FeatureId i = 1; i < m.size(); ++i)
      {
        auto s = base.state(i);
        if (i == f)
        {
          s = s == FeatureState::Selected ? FeatureState::Deselected : FeatureState::Selected;
        }
        flipped.emplace_back(m.feature(i).name, s);
      }
      auto other = Configuration::from_decisions(h, flipped);
      if (!other.editable() || !other.status().valid)
      {
        continue;
      }
      Product a, b;
      try
      {
        a = render_product(base, tdir);
        b = render_product(other, tdir);
      }
      catch (GenerationError const &)
      {
        continue;  // no traceability method left
      }
      ++compared;
      std::string const name = m.feature(f).name;
      INFO("flipped " << name);

      std::set<std::string> pa, pb;
      for (auto const &x : a.artifacts)
      {
        pa.insert(x.path);
      }
      for (auto const &x : b.artifacts)
      {
        pb.insert(x.path);
      }
      std::map<std::string, std::optional<std::string>> gate_of;
      for (auto const &c : a.plan.contracts)
      {
        gate_of["contracts/" + c.name + ".sol"] = c.gate;
      }
      for (auto const &c : b.plan.contracts)
      {
        gate_of["contracts/" + c.name + ".sol"] = c.gate;
      }
      for (auto const &page : frontend_pages())
      {
        gate_of["frontend/" + page.name + ".stub"] = page.gate;
      }
      std::vector<std::string> sym;
      std::set_symmetric_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(sym));
      for (auto const &p : sym)
      {
        CHECK_MESSAGE(gate_of[p] == name, p);
      }

      for (auto const &x : a.artifacts)
      {
        auto const *y = b.find(x.path);
        if (y == nullptr || x.content == y->content)
        {
          continue;
        }
        if (x.kind == ArtifactKind::ContextFile)
        {
          auto ja = nlohmann::json::parse(x.content);
          auto jb = nlohmann::json::parse(y->content);
          ja.erase(name);
          jb.erase(name);
          CHECK(ja == jb);
          continue;
        }
        auto const path = tdir / x.source_template;
        auto       ast  = parse_template(read_text_file(path), DelimiterPair::for_path(path), ParseOptions{true});
        strip_key(ast.nodes, name);
        auto const ctx_a = nlohmann::json::parse(a.context.to_json().dump());
        auto const ctx_b = nlohmann::json::parse(b.context.to_json().dump());
        CHECK_MESSAGE(render(ast, ctx_a) == render(ast, ctx_b), x.path);
      }
    }
  }
  CHECK(compared >= 50);
}
