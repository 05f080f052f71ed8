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
#include "tracespl/model_parser.hpp"

#include "support/random_model.hpp"

#include <doctest.h>

using namespace tracespl;

namespace {

char const *const kSmall = R"(
# comment line
model Shop {
  mandatory Catalog {
    optional Search
  }
  xor Payment abstract {
    member Card
    member Cash
  }
  optional Extras {
    or ExtraKinds abstract {
      member Gift
      member Wrap
    }
  }
}
constraint Gift => Search
constraint Wrap <=> Cash
)";

}  // namespace

TEST_CASE("parse small model: ids are pre-order")
{
  auto const m = parse_model(kSmall);
  CHECK(m.name() == "Shop");
  REQUIRE(m.size() == 10);
  std::vector<std::string> names;
  for (auto const &f : m.features())
  {
    names.push_back(f.name);
  }
  CHECK(names == std::vector<std::string>{"Shop", "Catalog", "Search", "Payment", "Card", "Cash", "Extras",
                                          "ExtraKinds", "Gift", "Wrap"});
  auto const &pay = m.feature(m.id_of("Payment"));
  CHECK(pay.group == GroupKind::Xor);
  CHECK(pay.link == ParentLink::Mandatory);
  CHECK(pay.is_abstract());
  CHECK(m.feature(m.id_of("Card")).link == ParentLink::GroupMember);
  CHECK(m.feature(m.id_of("Search")).link == ParentLink::Optional);
  CHECK(m.feature(m.id_of("ExtraKinds")).group == GroupKind::Or);
  CHECK(m.feature(m.id_of("Extras")).children == std::vector<FeatureId>{m.id_of("ExtraKinds")});
  REQUIRE(m.constraints().size() == 2);
  CHECK(m.constraints()[1].op == ConstraintOp::Iff);
  CHECK(m.concrete_count() == 8);
  CHECK_FALSE(m.find("Nope").has_value());
  CHECK_THROWS_AS(m.id_of("Nope"), ModelError);
}

TEST_CASE("serialize then parse is the identity")
{
  auto const m = parse_model(kSmall);
  CHECK(parse_model(serialize_model(m)) == m);
}

TEST_CASE("round-trip property on random models")
{
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i)
  {
    testing::RandomModelOptions opt;
    opt.max_features = 20;
    auto const m     = testing::random_model(rng, opt);
    auto const text  = serialize_model(m);
    INFO(text);
    auto const back = parse_model(text);
    CHECK(back == m);
    CHECK(serialize_model(back) == text);
  }
}

TEST_CASE("parse errors carry positions")
{
  struct Case
  {
    char const *text;
    char const *needle;
    std::size_t line;
  };
  Case const cases[] = {
      {"model A {\n  optional B\n  optional B\n}\n", "duplicate", 3},
      {"model A {\n  optional B\n}\nconstraint B => C\n", "unknown feature", 4},
      {"model A {\n  optional B\n}\nconstraint B => B\n", "itself", 4},
      {"model A {\n  or G {\n    member X\n  }\n}\n", "at least 2", 2},
      {"model A {\n  or G {\n    optional X\n    member Y\n  }\n}\n", "", 3},
      {"model A {\n  member X\n}\n", "", 2},
      {"model A {\n  optional B {\n", "unterminated", 2},
      {"model A {\n  sometimes B\n}\n", "unknown entry kind", 2},
      {"model A {\n  optional B\n}\nconstraint B -> A\n", "expected", 4},
  };
  for (auto const &c : cases)
  {
    INFO(std::string(c.text));
    try
    {
      parse_model(c.text);
      FAIL("expected a parse error");
    }
    catch (ParseError const &e)
    {
      CHECK(std::string(e.what()).find(c.needle) != std::string::npos);
      CHECK(e.line() == c.line);
    }
  }
}

TEST_CASE("builder renumbers to pre-order and rejects duplicates")
{
  FeatureModelBuilder b("R");
  auto const          a = b.add(b.root(), "A", ParentLink::Optional);
  b.add(b.root(), "B", ParentLink::Mandatory);
  b.add(a, "A1", ParentLink::Optional);
  auto const m = b.build();
  CHECK(m.feature(1).name == "A");
  CHECK(m.feature(2).name == "A1");
  CHECK(m.feature(3).name == "B");
  CHECK(m.feature(2).parent == FeatureId{1});
  CHECK_THROWS_AS(b.add(b.root(), "A", ParentLink::Optional), ModelError);
}

TEST_CASE("serializer refuses shapes the text format cannot express")
{
  FeatureModelBuilder b("R");
  auto const          g = b.add(b.root(), "G", ParentLink::Optional);
  b.set_group(g, GroupKind::Or);
  b.add(g, "X", ParentLink::GroupMember);
  b.add(g, "Y", ParentLink::GroupMember);
  CHECK_THROWS_AS(serialize_model(b.build()), ModelError);

  FeatureModelBuilder r("R");
  r.set_concreteness(r.root(), Concreteness::Abstract);
  CHECK_THROWS_AS(serialize_model(r.build()), ModelError);
}

TEST_CASE("bundled asset: shape and every named feature")
{
  auto const m = parse_model_file(bundled_model_path());
  CHECK(m.name() == "OnChainTraceability");
  CHECK(m.size() == 51);
  for (char const *name :
       {"SmartContracts", "Participants", "Individuals", "Roles", "IndividualTypes", "Human", "Service", "Oracle",
        "StateMachine", "AssetTracking", "StructuredAssets", "TokenizedAssets", "RecordCollections", "Storage",
        "RecordHistory", "StructuredRecords", "HashedRecords", "AssetsData", "StateMachineData",
        "ContractMetadata", "EventsEmission", "Database", "Frontend", "DeploymentView", "BlockchainNetwork",
        "Testnet", "Mainnet", "IndividualsSetup", "CreateIndividualAtSetup", "RolesSetup", "CreateRoleAtSetup",
        "RecordRegistration", "RecordsCollectionSetup", "AssetsSetup", "StateMachineSetup",
        "DeleteIndividualByRole", "AddRoleDynamically"})
  {
    CHECK_MESSAGE(m.find(name).has_value(), name);
  }
  CHECK(m.feature(m.id_of("TraceabilityMethods")).group == GroupKind::Or);
  CHECK(m.feature(m.id_of("BlockchainNetwork")).group == GroupKind::Xor);
  CHECK(m.feature(m.id_of("AssetRepresentation")).group == GroupKind::Xor);

  // Constraint table, verbatim.
  std::vector<std::tuple<std::string, ConstraintOp, std::string>> const expected = {
      {"DeleteIndividualByRole", ConstraintOp::Implies, "Roles"},
      {"IndividualsSetup", ConstraintOp::Iff, "CreateIndividualAtSetup"},
      {"RolesSetup", ConstraintOp::Iff, "CreateRoleAtSetup"},
      {"RecordRegistration", ConstraintOp::Iff, "RecordHistory"},
      {"RecordHistory", ConstraintOp::Iff, "RecordsCollectionSetup"},
      {"AssetTracking", ConstraintOp::Iff, "AssetsData"},
      {"AssetsData", ConstraintOp::Iff, "AssetsSetup"},
      {"StateMachine", ConstraintOp::Iff, "StateMachineData"},
      {"StateMachineData", ConstraintOp::Iff, "StateMachineSetup"},
  };
  REQUIRE(m.constraints().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
  {
    auto const &c = m.constraints()[i];
    CHECK(c.lhs == std::get<0>(expected[i]));
    CHECK(c.op == std::get<1>(expected[i]));
    CHECK(c.rhs == std::get<2>(expected[i]));
  }
  CHECK(parse_model(serialize_model(m)) == m);
}
