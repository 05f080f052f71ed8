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

#include "tracespl/generator.hpp"

#include "tracespl/digest.hpp"

#include <algorithm>
#include <fstream>

namespace tracespl {

namespace fs = std::filesystem;

std::string_view to_string(Network network) noexcept
{
  return network == Network::Testnet ? "Testnet" : "Mainnet";
}

std::string_view to_string(ContractRole role) noexcept
{
  switch (role)
  {
  case ContractRole::Factory:
    return "Factory";
  case ContractRole::Controller:
    return "Controller";
  case ContractRole::Data:
    return "Data";
  }
  return "?";
}

std::string_view to_string(ArtifactKind kind) noexcept
{
  switch (kind)
  {
  case ArtifactKind::ContractSource:
    return "ContractSource";
  case ArtifactKind::FrontendStub:
    return "FrontendStub";
  case ArtifactKind::ContextFile:
    return "ContextFile";
  case ArtifactKind::Readme:
    return "Readme";
  }
  return "?";
}

bool GenerationContext::enabled(std::string const &feature) const
{
  auto it = features.find(feature);
  return it != features.end() && it->second;
}

nlohmann::ordered_json GenerationContext::to_json() const
{
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (auto const &[name, value] : features)
  {
    out[name] = value;
  }
  out["product_name"] = product_name;
  if (network)
  {
    out["network"] = std::string(to_string(*network));
  }
  return out;
}

GenerationContext build_context(Configuration const &config, std::string product_name)
{
  auto const status = config.status();
  if (!status.valid)
  {
    throw GenerationError("configuration is invalid");
  }
  if (!status.complete)
  {
    throw GenerationError("configuration is incomplete (" + std::to_string(status.undecided.size()) +
                          " undecided features)");
  }
  GenerationContext ctx;
  ctx.product_name = std::move(product_name);
  auto const &model = config.model();
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    auto const &f = model.feature(id);
    if (f.concreteness == Concreteness::Concrete)
    {
      ctx.features[f.name] = config.state(id) == FeatureState::Selected;
    }
  }
  bool const testnet = ctx.enabled("Testnet");
  bool const mainnet = ctx.enabled("Mainnet");
  if (testnet && mainnet)
  {
    throw GenerationError("both Testnet and Mainnet are selected");
  }
  if (testnet)
  {
    ctx.network = Network::Testnet;
  }
  else if (mainnet)
  {
    ctx.network = Network::Mainnet;
  }
  return ctx;
}

bool ArchitecturePlan::contains(std::string_view contract) const
{
  return std::any_of(contracts.begin(), contracts.end(), [&](auto const &c) { return c.name == contract; });
}

namespace {

struct PairSpec
{
  char const *base;
  char const *gate;
  char const *hook;
};

constexpr PairSpec kMethodPairs[] = {
    {"StateMachine", "StateMachine", "deployStateMachine"},
    {"Assets", "AssetTracking", "deployAssets"},
    {"Records", "RecordCollections", "deployRecords"},
};

void add_pair(ArchitecturePlan &plan, std::string const &base, std::optional<std::string> gate,
              std::string hook)
{
  plan.contracts.push_back({base + "Data", ContractRole::Data, gate});
  plan.contracts.push_back({base + "Controller", ContractRole::Controller, gate});
  plan.factory_hooks.push_back(std::move(hook));
}

}  // namespace

ArchitecturePlan plan_architecture(GenerationContext const &ctx)
{
  ArchitecturePlan plan;
  plan.contracts.push_back({"Factory", ContractRole::Factory, std::nullopt});
  add_pair(plan, "Participants", std::nullopt, "deployParticipants");
  std::size_t methods = 0;
  for (auto const &p : kMethodPairs)
  {
    if (ctx.enabled(p.gate))
    {
      add_pair(plan, p.base, std::string(p.gate), p.hook);
      ++methods;
    }
  }
  if (methods == 0)
  {
    throw GenerationError("no traceability method selected");
  }
  return plan;
}

std::vector<FrontendPage> const &frontend_pages()
{
  static std::vector<FrontendPage> const pages = {
      {"deployment", "DeploymentView"}, {"participants", std::nullopt},
      {"roles", "Roles"},               {"statemachine", "StateMachine"},
      {"assets", "AssetTracking"},      {"records", "RecordCollections"},
  };
  return pages;
}

std::string Product::manifest_text() const
{
  return manifest.dump(2) + "\n";
}

Artifact const *Product::find(std::string_view path) const
{
  for (auto const &a : artifacts)
  {
    if (a.path == path)
    {
      return &a;
    }
  }
  return nullptr;
}

namespace {

struct Job
{
  std::string                 path;
  ArtifactKind                kind;
  std::string                 source_template;  // relative to the template dir
  std::optional<ContractRole> role;
};

std::string render_checked(fs::path const &template_dir, std::string const &rel, RenderContext const &ctx)
{
  fs::path const path = template_dir / rel;
  if (!fs::exists(path))
  {
    throw GenerationError("template not found: " + path.string());
  }
  TemplateAst ast;
  try
  {
    ast = parse_template(read_text_file(path), DelimiterPair::for_path(path), ParseOptions{true});
  }
  catch (TemplateError const &e)
  {
    throw GenerationError(rel + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  for (auto const &key : referenced_keys(ast))
  {
    if (key == ".")
    {
      continue;
    }
    auto const head = key.substr(0, key.find('.'));
    if (!ctx.contains(head))
    {
      throw GenerationError(rel + ": template key '" + key + "' is not in the generation context");
    }
  }
  return render(ast, ctx);
}

}  // namespace

Product render_product(Configuration const &config, fs::path const &template_dir, std::string product_name)
{
  Product product;
  product.context = build_context(config, std::move(product_name));
  product.plan    = plan_architecture(product.context);

  std::vector<Job> jobs;
  for (auto const &c : product.plan.contracts)
  {
    jobs.push_back({"contracts/" + c.name + ".sol", ArtifactKind::ContractSource,
                    "contracts/" + c.name + ".sol.tpl", c.role});
  }
  for (auto const &page : frontend_pages())
  {
    if (!page.gate || product.context.enabled(*page.gate))
    {
      jobs.push_back({"frontend/" + page.name + ".stub", ArtifactKind::FrontendStub,
                      "frontend/" + page.name + ".stub.tpl", std::nullopt});
    }
  }
  jobs.push_back({"README.md", ArtifactKind::Readme, "README.md.tpl", std::nullopt});

  auto const ordered = product.context.to_json();
  auto const ctx     = RenderContext::parse(ordered.dump());
  for (auto const &job : jobs)
  {
    auto content = render_checked(template_dir, job.source_template, ctx);
    auto digest  = sha256_hex(content);
    product.artifacts.push_back({job.path, job.kind, job.source_template, std::move(content), std::move(digest),
                                 job.role});
  }
  auto context_text = ordered.dump(2) + "\n";
  auto context_hash = sha256_hex(context_text);
  product.artifacts.push_back(
      {"context.json", ArtifactKind::ContextFile, "", std::move(context_text), std::move(context_hash), std::nullopt});

  nlohmann::ordered_json m;
  m["schema"]       = 1;
  m["product_name"] = product.context.product_name;
  m["model"]        = config.model().name();
  auto &arts        = m["artifacts"] = nlohmann::ordered_json::array();
  for (auto const &a : product.artifacts)
  {
    nlohmann::ordered_json e;
    e["path"]     = a.path;
    e["kind"]     = std::string(to_string(a.kind));
    e["template"] = a.source_template.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(a.source_template);
    e["sha256"]   = a.sha256;
    if (a.role)
    {
      e["role"] = std::string(to_string(*a.role));
    }
    arts.push_back(std::move(e));
  }
  auto &plan = m["plan"];
  plan["contracts"] = nlohmann::ordered_json::array();
  for (auto const &c : product.plan.contracts)
  {
    plan["contracts"].push_back({{"name", c.name},
                                 {"role", std::string(to_string(c.role))},
                                 {"gate", c.gate ? nlohmann::ordered_json(*c.gate) : nlohmann::ordered_json()}});
  }
  plan["factory_hooks"] = product.plan.factory_hooks;

  auto &snapshot     = m["configuration"];
  snapshot["selected"] = nlohmann::ordered_json::array();
  auto const &model  = config.model();
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    if (config.state(id) == FeatureState::Selected)
    {
      snapshot["selected"].push_back(model.feature(id).name);
    }
  }
  snapshot["decisions"] = nlohmann::ordered_json::parse(serialize_configuration(config))["decisions"];
  product.manifest      = std::move(m);
  return product;
}

void write_product(Product const &product, fs::path const &out_dir)
{
  std::error_code ec;
  if (fs::exists(out_dir, ec))
  {
    if (!fs::is_directory(out_dir) || !fs::is_empty(out_dir))
    {
      throw GenerationError("output directory is not empty: " + out_dir.string());
    }
  }
  auto write = [&](std::string const &rel, std::string const &content) {
    fs::path const path = out_dir / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
    {
      throw GenerationError("cannot write " + path.string());
    }
  };
  for (auto const &a : product.artifacts)
  {
    write(a.path, a.content);
  }
  write("manifest.json", product.manifest_text());
}

Product generate_product(Configuration const &config, fs::path const &out_dir, fs::path const &template_dir,
                         std::string product_name)
{
  auto product = render_product(config, template_dir, std::move(product_name));
  write_product(product, out_dir);
  return product;
}

}  // namespace tracespl
