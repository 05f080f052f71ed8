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

#include "tracespl/configurator.hpp"
#include "tracespl/template_engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracespl {

class GenerationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Network : std::uint8_t
{
  Testnet,
  Mainnet
};

std::string_view to_string(Network network) noexcept;

/// Feature choices handed to the templates: one boolean per concrete feature.
struct GenerationContext
{
  std::map<std::string, bool> features;
  std::string                 product_name;
  /// Absent for models without a BlockchainNetwork choice.
  std::optional<Network>      network;

  bool enabled(std::string const &feature) const;

  /// Flat JSON object: feature booleans plus product_name and network.
  nlohmann::ordered_json to_json() const;

  bool operator==(GenerationContext const &) const = default;
};

GenerationContext build_context(Configuration const &config, std::string product_name = "TraceabilityProduct");

enum class ContractRole : std::uint8_t
{
  Factory,
  Controller,
  Data
};

std::string_view to_string(ContractRole role) noexcept;

struct PlannedContract
{
  std::string                name;
  ContractRole               role;
  /// Feature gating the contract; nullopt means always present.
  std::optional<std::string> gate;
};

struct ArchitecturePlan
{
  std::vector<PlannedContract> contracts;
  /// Deployment hooks the factory constructor calls, one per pair.
  std::vector<std::string>     factory_hooks;

  std::size_t pair_count() const noexcept
  {
    return factory_hooks.size();
  }
  bool contains(std::string_view contract) const;
};

/// Factory, the Participants pair, and one pair per selected traceability
/// method. Throws GenerationError when no method is selected.
ArchitecturePlan plan_architecture(GenerationContext const &ctx);

enum class ArtifactKind : std::uint8_t
{
  ContractSource,
  FrontendStub,
  ContextFile,
  Readme
};

std::string_view to_string(ArtifactKind kind) noexcept;

struct Artifact
{
  std::string                 path;  // relative, '/'-separated
  ArtifactKind                kind;
  std::string                 source_template;
  std::string                 content;
  std::string                 sha256;
  std::optional<ContractRole> role;
};

/// In-memory product: every artifact plus the manifest document.
struct Product
{
  GenerationContext     context;
  ArchitecturePlan      plan;
  std::vector<Artifact> artifacts;
  nlohmann::ordered_json manifest;

  std::string manifest_text() const;
  Artifact const *find(std::string_view path) const;
};

/// Frontend pages and their gates; nullopt gate means always present.
struct FrontendPage
{
  std::string                name;
  std::optional<std::string> gate;
};

std::vector<FrontendPage> const &frontend_pages();

/**
 * Renders the template suite in `template_dir` for a complete, valid
 * configuration. Every key used by a rendered template must exist in the
 * context; a missing key is a GenerationError rather than an empty string.
 * Output is a pure function of (configuration, templates, product name).
 */
Product render_product(Configuration const &config, std::filesystem::path const &template_dir,
                       std::string product_name = "TraceabilityProduct");

/// render_product, then writes the artifacts and manifest.json below
/// `out_dir`, which must not exist or be empty.
Product generate_product(Configuration const &config, std::filesystem::path const &out_dir,
                         std::filesystem::path const &template_dir,
                         std::string product_name = "TraceabilityProduct");

void write_product(Product const &product, std::filesystem::path const &out_dir);

struct MarkerEntry
{
  std::string                file;
  std::string                symbol;
  std::optional<std::string> file_gate;
};

using MarkerTable = std::map<std::string, std::vector<MarkerEntry>>;

MarkerTable load_markers(std::filesystem::path const &template_dir);

struct VerificationReport
{
  std::vector<std::string> findings;
  std::size_t              checks = 0;

  bool clean() const noexcept
  {
    return findings.empty();
  }
};

/**
 * Lexical checks on a generated product directory: artifact digests,
 * balanced braces/parentheses in contract sources, leftover template tags,
 * exactly one declaration of each contract, data/controller separation and
 * the marker table (each gated symbol appears iff its feature is selected).
 */
VerificationReport verify_product(nlohmann::json const &manifest, std::filesystem::path const &out_dir,
                                  MarkerTable const &markers);

VerificationReport verify_product_dir(std::filesystem::path const &out_dir,
                                      std::filesystem::path const &template_dir);

/// True when `text` still contains something shaped like a template tag.
bool has_residual_tags(std::string_view text);

}  // namespace tracespl
