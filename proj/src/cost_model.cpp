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

#include "tracespl/cost_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tracespl {

std::string gas_to_string(Gas value)
{
  if (value == 0)
  {
    return "0";
  }
  std::string out;
  while (value != 0)
  {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string_view to_string(DeploymentPolicy policy) noexcept
{
  return policy == DeploymentPolicy::RedeployEachRun ? "RedeployEachRun" : "DeployOnce";
}

DeploymentPolicy parse_policy(std::string_view text)
{
  if (text == "RedeployEachRun")
  {
    return DeploymentPolicy::RedeployEachRun;
  }
  if (text == "DeployOnce")
  {
    return DeploymentPolicy::DeployOnce;
  }
  throw CostError("unknown deployment policy '" + std::string(text) + "'");
}

Gas cumulative_cost(CostScenario const &s, std::uint64_t n)
{
  if (n == 0)
  {
    throw CostError("run count must be positive");
  }
  Gas const d = s.deployment_gas;
  Gas const e = s.execution_gas;
  return s.policy == DeploymentPolicy::RedeployEachRun ? n * (d + e) : d + n * e;
}

std::optional<std::uint64_t> crossover(CostScenario const &reference, CostScenario const &generated,
                                       std::uint64_t n_max)
{
  if (reference.policy != DeploymentPolicy::RedeployEachRun || generated.policy != DeploymentPolicy::DeployOnce)
  {
    throw CostError("crossover needs a RedeployEachRun reference and a DeployOnce product");
  }
  if (n_max == 0)
  {
    throw CostError("n_max must be positive");
  }
  // Dg + n*Eg < n*(Dr + Er)  <=>  Dg < n*(Dr + Er - Eg)
  Gas const per_run_ref = Gas(reference.deployment_gas) + reference.execution_gas;
  Gas const eg          = generated.execution_gas;
  if (eg >= per_run_ref)
  {
    return std::nullopt;
  }
  Gas const           slope = per_run_ref - eg;
  Gas const           n     = Gas(generated.deployment_gas) / slope + 1;
  if (n > n_max)
  {
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(n);
}

std::vector<CostComparison> compare_table(CostScenario const &reference, CostScenario const &generated,
                                          std::uint64_t n_from, std::uint64_t n_to)
{
  if (n_from == 0 || n_from > n_to)
  {
    throw CostError("invalid run range");
  }
  std::vector<CostComparison> rows;
  rows.reserve(n_to - n_from + 1);
  for (std::uint64_t n = n_from;; ++n)
  {
    rows.push_back({n, cumulative_cost(reference, n), cumulative_cost(generated, n)});
    if (n == n_to)
    {
      break;
    }
  }
  return rows;
}

std::uint64_t adjusted_execution(std::uint64_t base, std::int64_t adjustment)
{
  __int128 const r = static_cast<__int128>(base) + adjustment;
  if (r < 0)
  {
    throw CostError("adjusted execution cost is negative");
  }
  if (r > static_cast<__int128>(UINT64_MAX))
  {
    throw CostError("adjusted execution cost overflows");
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<CostScenario> load_scenarios(std::string_view json_text)
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse(json_text);
  }
  catch (nlohmann::json::exception const &e)
  {
    throw CostError(std::string("scenarios: ") + e.what());
  }
  if (!doc.is_array())
  {
    throw CostError("scenarios: expected a JSON array");
  }
  std::vector<CostScenario> out;
  for (auto const &e : doc)
  {
    try
    {
      CostScenario s;
      s.name           = e.at("name").get<std::string>();
      s.study          = e.value("study", std::string());
      s.deployment_gas = e.at("deployment_gas").get<std::uint64_t>();
      s.execution_gas  = e.at("execution_gas").get<std::uint64_t>();
      s.policy         = parse_policy(e.at("policy").get<std::string>());
      s.provenance     = e.value("provenance", std::string());
      out.push_back(std::move(s));
    }
    catch (nlohmann::json::exception const &ex)
    {
      throw CostError(std::string("scenarios: ") + ex.what());
    }
  }
  return out;
}

std::vector<CostScenario> load_scenarios_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw CostError("cannot read " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenarios(ss.str());
}

ScenarioPair find_pair(std::vector<CostScenario> const &scenarios, std::string_view study)
{
  CostScenario const *ref = nullptr;
  CostScenario const *gen = nullptr;
  for (auto const &s : scenarios)
  {
    if (s.study != study)
    {
      continue;
    }
    auto *&slot = s.policy == DeploymentPolicy::RedeployEachRun ? ref : gen;
    if (slot != nullptr)
    {
      throw CostError("study '" + std::string(study) + "' has two " + std::string(to_string(s.policy)) +
                      " scenarios");
    }
    slot = &s;
  }
  if (ref == nullptr || gen == nullptr)
  {
    throw CostError("study '" + std::string(study) + "' lacks a reference/generated pair");
  }
  return {*ref, *gen};
}

std::string comparison_csv(std::vector<CostComparison> const &rows)
{
  std::string out = "n,reference_total,generated_total\n";
  for (auto const &r : rows)
  {
    out += std::to_string(r.runs) + "," + gas_to_string(r.reference_total) + "," + gas_to_string(r.generated_total) +
           "\n";
  }
  return out;
}

}  // namespace tracespl
