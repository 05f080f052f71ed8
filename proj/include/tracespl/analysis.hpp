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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tracespl {

struct AnalysisOptions
{
  /// Largest feature count for which brute-force enumeration is attempted.
  std::size_t enumeration_bound = 24;
  /// Use the OpenMP kernels; the serial reference is used otherwise.
  bool parallel = true;
};

class BoundExceeded : public ModelError
{
public:
  using ModelError::ModelError;
};

/// Full assignments satisfying a model. Assignment i selects feature f iff
/// bit f of mask(i) is set.
class ValidConfigurationSet
{
public:
  ValidConfigurationSet() = default;
  ValidConfigurationSet(std::vector<std::string> names, std::vector<std::uint64_t> masks)
    : names_(std::move(names))
    , masks_(std::move(masks))
  {}

  std::size_t size() const noexcept
  {
    return masks_.size();
  }
  bool empty() const noexcept
  {
    return masks_.empty();
  }
  std::uint64_t mask(std::size_t i) const
  {
    return masks_.at(i);
  }
  std::span<std::uint64_t const> masks() const noexcept
  {
    return masks_;
  }
  std::span<std::string const> feature_names() const noexcept
  {
    return names_;
  }
  bool selected(std::size_t i, FeatureId feature) const
  {
    return ((masks_.at(i) >> feature) & 1U) != 0;
  }

private:
  std::vector<std::string>   names_;
  std::vector<std::uint64_t> masks_;
};

/**
 * Checks the decided part of a configuration against the tree rules and the
 * cross-tree constraints. A rule counts as violated only when the decided
 * features alone falsify it. Returns a description of the first violation in
 * feature order, then constraint order.
 */
std::optional<std::string> first_violation(FeatureModel const &model,
                                           std::span<FeatureState const> states);

/// Full-assignment form of first_violation.
bool satisfies(FeatureModel const &model, std::uint64_t mask);

ValidConfigurationSet enumerate_configurations(FeatureModel const &model,
                                               AnalysisOptions const &options = {});

std::uint64_t count_configurations(FeatureModel const &model, AnalysisOptions const &options = {});

/// Exact count by backtracking over the tree in pre-order, pruning as soon as
/// a rule is falsified. No size bound; cost grows with the number of valid
/// configurations rather than with 2^n.
std::uint64_t count_configurations_by_search(FeatureModel const &model);

struct ValidationReport
{
  std::vector<std::string> structural;
  bool                     semantic_checked = false;
  /// "enumeration" or "search"; empty when semantics were not analysed.
  std::string              semantic_method;
  bool                     void_model = false;
  std::vector<std::string> dead_features;
  std::vector<std::string> notices;

  bool ok() const noexcept
  {
    return structural.empty() && !void_model;
  }
};

/**
 * Structural checks (names, root, group shapes, constraint references) plus
 * void/dead-feature analysis. Brute-force enumeration is used up to
 * options.enumeration_bound features; larger models get a notice and are
 * analysed with the clause-level satisfiability search instead.
 */
ValidationReport validate_model(FeatureModel const &model, AnalysisOptions const &options = {});

}  // namespace tracespl
