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

struct Literal
{
  FeatureId feature;
  bool      positive;
};

/// A disjunction of literals tagged with the model rule it encodes, so a
/// falsified clause can be reported in user terms.
struct Clause
{
  std::vector<Literal> literals;
  std::string          rule;
};

/**
 * CNF encoding of a feature model. Clauses are emitted in feature pre-order
 * (root, parent, mandatory, group rules), then in constraint order; unit
 * propagation reports conflicts against the first clause it falsifies, so
 * this order fixes the wording of conflict explanations.
 */
class ClauseSet
{
public:
  explicit ClauseSet(FeatureModel const &model);

  std::size_t feature_count() const noexcept
  {
    return feature_count_;
  }

  std::span<Clause const> clauses() const noexcept
  {
    return clauses_;
  }

  /// Indices of the clauses containing the given literal.
  std::span<std::uint32_t const> occurrences(FeatureId feature, bool positive) const
  {
    return occurrences_[2 * feature + (positive ? 1U : 0U)];
  }

private:
  std::size_t                             feature_count_ = 0;
  std::vector<Clause>                     clauses_;
  std::vector<std::vector<std::uint32_t>> occurrences_;
};

struct UnitPropagation
{
  /// Features assigned by propagation, in assignment order.
  std::vector<FeatureId>     assigned;
  /// Rule of the first clause found falsified, if any.
  std::optional<std::string> conflict;
};

/**
 * Propagates to fixpoint starting from the features in `seeds`, which must
 * already be decided in `states`. On conflict `states` is left partially
 * updated; callers that need atomicity work on a copy.
 */
UnitPropagation propagate(ClauseSet const &clauses, std::vector<FeatureState> &states,
                          std::span<FeatureId const> seeds);

/// True when the partial assignment extends to a full satisfying assignment.
bool is_satisfiable(ClauseSet const &clauses, std::vector<FeatureState> states);

/// Exact model count by DPLL-style splitting with unit propagation.
std::uint64_t count_models(ClauseSet const &clauses);

}  // namespace tracespl
