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

#include "tracespl/analysis.hpp"

#include "tracespl/analysis_kernels.hpp"
#include "tracespl/clauses.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace tracespl {

namespace {

bool is_sel(std::span<FeatureState const> s, FeatureId id)
{
  return s[id] == FeatureState::Selected;
}

bool is_desel(std::span<FeatureState const> s, FeatureId id)
{
  return s[id] == FeatureState::Deselected;
}

void require_enumerable(FeatureModel const &model, AnalysisOptions const &options)
{
  if (model.size() > options.enumeration_bound)
  {
    throw BoundExceeded("model has " + std::to_string(model.size()) +
                        " features, enumeration bound is " +
                        std::to_string(options.enumeration_bound));
  }
}

}  // namespace

std::optional<std::string> first_violation(FeatureModel const &model,
                                           std::span<FeatureState const> states)
{
  if (states.size() != model.size())
  {
    throw ModelError("state vector does not match the model size");
  }
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    Feature const &f = model.feature(id);
    if (!f.parent)
    {
      if (is_desel(states, id))
      {
        return "root feature " + f.name + " is deselected";
      }
    }
    else
    {
      FeatureId const p = *f.parent;
      if (is_sel(states, id) && is_desel(states, p))
      {
        return f.name + " is selected but its parent " + model.feature(p).name + " is not";
      }
      if (f.link == ParentLink::Mandatory && is_sel(states, p) && is_desel(states, id))
      {
        return "mandatory feature " + f.name + " is deselected under selected " +
               model.feature(p).name;
      }
    }
    if (f.group != GroupKind::And)
    {
      std::size_t selected = 0;
      std::size_t deselected = 0;
      for (FeatureId c : f.children)
      {
        selected += is_sel(states, c) ? 1U : 0U;
        deselected += is_desel(states, c) ? 1U : 0U;
      }
      if (is_sel(states, id) && deselected == f.children.size())
      {
        return std::string(to_string(f.group)) + "-group " + f.name + " has no selected member";
      }
      if (f.group == GroupKind::Xor && selected > 1)
      {
        return "xor-group " + f.name + " has more than one selected member";
      }
    }
  }
  for (auto const &c : model.constraints())
  {
    auto const a = model.find(c.lhs);
    auto const b = model.find(c.rhs);
    if (!a || !b)
    {
      return "constraint " + c.lhs + " " + std::string(to_string(c.op)) + " " + c.rhs +
             " references an unknown feature";
    }
    bool const forward  = is_sel(states, *a) && is_desel(states, *b);
    bool const backward = c.op == ConstraintOp::Iff && is_desel(states, *a) && is_sel(states, *b);
    if (forward || backward)
    {
      return "constraint " + c.lhs + " " + std::string(to_string(c.op)) + " " + c.rhs +
             " is violated";
    }
  }
  return std::nullopt;
}

bool satisfies(FeatureModel const &model, std::uint64_t mask)
{
  std::vector<FeatureState> states(model.size());
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    states[id] = ((mask >> id) & 1U) != 0 ? FeatureState::Selected : FeatureState::Deselected;
  }
  return !first_violation(model, states);
}

ValidConfigurationSet enumerate_configurations(FeatureModel const &model,
                                               AnalysisOptions const &options)
{
  require_enumerable(model, options);
  auto const compiled = kernels::compile(model);
  auto       masks    = options.parallel ? kernels::enumerate_parallel(compiled)
                                         : kernels::enumerate_serial(compiled);
  std::vector<std::string> names;
  names.reserve(model.size());
  for (auto const &f : model.features())
  {
    names.push_back(f.name);
  }
  return ValidConfigurationSet{std::move(names), std::move(masks)};
}

std::uint64_t count_configurations(FeatureModel const &model, AnalysisOptions const &options)
{
  require_enumerable(model, options);
  auto const compiled = kernels::compile(model);
  return options.parallel ? kernels::count_parallel(compiled) : kernels::count_serial(compiled);
}

namespace {

// Backtracking counter. Checks are attached to the feature with the largest
// id among their participants, so each rule is tested exactly when it
// becomes fully decided.
class SearchCounter
{
public:
  explicit SearchCounter(FeatureModel const &model)
    : model_(model)
    , states_(model.size(), FeatureState::Undecided)
    , group_checks_(model.size())
    , constraint_checks_(model.size())
  {
    for (FeatureId id = 0; id < model.size(); ++id)
    {
      Feature const &f = model.feature(id);
      if (f.group != GroupKind::And && !f.children.empty())
      {
        FeatureId last = *std::max_element(f.children.begin(), f.children.end());
        group_checks_[last].push_back(id);
      }
    }
    for (auto const &c : model.constraints())
    {
      FeatureId const a = model.id_of(c.lhs);
      FeatureId const b = model.id_of(c.rhs);
      constraint_checks_[std::max(a, b)].push_back({a, b, c.op == ConstraintOp::Iff});
    }
  }

  std::uint64_t run()
  {
    return step(0);
  }

private:
  struct Check
  {
    FeatureId a;
    FeatureId b;
    bool      iff;
  };

  bool sel(FeatureId id) const
  {
    return states_[id] == FeatureState::Selected;
  }

  bool consistent(FeatureId id) const
  {
    Feature const &f = model_.feature(id);
    if (!f.parent)
    {
      if (!sel(id))
      {
        return false;
      }
    }
    else
    {
      Feature const &parent = model_.feature(*f.parent);
      if (sel(id) && !sel(*f.parent))
      {
        return false;
      }
      if (f.link == ParentLink::Mandatory && sel(*f.parent) && !sel(id))
      {
        return false;
      }
      if (parent.group == GroupKind::Xor && sel(id))
      {
        for (FeatureId c : parent.children)
        {
          if (c < id && sel(c))
          {
            return false;
          }
        }
      }
    }
    for (FeatureId g : group_checks_[id])
    {
      if (sel(g) && std::none_of(model_.feature(g).children.begin(),
                                 model_.feature(g).children.end(),
                                 [this](FeatureId c) { return sel(c); }))
      {
        return false;
      }
    }
    for (auto const &c : constraint_checks_[id])
    {
      if ((sel(c.a) && !sel(c.b)) || (c.iff && sel(c.b) && !sel(c.a)))
      {
        return false;
      }
    }
    return true;
  }

  std::uint64_t step(FeatureId id)
  {
    if (id == model_.size())
    {
      return 1;
    }
    std::uint64_t total = 0;
    for (FeatureState value : {FeatureState::Selected, FeatureState::Deselected})
    {
      states_[id] = value;
      if (consistent(id))
      {
        total += step(id + 1);
      }
    }
    states_[id] = FeatureState::Undecided;
    return total;
  }

  FeatureModel const                 &model_;
  std::vector<FeatureState>           states_;
  std::vector<std::vector<FeatureId>> group_checks_;
  std::vector<std::vector<Check>>     constraint_checks_;
};

}  // namespace

std::uint64_t count_configurations_by_search(FeatureModel const &model)
{
  return SearchCounter{model}.run();
}

ValidationReport validate_model(FeatureModel const &model, AnalysisOptions const &options)
{
  ValidationReport report;
  static std::regex const name_re("[A-Za-z][A-Za-z0-9_]*");

  std::set<std::string> seen;
  std::size_t           roots = 0;
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    Feature const &f = model.feature(id);
    if (!std::regex_match(f.name, name_re))
    {
      report.structural.push_back("invalid feature name '" + f.name + "'");
    }
    if (!seen.insert(f.name).second)
    {
      report.structural.push_back("duplicate feature name '" + f.name + "'");
    }
    if (f.link == ParentLink::Root)
    {
      ++roots;
      if (f.parent)
      {
        report.structural.push_back("root feature '" + f.name + "' has a parent");
      }
    }
    else if (!f.parent)
    {
      report.structural.push_back("feature '" + f.name + "' has no parent");
    }
    if (f.group != GroupKind::And)
    {
      if (f.children.size() < 2)
      {
        report.structural.push_back(std::string(to_string(f.group)) + "-group '" + f.name +
                                    "' has fewer than 2 members");
      }
      for (FeatureId c : f.children)
      {
        if (model.feature(c).link != ParentLink::GroupMember)
        {
          report.structural.push_back("child '" + model.feature(c).name + "' of group '" +
                                      f.name + "' is not a group member");
        }
      }
    }
    if (f.link == ParentLink::GroupMember &&
        (!f.parent || model.feature(*f.parent).group == GroupKind::And))
    {
      report.structural.push_back("group member '" + f.name +
                                  "' does not belong to an or/xor group");
    }
  }
  if (roots != 1)
  {
    report.structural.push_back("model has " + std::to_string(roots) +
                                " root features, expected exactly 1");
  }
  for (auto const &c : model.constraints())
  {
    std::string const text = c.lhs + " " + std::string(to_string(c.op)) + " " + c.rhs;
    if (c.lhs == c.rhs)
    {
      report.structural.push_back("constraint " + text + " relates a feature to itself");
    }
    for (std::string const *side : {&c.lhs, &c.rhs})
    {
      if (!model.find(*side))
      {
        report.structural.push_back("constraint " + text + " references unknown feature '" +
                                    *side + "'");
      }
    }
  }

  if (!report.structural.empty())
  {
    report.notices.push_back("semantic analysis skipped because of structural violations");
    return report;
  }

  report.semantic_checked = true;
  if (model.size() <= options.enumeration_bound)
  {
    report.semantic_method = "enumeration";
    auto const          configs = enumerate_configurations(model, options);
    report.void_model           = configs.empty();
    std::uint64_t alive = 0;
    for (std::uint64_t m : configs.masks())
    {
      alive |= m;
    }
    if (!report.void_model)
    {
      for (FeatureId id = 0; id < model.size(); ++id)
      {
        if (((alive >> id) & 1U) == 0)
        {
          report.dead_features.push_back(model.feature(id).name);
        }
      }
    }
    return report;
  }

  report.notices.push_back("model has " + std::to_string(model.size()) +
                           " features, above the enumeration bound of " +
                           std::to_string(options.enumeration_bound) +
                           "; brute-force analysis skipped, using satisfiability search");
  report.semantic_method = "search";
  ClauseSet const           clauses{model};
  std::vector<FeatureState> none(model.size(), FeatureState::Undecided);
  report.void_model = !is_satisfiable(clauses, none);
  if (!report.void_model)
  {
    for (FeatureId id = 0; id < model.size(); ++id)
    {
      std::vector<FeatureState> forced = none;
      forced[id]                       = FeatureState::Selected;
      if (!is_satisfiable(clauses, forced))
      {
        report.dead_features.push_back(model.feature(id).name);
      }
    }
  }
  return report;
}

}  // namespace tracespl
