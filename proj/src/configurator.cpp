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

#include "tracespl/configurator.hpp"

#include "tracespl/analysis.hpp"

#include <algorithm>

namespace tracespl {

std::string_view to_string(DecisionOrigin origin) noexcept
{
  switch (origin)
  {
  case DecisionOrigin::User:
    return "user";
  case DecisionOrigin::Propagated:
    return "propagated";
  case DecisionOrigin::Initial:
    return "initial";
  }
  return "?";
}

ConfigurableModel::ConfigurableModel(FeatureModel model)
  : model_(std::move(model))
  , clauses_(model_)
{}

ModelHandle make_model_handle(FeatureModel model)
{
  return std::make_shared<ConfigurableModel const>(std::move(model));
}

Configuration::Configuration(ModelHandle model)
  : handle_(std::move(model))
  , states_(handle_->model().size(), FeatureState::Undecided)
  , origins_(handle_->model().size())
{}

Configuration Configuration::create(ModelHandle model)
{
  if (!model)
  {
    throw ConfigurationError("no model given");
  }
  Configuration config{std::move(model)};
  FeatureId const root = config.model().root();
  Trial const     trial = config.try_assign(root, FeatureState::Selected);
  if (trial.conflict)
  {
    throw ConfigurationError("model " + config.model().name() +
                             " is void: " + *trial.conflict);
  }
  config.commit(root, FeatureState::Selected, trial, DecisionOrigin::Initial);
  return config;
}

Configuration Configuration::from_decisions(
    ModelHandle model, std::span<std::pair<std::string, FeatureState> const> decisions)
{
  for (auto const &[name, value] : decisions)
  {
    if (!model->model().find(name))
    {
      throw ConfigurationError("unknown feature '" + name + "'");
    }
    if (value == FeatureState::Undecided)
    {
      throw ConfigurationError("decision on '" + name + "' has no value");
    }
  }

  Configuration config = create(model);
  bool          replayed = true;
  for (auto const &[name, value] : decisions)
  {
    FeatureId const id = config.resolve(name);
    if (config.states_[id] != FeatureState::Undecided && config.states_[id] != value)
    {
      replayed = false;
      break;
    }
    if (id == config.model().root() && value == FeatureState::Deselected)
    {
      replayed = false;
      break;
    }
    if (!config.decide(name, value).accepted)
    {
      replayed = false;
      break;
    }
  }
  if (replayed)
  {
    return config;
  }

  // Inspection-only snapshot: raw decisions, no propagation.
  Configuration raw{model};
  FeatureId const root = raw.model().root();
  raw.states_[root]    = FeatureState::Selected;
  raw.origins_[root]   = DecisionOrigin::Initial;
  raw.log_.push_back({root, FeatureState::Selected, DecisionOrigin::Initial});
  for (auto const &[name, value] : decisions)
  {
    FeatureId const id = raw.resolve(name);
    raw.states_[id]    = value;
    raw.origins_[id]   = DecisionOrigin::User;
    raw.log_.push_back({id, value, DecisionOrigin::User});
  }
  raw.editable_ = false;
  return raw;
}

FeatureId Configuration::resolve(std::string_view feature) const
{
  auto id = model().find(feature);
  if (!id)
  {
    throw ConfigurationError("unknown feature '" + std::string{feature} + "'");
  }
  return *id;
}

FeatureState Configuration::state(std::string_view feature) const
{
  return states_[resolve(feature)];
}

Configuration::Trial Configuration::try_assign(FeatureId feature, FeatureState value) const
{
  Trial trial{states_, {}, std::nullopt};
  trial.states[feature]  = value;
  FeatureId const seed[] = {feature};
  auto            result = propagate(handle_->clauses(), trial.states, seed);
  trial.propagated       = std::move(result.assigned);
  if (result.conflict)
  {
    trial.conflict = "would violate " + *result.conflict;
    return trial;
  }
  if (!is_satisfiable(handle_->clauses(), trial.states))
  {
    trial.conflict = "no valid configuration remains after " +
                     std::string(value == FeatureState::Selected ? "selecting " : "deselecting ") +
                     model().feature(feature).name;
  }
  return trial;
}

void Configuration::commit(FeatureId feature, FeatureState value, Trial const &trial,
                           DecisionOrigin origin)
{
  DecisionOrigin const derived =
      origin == DecisionOrigin::Initial ? DecisionOrigin::Initial : DecisionOrigin::Propagated;
  states_           = trial.states;
  origins_[feature] = origin;
  log_.push_back({feature, value, origin});
  for (FeatureId id : trial.propagated)
  {
    origins_[id] = derived;
    log_.push_back({id, states_[id], derived});
  }
}

PropagationResult Configuration::decide(std::string_view feature, FeatureState value)
{
  if (!editable_)
  {
    throw ConfigurationError("configuration was loaded in an invalid state and is read-only");
  }
  if (value == FeatureState::Undecided)
  {
    throw ConfigurationError("a decision must select or deselect");
  }
  FeatureId const id = resolve(feature);
  if (id == model().root() && value == FeatureState::Deselected)
  {
    throw ConfigurationError("cannot deselect root feature " + model().name());
  }

  PropagationResult result;
  FeatureState const current = states_[id];
  if (current == value)
  {
    result.accepted = true;
    return result;
  }
  if (current != FeatureState::Undecided)
  {
    if (origins_[id] == DecisionOrigin::User)
    {
      throw ConfigurationError("feature " + model().feature(id).name +
                               " was decided by the user; undo it before changing it");
    }
    result.conflict = model().feature(id).name + " is already " +
                      std::string(to_string(current)) + " by " +
                      std::string(to_string(*origins_[id])) + " decision";
    return result;
  }

  Trial const trial = try_assign(id, value);
  if (trial.conflict)
  {
    result.conflict = trial.conflict;
    return result;
  }
  commit(id, value, trial, DecisionOrigin::User);
  result.accepted = true;
  for (FeatureId p : trial.propagated)
  {
    result.newly_decided.push_back({p, states_[p], DecisionOrigin::Propagated});
  }
  return result;
}

void Configuration::undo()
{
  if (!editable_)
  {
    throw ConfigurationError("configuration was loaded in an invalid state and is read-only");
  }
  auto last = std::find_if(log_.rbegin(), log_.rend(), [](Decision const &d) {
    return d.origin == DecisionOrigin::User;
  });
  if (last == log_.rend())
  {
    throw ConfigurationError("nothing to undo");
  }
  auto const cut = static_cast<std::size_t>(std::distance(log_.begin(), last.base()) - 1);

  Configuration rebuilt = create(handle_);
  for (std::size_t i = 0; i < cut; ++i)
  {
    Decision const &d = log_[i];
    if (d.origin == DecisionOrigin::User)
    {
      rebuilt.decide(model().feature(d.feature).name, d.value);
    }
  }
  *this = std::move(rebuilt);
}

void Configuration::finalize()
{
  if (!editable_ || !status().valid)
  {
    throw ConfigurationError("cannot finalize an invalid configuration");
  }
  for (FeatureId id = 0; id < model().size(); ++id)
  {
    if (states_[id] != FeatureState::Undecided)
    {
      continue;
    }
    Trial const off = try_assign(id, FeatureState::Deselected);
    bool const  forces_selection =
        std::any_of(off.propagated.begin(), off.propagated.end(),
                    [&](FeatureId p) { return off.states[p] == FeatureState::Selected; });
    if (!off.conflict && !forces_selection)
    {
      commit(id, FeatureState::Deselected, off, DecisionOrigin::User);
      continue;
    }
    Trial const on = try_assign(id, FeatureState::Selected);
    if (!on.conflict)
    {
      commit(id, FeatureState::Selected, on, DecisionOrigin::User);
      continue;
    }
    if (!off.conflict)
    {
      commit(id, FeatureState::Deselected, off, DecisionOrigin::User);
      continue;
    }
    throw ConfigurationError("finalize is blocked at feature " + model().feature(id).name + ": " +
                             *on.conflict);
  }
}

ConfigurationStatus Configuration::status() const
{
  ConfigurationStatus s;
  for (FeatureId id = 0; id < model().size(); ++id)
  {
    if (states_[id] == FeatureState::Undecided)
    {
      s.undecided.push_back(model().feature(id).name);
    }
  }
  s.complete = s.undecided.empty();
  s.valid    = !first_violation(model(), states_);
  // Editable configurations always keep a valid completion; raw snapshots
  // have to be checked.
  if (s.valid && !editable_)
  {
    s.valid = is_satisfiable(handle_->clauses(), states_);
  }
  return s;
}

std::vector<std::pair<std::string, FeatureState>> Configuration::user_decisions() const
{
  std::vector<std::pair<std::string, FeatureState>> out;
  for (Decision const &d : log_)
  {
    if (d.origin == DecisionOrigin::User)
    {
      out.emplace_back(model().feature(d.feature).name, d.value);
    }
  }
  return out;
}

}  // namespace tracespl
