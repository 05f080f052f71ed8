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

#include "tracespl/clauses.hpp"

#include <algorithm>
#include <deque>

namespace tracespl {

namespace {

enum class ClauseValue
{
  Satisfied,
  Falsified,
  Unit,
  Open
};

bool literal_true(Literal l, FeatureState s) noexcept
{
  return s == (l.positive ? FeatureState::Selected : FeatureState::Deselected);
}

bool literal_false(Literal l, FeatureState s) noexcept
{
  return s == (l.positive ? FeatureState::Deselected : FeatureState::Selected);
}

ClauseValue evaluate(Clause const &c, std::vector<FeatureState> const &states, Literal &unit)
{
  std::size_t open = 0;
  for (Literal l : c.literals)
  {
    FeatureState const s = states[l.feature];
    if (literal_true(l, s))
    {
      return ClauseValue::Satisfied;
    }
    if (!literal_false(l, s))
    {
      ++open;
      unit = l;
    }
  }
  if (open == 0)
  {
    return ClauseValue::Falsified;
  }
  return open == 1 ? ClauseValue::Unit : ClauseValue::Open;
}

std::string join_names(FeatureModel const &model, std::vector<FeatureId> const &ids)
{
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i)
  {
    if (i != 0)
    {
      out += ", ";
    }
    out += model.feature(ids[i]).name;
  }
  return out;
}

}  // namespace

ClauseSet::ClauseSet(FeatureModel const &model)
  : feature_count_(model.size())
{
  auto add = [this](std::vector<Literal> lits, std::string rule) {
    clauses_.push_back(Clause{std::move(lits), std::move(rule)});
  };

  for (FeatureId id = 0; id < model.size(); ++id)
  {
    Feature const &f = model.feature(id);
    if (!f.parent)
    {
      add({{id, true}}, "root feature " + f.name + " is always selected");
    }
    else
    {
      std::string const &p = model.feature(*f.parent).name;
      add({{id, false}, {*f.parent, true}}, f.name + " requires its parent " + p);
      if (f.link == ParentLink::Mandatory)
      {
        add({{*f.parent, false}, {id, true}}, f.name + " is mandatory under " + p);
      }
    }
    if (f.group != GroupKind::And)
    {
      std::vector<Literal> any{{id, false}};
      for (FeatureId c : f.children)
      {
        any.push_back({c, true});
      }
      add(std::move(any), std::string(to_string(f.group)) + "-group " + f.name +
                              " needs one of " + join_names(model, f.children));
      if (f.group == GroupKind::Xor)
      {
        for (std::size_t i = 0; i < f.children.size(); ++i)
        {
          for (std::size_t j = i + 1; j < f.children.size(); ++j)
          {
            FeatureId const a = f.children[i];
            FeatureId const b = f.children[j];
            add({{a, false}, {b, false}}, "xor-group " + f.name + " excludes " +
                                              model.feature(a).name + " together with " +
                                              model.feature(b).name);
          }
        }
      }
    }
  }

  for (auto const &c : model.constraints())
  {
    FeatureId const  a    = model.id_of(c.lhs);
    FeatureId const  b    = model.id_of(c.rhs);
    std::string const rule = "constraint " + c.lhs + " " + std::string(to_string(c.op)) + " " + c.rhs;
    add({{a, false}, {b, true}}, rule);
    if (c.op == ConstraintOp::Iff)
    {
      add({{a, true}, {b, false}}, rule);
    }
  }

  occurrences_.resize(2 * feature_count_);
  for (std::uint32_t i = 0; i < clauses_.size(); ++i)
  {
    for (Literal l : clauses_[i].literals)
    {
      occurrences_[2 * l.feature + (l.positive ? 1U : 0U)].push_back(i);
    }
  }
}

UnitPropagation propagate(ClauseSet const &clauses, std::vector<FeatureState> &states,
                          std::span<FeatureId const> seeds)
{
  UnitPropagation         out;
  std::deque<FeatureId>   queue(seeds.begin(), seeds.end());
  while (!queue.empty())
  {
    FeatureId const f = queue.front();
    queue.pop_front();
    // Clauses holding the literal that just became false.
    bool const now_false_positive = states[f] == FeatureState::Deselected;
    for (std::uint32_t ci : clauses.occurrences(f, now_false_positive))
    {
      Clause const &c = clauses.clauses()[ci];
      Literal       unit{};
      switch (evaluate(c, states, unit))
      {
      case ClauseValue::Falsified:
        out.conflict = c.rule;
        return out;
      case ClauseValue::Unit:
        states[unit.feature] = unit.positive ? FeatureState::Selected : FeatureState::Deselected;
        out.assigned.push_back(unit.feature);
        queue.push_back(unit.feature);
        break;
      case ClauseValue::Satisfied:
      case ClauseValue::Open:
        break;
      }
    }
  }
  return out;
}

namespace {

// Scans every clause once; used where no seed set is known.
std::optional<std::string> propagate_all(ClauseSet const &clauses, std::vector<FeatureState> &states)
{
  std::vector<FeatureId> seeds;
  for (auto const &c : clauses.clauses())
  {
    Literal unit{};
    switch (evaluate(c, states, unit))
    {
    case ClauseValue::Falsified:
      return c.rule;
    case ClauseValue::Unit:
      states[unit.feature] = unit.positive ? FeatureState::Selected : FeatureState::Deselected;
      seeds.push_back(unit.feature);
      break;
    default:
      break;
    }
  }
  for (FeatureId id = 0; id < states.size(); ++id)
  {
    if (states[id] != FeatureState::Undecided &&
        std::find(seeds.begin(), seeds.end(), id) == seeds.end())
    {
      seeds.push_back(id);
    }
  }
  return propagate(clauses, states, seeds).conflict;
}

bool search(ClauseSet const &clauses, std::vector<FeatureState> &states, FeatureId from)
{
  FeatureId v = from;
  while (v < states.size() && states[v] != FeatureState::Undecided)
  {
    ++v;
  }
  if (v == states.size())
  {
    return true;
  }
  for (FeatureState value : {FeatureState::Selected, FeatureState::Deselected})
  {
    std::vector<FeatureState> trial = states;
    trial[v]                        = value;
    FeatureId const seed[]          = {v};
    if (!propagate(clauses, trial, seed).conflict && search(clauses, trial, v + 1))
    {
      return true;
    }
  }
  return false;
}

bool all_satisfied(ClauseSet const &clauses, std::vector<FeatureState> const &states)
{
  for (auto const &c : clauses.clauses())
  {
    Literal unit{};
    if (evaluate(c, states, unit) != ClauseValue::Satisfied)
    {
      return false;
    }
  }
  return true;
}

std::uint64_t count(ClauseSet const &clauses, std::vector<FeatureState> &states, FeatureId from)
{
  FeatureId v = from;
  while (v < states.size() && states[v] != FeatureState::Undecided)
  {
    ++v;
  }
  if (v == states.size())
  {
    return 1;
  }
  if (all_satisfied(clauses, states))
  {
    auto const free = std::count(states.begin() + v, states.end(), FeatureState::Undecided);
    return std::uint64_t{1} << free;
  }
  std::uint64_t total = 0;
  for (FeatureState value : {FeatureState::Selected, FeatureState::Deselected})
  {
    std::vector<FeatureState> trial = states;
    trial[v]                        = value;
    FeatureId const seed[]          = {v};
    if (!propagate(clauses, trial, seed).conflict)
    {
      total += count(clauses, trial, v + 1);
    }
  }
  return total;
}

}  // namespace

bool is_satisfiable(ClauseSet const &clauses, std::vector<FeatureState> states)
{
  if (propagate_all(clauses, states))
  {
    return false;
  }
  return search(clauses, states, 0);
}

std::uint64_t count_models(ClauseSet const &clauses)
{
  std::vector<FeatureState> states(clauses.feature_count(), FeatureState::Undecided);
  if (propagate_all(clauses, states))
  {
    return 0;
  }
  return count(clauses, states, 0);
}

}  // namespace tracespl
