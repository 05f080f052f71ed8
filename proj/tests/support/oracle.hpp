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

// Brute-force reference semantics, written against the Feature fields only
// (no clause encoding, no kernels) so the production code can be checked
// against something independent.

#include "tracespl/feature_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tracespl::testing {

/// Full assignment: sel[i] says whether feature i is selected.
inline bool oracle_valid(FeatureModel const &m, std::vector<bool> const &sel)
{
  if (!sel[m.root()])
  {
    return false;
  }
  for (FeatureId i = 0; i < m.size(); ++i)
  {
    auto const &f = m.feature(i);
    if (f.parent && sel[i] && !sel[*f.parent])
    {
      return false;
    }
    if (!sel[i])
    {
      continue;
    }
    int members = 0;
    int chosen  = 0;
    for (FeatureId c : f.children)
    {
      auto const &child = m.feature(c);
      if (child.link == ParentLink::Mandatory && !sel[c])
      {
        return false;
      }
      if (child.link == ParentLink::GroupMember)
      {
        ++members;
        chosen += sel[c] ? 1 : 0;
      }
    }
    if (members > 0)
    {
      if (f.group == GroupKind::Or && chosen < 1)
      {
        return false;
      }
      if (f.group == GroupKind::Xor && chosen != 1)
      {
        return false;
      }
    }
  }
  for (auto const &c : m.constraints())
  {
    bool const a = sel[m.id_of(c.lhs)];
    bool const b = sel[m.id_of(c.rhs)];
    if (c.op == ConstraintOp::Implies && a && !b)
    {
      return false;
    }
    if (c.op == ConstraintOp::Iff && a != b)
    {
      return false;
    }
  }
  return true;
}

inline std::vector<bool> unpack(std::uint64_t mask, std::size_t n)
{
  std::vector<bool> sel(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    sel[i] = ((mask >> i) & 1U) != 0;
  }
  return sel;
}

/// Every valid configuration as a bitmask (bit i = feature i), ascending.
inline std::vector<std::uint64_t> oracle_enumerate(FeatureModel const &m)
{
  std::vector<std::uint64_t> out;
  std::uint64_t const        limit = std::uint64_t{1} << m.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask)
  {
    if (oracle_valid(m, unpack(mask, m.size())))
    {
      out.push_back(mask);
    }
  }
  return out;
}

/// True when some valid full configuration agrees with every decided state.
inline bool oracle_extends(FeatureModel const &m, std::span<FeatureState const> states)
{
  for (auto mask : oracle_enumerate(m))
  {
    bool ok = true;
    for (FeatureId i = 0; i < m.size() && ok; ++i)
    {
      bool const s = ((mask >> i) & 1U) != 0;
      if ((states[i] == FeatureState::Selected && !s) || (states[i] == FeatureState::Deselected && s))
      {
        ok = false;
      }
    }
    if (ok)
    {
      return true;
    }
  }
  return false;
}

/// True when the decided part breaks a rule no matter how the rest is
/// decided; checks only rules whose features are all decided.
inline bool oracle_violates_decided(FeatureModel const &m, std::span<FeatureState const> states)
{
  auto sel = [&](FeatureId i) { return states[i] == FeatureState::Selected; };
  auto off = [&](FeatureId i) { return states[i] == FeatureState::Deselected; };
  if (off(m.root()))
  {
    return true;
  }
  for (FeatureId i = 0; i < m.size(); ++i)
  {
    auto const &f = m.feature(i);
    if (f.parent && sel(i) && off(*f.parent))
    {
      return true;
    }
    if (!sel(i))
    {
      continue;
    }
    int members = 0, on = 0, dead = 0;
    for (FeatureId c : f.children)
    {
      if (m.feature(c).link == ParentLink::Mandatory && off(c))
      {
        return true;
      }
      if (m.feature(c).link == ParentLink::GroupMember)
      {
        ++members;
        on += sel(c) ? 1 : 0;
        dead += off(c) ? 1 : 0;
      }
    }
    if (members > 0 && f.group != GroupKind::And && dead == members)
    {
      return true;
    }
    if (f.group == GroupKind::Xor && on > 1)
    {
      return true;
    }
  }
  for (auto const &c : m.constraints())
  {
    auto const a = m.id_of(c.lhs), b = m.id_of(c.rhs);
    if (sel(a) && off(b))
    {
      return true;
    }
    if (c.op == ConstraintOp::Iff && off(a) && sel(b))
    {
      return true;
    }
  }
  return false;
}

}  // namespace tracespl::testing
