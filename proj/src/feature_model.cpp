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

#include "tracespl/feature_model.hpp"

#include <algorithm>

namespace tracespl {

std::optional<FeatureId> FeatureModel::find(std::string_view name) const
{
  auto it = index_.find(std::string{name});
  if (it == index_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

FeatureId FeatureModel::id_of(std::string_view name) const
{
  auto id = find(name);
  if (!id)
  {
    throw ModelError("unknown feature '" + std::string{name} + "'");
  }
  return *id;
}

std::size_t FeatureModel::concrete_count() const noexcept
{
  return static_cast<std::size_t>(std::count_if(
      features_.begin(), features_.end(), [](Feature const &f) { return !f.is_abstract(); }));
}

FeatureModelBuilder::FeatureModelBuilder(std::string root_name)
{
  Feature root;
  root.name         = std::move(root_name);
  root.link         = ParentLink::Root;
  root.concreteness = Concreteness::Concrete;
  index_.emplace(root.name, 0);
  features_.push_back(std::move(root));
}

FeatureId FeatureModelBuilder::add(FeatureId parent, std::string name, ParentLink link,
                                   Concreteness concreteness)
{
  if (parent >= features_.size())
  {
    throw ModelError("parent id out of range for feature '" + name + "'");
  }
  if (index_.count(name) != 0)
  {
    throw ModelError("duplicate feature name '" + name + "'");
  }
  auto const id = static_cast<FeatureId>(features_.size());
  Feature    f;
  f.name         = std::move(name);
  f.link         = link;
  f.concreteness = concreteness;
  f.parent       = parent;
  index_.emplace(f.name, id);
  features_.push_back(std::move(f));
  features_[parent].children.push_back(id);
  return id;
}

void FeatureModelBuilder::set_group(FeatureId feature, GroupKind group)
{
  features_.at(feature).group = group;
}

void FeatureModelBuilder::set_concreteness(FeatureId feature, Concreteness concreteness)
{
  features_.at(feature).concreteness = concreteness;
}

void FeatureModelBuilder::add_constraint(std::string lhs, ConstraintOp op, std::string rhs)
{
  constraints_.push_back(CrossTreeConstraint{std::move(lhs), op, std::move(rhs)});
}

bool FeatureModelBuilder::contains(std::string_view name) const
{
  return index_.count(std::string{name}) != 0;
}

FeatureModel FeatureModelBuilder::build() const
{
  // Renumber in pre-order.
  std::vector<FeatureId> order;
  order.reserve(features_.size());
  std::vector<FeatureId> stack{0};
  while (!stack.empty())
  {
    FeatureId const id = stack.back();
    stack.pop_back();
    order.push_back(id);
    auto const &kids = features_[id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
    {
      stack.push_back(*it);
    }
  }

  std::vector<FeatureId> remap(features_.size());
  for (std::size_t i = 0; i < order.size(); ++i)
  {
    remap[order[i]] = static_cast<FeatureId>(i);
  }

  FeatureModel model;
  model.features_.reserve(order.size());
  for (FeatureId old_id : order)
  {
    Feature f = features_[old_id];
    if (f.parent)
    {
      f.parent = remap[*f.parent];
    }
    for (auto &c : f.children)
    {
      c = remap[c];
    }
    model.index_.emplace(f.name, static_cast<FeatureId>(model.features_.size()));
    model.features_.push_back(std::move(f));
  }
  model.constraints_ = constraints_;
  return model;
}

std::string_view to_string(ParentLink link) noexcept
{
  switch (link)
  {
  case ParentLink::Root:
    return "root";
  case ParentLink::Mandatory:
    return "mandatory";
  case ParentLink::Optional:
    return "optional";
  case ParentLink::GroupMember:
    return "member";
  }
  return "?";
}

std::string_view to_string(GroupKind group) noexcept
{
  switch (group)
  {
  case GroupKind::And:
    return "and";
  case GroupKind::Or:
    return "or";
  case GroupKind::Xor:
    return "xor";
  }
  return "?";
}

std::string_view to_string(ConstraintOp op) noexcept
{
  return op == ConstraintOp::Implies ? "=>" : "<=>";
}

std::string_view to_string(FeatureState state) noexcept
{
  switch (state)
  {
  case FeatureState::Undecided:
    return "undecided";
  case FeatureState::Selected:
    return "selected";
  case FeatureState::Deselected:
    return "deselected";
  }
  return "?";
}

std::vector<FeatureId> descendants(FeatureModel const &model, FeatureId feature)
{
  std::vector<FeatureId> out;
  std::vector<FeatureId> stack(model.feature(feature).children.rbegin(),
                               model.feature(feature).children.rend());
  while (!stack.empty())
  {
    FeatureId id = stack.back();
    stack.pop_back();
    out.push_back(id);
    auto const &kids = model.feature(id).children;
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
  return out;
}

}  // namespace tracespl
