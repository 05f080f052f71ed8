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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tracespl {

using FeatureId = std::uint32_t;

enum class Concreteness : std::uint8_t
{
  Abstract,
  Concrete
};

enum class ParentLink : std::uint8_t
{
  Root,
  Mandatory,
  Optional,
  GroupMember
};

/// Decomposition of a feature over its children. And is the plain case where
/// every child carries its own Mandatory/Optional link.
enum class GroupKind : std::uint8_t
{
  And,
  Or,
  Xor
};

enum class ConstraintOp : std::uint8_t
{
  Implies,
  Iff
};

/// Tri-state decision value of a feature inside a (partial) configuration.
enum class FeatureState : std::uint8_t
{
  Undecided,
  Selected,
  Deselected
};

struct Feature
{
  std::string              name;
  Concreteness             concreteness = Concreteness::Concrete;
  ParentLink               link         = ParentLink::Optional;
  GroupKind                group        = GroupKind::And;
  std::optional<FeatureId> parent;
  std::vector<FeatureId>   children;

  bool is_abstract() const noexcept
  {
    return concreteness == Concreteness::Abstract;
  }

  bool operator==(Feature const &) const = default;
};

struct CrossTreeConstraint
{
  std::string  lhs;
  ConstraintOp op = ConstraintOp::Implies;
  std::string  rhs;

  bool operator==(CrossTreeConstraint const &) const = default;
};

class ModelError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * Immutable feature tree plus cross-tree constraints.
 *
 * Feature ids are the pre-order index of the feature in the tree, so the root
 * is always id 0 and every parent id is smaller than its children's ids.
 * Constraints are kept by name; a constraint may reference a name that does
 * not exist (validate_model reports it), in which case resolve() yields
 * nothing for that side.
 */
class FeatureModel
{
public:
  FeatureModel() = default;

  std::string const &name() const noexcept
  {
    return features_.front().name;
  }

  std::size_t size() const noexcept
  {
    return features_.size();
  }

  FeatureId root() const noexcept
  {
    return 0;
  }

  std::span<Feature const> features() const noexcept
  {
    return features_;
  }

  Feature const &feature(FeatureId id) const
  {
    return features_.at(id);
  }

  std::span<CrossTreeConstraint const> constraints() const noexcept
  {
    return constraints_;
  }

  std::optional<FeatureId> find(std::string_view name) const;

  /// Looks up a feature that must exist; throws ModelError otherwise.
  FeatureId id_of(std::string_view name) const;

  std::size_t concrete_count() const noexcept;

  bool operator==(FeatureModel const &other) const
  {
    return features_ == other.features_ && constraints_ == other.constraints_;
  }

private:
  friend class FeatureModelBuilder;

  std::vector<Feature>                       features_;
  std::vector<CrossTreeConstraint>           constraints_;
  std::unordered_map<std::string, FeatureId> index_;
};

/**
 * Incremental construction of a FeatureModel. Features may be added in any
 * order as long as the parent exists; build() renumbers them to pre-order.
 * The builder does not enforce the structural invariants (group sizes, name
 * syntax) so that malformed models can still be built and reported on by
 * validate_model. Duplicate names are rejected because lookup depends on them.
 */
class FeatureModelBuilder
{
public:
  explicit FeatureModelBuilder(std::string root_name);

  FeatureId root() const noexcept
  {
    return 0;
  }

  FeatureId add(FeatureId parent, std::string name, ParentLink link,
                Concreteness concreteness = Concreteness::Concrete);

  void set_group(FeatureId feature, GroupKind group);
  void set_concreteness(FeatureId feature, Concreteness concreteness);

  void add_constraint(std::string lhs, ConstraintOp op, std::string rhs);

  bool contains(std::string_view name) const;

  FeatureModel build() const;

private:
  std::vector<Feature>                       features_;
  std::vector<CrossTreeConstraint>           constraints_;
  std::unordered_map<std::string, FeatureId> index_;
};

std::string_view to_string(ParentLink link) noexcept;
std::string_view to_string(GroupKind group) noexcept;
std::string_view to_string(ConstraintOp op) noexcept;
std::string_view to_string(FeatureState state) noexcept;

/// Ids of the features in `model` in pre-order (which is also id order).
std::vector<FeatureId> descendants(FeatureModel const &model, FeatureId feature);

}  // namespace tracespl
