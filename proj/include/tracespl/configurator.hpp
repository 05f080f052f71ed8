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

#include "tracespl/clauses.hpp"
#include "tracespl/feature_model.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracespl {

enum class DecisionOrigin : std::uint8_t
{
  User,
  Propagated,
  Initial
};

std::string_view to_string(DecisionOrigin origin) noexcept;

struct Decision
{
  FeatureId      feature;
  FeatureState   value;
  DecisionOrigin origin;

  bool operator==(Decision const &) const = default;
};

struct PropagationResult
{
  bool                       accepted = false;
  /// Decisions derived from the accepted one (origin Propagated).
  std::vector<Decision>      newly_decided;
  std::optional<std::string> conflict;
};

struct ConfigurationStatus
{
  bool                     valid    = true;
  bool                     complete = false;
  std::vector<std::string> undecided;
};

/// Misuse of the configurator API (as opposed to a rejected decision, which
/// is reported through PropagationResult).
class ConfigurationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A model shared between configurations together with its clause encoding.
class ConfigurableModel
{
public:
  explicit ConfigurableModel(FeatureModel model);

  FeatureModel const &model() const noexcept
  {
    return model_;
  }
  ClauseSet const &clauses() const noexcept
  {
    return clauses_;
  }

private:
  FeatureModel model_;
  ClauseSet    clauses_;
};

using ModelHandle = std::shared_ptr<ConfigurableModel const>;

ModelHandle make_model_handle(FeatureModel model);

/**
 * Tri-state configuration of a feature model.
 *
 * Every decision is followed by unit propagation to fixpoint over the model's
 * clause encoding, and then by a satisfiability check of the resulting
 * partial assignment; a decision is accepted only if both succeed, so an
 * accepted decision never leaves the configuration without a valid
 * completion. Propagated decisions cannot be overridden: the decision that
 * caused them has to be undone first.
 *
 * The decision log holds every decision in the order it was made (Initial
 * ones first). Replaying its User entries on a fresh configuration
 * reproduces states and origins exactly.
 *
 * Single writer: decide/undo/finalize need exclusive access, const members
 * may run concurrently.
 */
class Configuration
{
public:
  /// Root selected, initial propagation applied. Throws ConfigurationError
  /// for a void model.
  static Configuration create(ModelHandle model);

  /// Replays `decisions` as User decisions. A decision that is rejected
  /// makes the whole configuration load as an inspection-only snapshot with
  /// status().valid computed directly from the raw decisions.
  static Configuration from_decisions(ModelHandle model,
                                      std::span<std::pair<std::string, FeatureState> const> decisions);

  PropagationResult decide(std::string_view feature, FeatureState value);

  /// Removes the latest User decision and everything derived after it.
  void undo();

  /**
   * Decides every Undecided feature in pre-order. A feature is deselected
   * when that is consistent and forces no other feature to be selected;
   * otherwise it is selected if consistent, and as a last resort deselected
   * with its forced selections. Finalize decisions are logged as User
   * decisions so that the result serializes and replays.
   */
  void finalize();

  ConfigurationStatus status() const;

  FeatureModel const &model() const noexcept
  {
    return handle_->model();
  }
  ModelHandle const &handle() const noexcept
  {
    return handle_;
  }

  FeatureState state(FeatureId id) const
  {
    return states_.at(id);
  }
  FeatureState state(std::string_view feature) const;

  /// Origin of the current decision on `id`; nullopt when Undecided.
  std::optional<DecisionOrigin> origin(FeatureId id) const
  {
    return origins_.at(id);
  }

  std::span<FeatureState const> states() const noexcept
  {
    return states_;
  }

  std::span<Decision const> decision_log() const noexcept
  {
    return log_;
  }

  std::vector<std::pair<std::string, FeatureState>> user_decisions() const;

  /// False for inspection-only snapshots produced by from_decisions.
  bool editable() const noexcept
  {
    return editable_;
  }

  bool operator==(Configuration const &other) const
  {
    return states_ == other.states_ && origins_ == other.origins_ && log_ == other.log_;
  }

private:
  explicit Configuration(ModelHandle model);

  struct Trial
  {
    std::vector<FeatureState>  states;
    std::vector<FeatureId>     propagated;
    std::optional<std::string> conflict;
  };

  Trial try_assign(FeatureId feature, FeatureState value) const;
  void  commit(FeatureId feature, FeatureState value, Trial const &trial, DecisionOrigin origin);
  FeatureId resolve(std::string_view feature) const;

  ModelHandle                                handle_;
  std::vector<FeatureState>                  states_;
  std::vector<std::optional<DecisionOrigin>> origins_;
  std::vector<Decision>                      log_;
  bool                                       editable_ = true;
};

/// Configuration file: {"model": <name>, "decisions": [{"feature", "value"}]}.
std::string serialize_configuration(Configuration const &config);

/// Empty (or whitespace-only) text yields a fresh configuration. Throws
/// ConfigurationError for malformed files, unknown features or a model name
/// mismatch.
Configuration load_configuration(ModelHandle model, std::string_view text);

FeatureState parse_feature_value(std::string_view text);

}  // namespace tracespl
