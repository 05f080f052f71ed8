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

#include <json.hpp>

#include <algorithm>
#include <cctype>

namespace tracespl {

FeatureState parse_feature_value(std::string_view text)
{
  if (text == "selected" || text == "on")
  {
    return FeatureState::Selected;
  }
  if (text == "deselected" || text == "off")
  {
    return FeatureState::Deselected;
  }
  throw ConfigurationError("invalid feature value '" + std::string{text} +
                           "', expected selected or deselected");
}

std::string serialize_configuration(Configuration const &config)
{
  nlohmann::ordered_json doc;
  doc["model"]     = config.model().name();
  doc["decisions"] = nlohmann::ordered_json::array();
  for (auto const &[name, value] : config.user_decisions())
  {
    doc["decisions"].push_back({{"feature", name}, {"value", std::string(to_string(value))}});
  }
  return doc.dump(2) + "\n";
}

Configuration load_configuration(ModelHandle model, std::string_view text)
{
  if (std::all_of(text.begin(), text.end(),
                  [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }))
  {
    return Configuration::create(std::move(model));
  }

  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse(text);
  }
  catch (nlohmann::json::parse_error const &e)
  {
    throw ConfigurationError(std::string("malformed configuration file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("model") || !doc["model"].is_string() ||
      !doc.contains("decisions") || !doc["decisions"].is_array())
  {
    throw ConfigurationError(
        "malformed configuration file: expected {\"model\": ..., \"decisions\": [...]}");
  }
  auto const name = doc["model"].get<std::string>();
  if (name != model->model().name())
  {
    throw ConfigurationError("configuration targets model '" + name + "', not '" +
                             model->model().name() + "'");
  }

  std::vector<std::pair<std::string, FeatureState>> decisions;
  for (auto const &d : doc["decisions"])
  {
    if (!d.is_object() || !d.contains("feature") || !d["feature"].is_string() ||
        !d.contains("value") || !d["value"].is_string())
    {
      throw ConfigurationError("malformed decision entry: " + d.dump());
    }
    decisions.emplace_back(d["feature"].get<std::string>(),
                           parse_feature_value(d["value"].get<std::string>()));
  }
  return Configuration::from_decisions(std::move(model), decisions);
}

}  // namespace tracespl
