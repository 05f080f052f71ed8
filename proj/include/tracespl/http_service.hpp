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

#include "tracespl/session_store.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace tracespl {

struct ServiceConfig
{
  std::string           host = "127.0.0.1";
  int                   port = 8080;
  std::chrono::seconds  session_ttl{1800};
  std::size_t           capacity = 1024;
  std::filesystem::path model_dir;
  std::filesystem::path template_dir;
  /// Empty disables CORS headers.
  std::string           allowed_origin;
  SteadyClock           clock;
};

/// Defaults overridden by BIND_ADDR (host:port), SESSION_TTL_SECONDS,
/// MODEL_DIR, TEMPLATE_DIR and ALLOWED_ORIGIN.
ServiceConfig service_config_from_env();

/// JSON views shared by the service and the CLI.
nlohmann::ordered_json states_json(Configuration const &config);
nlohmann::ordered_json status_json(Configuration const &config);
nlohmann::ordered_json model_json(FeatureModel const &model);

/**
 * HTTP front end over the configurator and generator. Models are looked up
 * by file stem or declared name among the `.fm` files of model_dir and are
 * parsed once; sessions live in a SessionStore.
 */
class Service
{
public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(Service const &)            = delete;
  Service &operator=(Service const &) = delete;

  /// Binds config.host:config.port (port 0 picks a free port) and returns
  /// the bound port, or -1 on failure.
  int bind();
  /// Serves until stop(); requires bind().
  bool run();
  void stop();
  /// bind() then run().
  bool listen();

  SessionStore &sessions();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tracespl
