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

#include "tracespl/http_service.hpp"

#include "tracespl/assets.hpp"
#include "tracespl/generator.hpp"
#include "tracespl/model_parser.hpp"
#include "tracespl/zip_writer.hpp"

#include <httplib.h>

#include <cstdlib>
#include <map>

namespace tracespl {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ServiceConfig service_config_from_env()
{
  ServiceConfig cfg;
  cfg.model_dir    = default_model_dir();
  cfg.template_dir = default_template_dir();
  auto env         = [](char const *name) -> std::string {
    char const *v = std::getenv(name);
    return v == nullptr ? std::string() : std::string(v);
  };
  if (auto bind = env("BIND_ADDR"); !bind.empty())
  {
    auto const colon = bind.rfind(':');
    if (colon == std::string::npos)
    {
      throw std::invalid_argument("BIND_ADDR must be host:port");
    }
    cfg.host = bind.substr(0, colon);
    cfg.port = std::stoi(bind.substr(colon + 1));
  }
  if (auto ttl = env("SESSION_TTL_SECONDS"); !ttl.empty())
  {
    cfg.session_ttl = std::chrono::seconds(std::stoll(ttl));
  }
  if (auto dir = env("MODEL_DIR"); !dir.empty())
  {
    cfg.model_dir = dir;
  }
  if (auto dir = env("TEMPLATE_DIR"); !dir.empty())
  {
    cfg.template_dir = dir;
  }
  cfg.allowed_origin = env("ALLOWED_ORIGIN");
  return cfg;
}

ordered_json states_json(Configuration const &config)
{
  ordered_json out = ordered_json::object();
  auto const  &model = config.model();
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    out[model.feature(id).name] = std::string(to_string(config.state(id)));
  }
  return out;
}

ordered_json status_json(Configuration const &config)
{
  auto const   s = config.status();
  ordered_json out;
  out["valid"]           = s.valid;
  out["complete"]        = s.complete;
  out["undecided"]       = s.undecided;
  out["undecided_count"] = s.undecided.size();
  return out;
}

namespace {

ordered_json origins_json(Configuration const &config)
{
  ordered_json out   = ordered_json::object();
  auto const  &model = config.model();
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    auto const o                = config.origin(id);
    out[model.feature(id).name] = o ? ordered_json(std::string(to_string(*o))) : ordered_json();
  }
  return out;
}

ordered_json session_view(std::string const &id, Session const &s)
{
  ordered_json out;
  out["session"] = id;
  out["model"]   = s.model_name;
  out["states"]  = states_json(s.config);
  out["origins"] = origins_json(s.config);
  out["status"]  = status_json(s.config);
  return out;
}

}  // namespace

ordered_json model_json(FeatureModel const &model)
{
  ordered_json out;
  out["name"]     = model.name();
  out["features"] = ordered_json::array();
  for (FeatureId id = 0; id < model.size(); ++id)
  {
    auto const  &f = model.feature(id);
    ordered_json e;
    e["id"]       = id;
    e["name"]     = f.name;
    e["abstract"] = f.is_abstract();
    e["link"]     = std::string(to_string(f.link));
    e["group"]    = std::string(to_string(f.group));
    e["parent"]   = f.parent ? ordered_json(*f.parent) : ordered_json();
    e["children"] = f.children;
    out["features"].push_back(std::move(e));
  }
  out["constraints"] = ordered_json::array();
  for (auto const &c : model.constraints())
  {
    out["constraints"].push_back(
        {{"left", c.lhs}, {"op", std::string(to_string(c.op))}, {"right", c.rhs}});
  }
  out["text"] = serialize_model(model);
  return out;
}

struct Service::Impl
{
  explicit Impl(ServiceConfig c)
      : config(std::move(c)), store(SessionStoreOptions{config.session_ttl, config.capacity, config.clock})
  {
  }

  ServiceConfig   config;
  SessionStore    store;
  httplib::Server server;
  int             bound_port = -1;

  std::mutex                         models_mutex;
  std::map<std::string, ModelHandle> models;

  // Resolves a model by file stem, then by declared name.
  ModelHandle model(std::string const &name)
  {
    std::lock_guard lock(models_mutex);
    if (auto it = models.find(name); it != models.end())
    {
      return it->second;
    }
    if (name.empty() || name.find_first_of("/\\") != std::string::npos || name.front() == '.')
    {
      return nullptr;
    }
    std::error_code ec;
    fs::path const  direct = config.model_dir / (name + ".fm");
    if (fs::is_regular_file(direct, ec))
    {
      auto handle  = make_model_handle(parse_model_file(direct));
      models[name] = handle;
      return handle;
    }
    for (auto const &entry : fs::directory_iterator(config.model_dir, ec))
    {
      if (entry.path().extension() != ".fm")
      {
        continue;
      }
      try
      {
        auto m = parse_model_file(entry.path());
        if (m.name() == name)
        {
          auto handle  = make_model_handle(std::move(m));
          models[name] = handle;
          return handle;
        }
      }
      catch (ModelError const &)
      {
      }
    }
    return nullptr;
  }

  void routes();
};

namespace {

void send_json(httplib::Response &res, int status, ordered_json const &body)
{
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response &res, int status, std::string const &message)
{
  send_json(res, status, ordered_json{{"error", message}});
}

std::optional<nlohmann::json> parse_body(httplib::Request const &req, httplib::Response &res)
{
  try
  {
    auto body = nlohmann::json::parse(req.body);
    if (!body.is_object())
    {
      send_error(res, 422, "request body must be a JSON object");
      return std::nullopt;
    }
    return body;
  }
  catch (nlohmann::json::exception const &)
  {
    send_error(res, 422, "request body is not valid JSON");
    return std::nullopt;
  }
}

}  // namespace

void Service::Impl::routes()
{
  auto with_session = [this](httplib::Request const &req, httplib::Response &res,
                             auto &&fn) {
    std::string const id           = req.matches[1];
    auto [lookup, session] = store.acquire(id);
    if (lookup == SessionLookup::Expired)
    {
      send_error(res, 410, "session expired");
      return;
    }
    if (lookup == SessionLookup::Unknown)
    {
      send_error(res, 404, "unknown session");
      return;
    }
    std::lock_guard lock(session->mutex);
    fn(id, *session);
  };

  server.Get("/healthz", [](httplib::Request const &, httplib::Response &res) {
    send_json(res, 200, ordered_json{{"status", "ok"}});
  });

  server.Get(R"(/model/([^/]+))", [this](httplib::Request const &req, httplib::Response &res) {
    try
    {
      auto handle = model(req.matches[1]);
      if (!handle)
      {
        send_error(res, 404, "unknown model");
        return;
      }
      send_json(res, 200, model_json(handle->model()));
    }
    catch (ModelError const &e)
    {
      send_error(res, 500, e.what());
    }
  });

  server.Post("/sessions", [this](httplib::Request const &req, httplib::Response &res) {
    auto body = parse_body(req, res);
    if (!body)
    {
      return;
    }
    if (!body->contains("model") || !(*body)["model"].is_string())
    {
      send_error(res, 422, "missing string field 'model'");
      return;
    }
    auto const  name = (*body)["model"].get<std::string>();
    ModelHandle handle;
    try
    {
      handle = model(name);
    }
    catch (ModelError const &e)
    {
      send_error(res, 500, e.what());
      return;
    }
    if (!handle)
    {
      send_error(res, 404, "unknown model");
      return;
    }
    try
    {
      auto config = Configuration::create(handle);
      auto id     = store.create(name, std::move(config));
      auto [_, session] = store.acquire(id);
      std::lock_guard lock(session->mutex);
      send_json(res, 201, session_view(id, *session));
    }
    catch (ConfigurationError const &e)
    {
      send_error(res, 409, e.what());
    }
  });

  server.Get(R"(/sessions/([A-Za-z0-9_-]+))", [with_session](httplib::Request const &req, httplib::Response &res) {
    with_session(req, res, [&](std::string const &id, Session &s) { send_json(res, 200, session_view(id, s)); });
  });

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/decide)",
              [with_session](httplib::Request const &req, httplib::Response &res) {
    auto body = parse_body(req, res);
    if (!body)
    {
      return;
    }
    if (!body->contains("feature") || !(*body)["feature"].is_string() || !body->contains("value") ||
        !(*body)["value"].is_string())
    {
      send_error(res, 422, "expected string fields 'feature' and 'value'");
      return;
    }
    FeatureState value{};
    try
    {
      value = parse_feature_value((*body)["value"].get<std::string>());
    }
    catch (ConfigurationError const &e)
    {
      send_error(res, 422, e.what());
      return;
    }
    auto const feature = (*body)["feature"].get<std::string>();
    with_session(req, res, [&](std::string const &id, Session &s) {
      if (!s.config.model().find(feature))
      {
        send_error(res, 422, "unknown feature '" + feature + "'");
        return;
      }
      PropagationResult result;
      try
      {
        result = s.config.decide(feature, value);
      }
      catch (ConfigurationError const &e)
      {
        result.accepted = false;
        result.conflict = e.what();
      }
      auto view        = session_view(id, s);
      view["accepted"] = result.accepted;
      view["newly_decided"] = ordered_json::array();
      for (auto const &d : result.newly_decided)
      {
        view["newly_decided"].push_back({{"feature", s.config.model().feature(d.feature).name},
                                         {"value", std::string(to_string(d.value))}});
      }
      if (!result.accepted)
      {
        view["conflict"] = result.conflict.value_or("decision rejected");
        send_json(res, 409, view);
        return;
      }
      send_json(res, 200, view);
    });
  });

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/undo)",
              [with_session](httplib::Request const &req, httplib::Response &res) {
    with_session(req, res, [&](std::string const &id, Session &s) {
      try
      {
        s.config.undo();
      }
      catch (ConfigurationError const &e)
      {
        send_error(res, 409, e.what());
        return;
      }
      send_json(res, 200, session_view(id, s));
    });
  });

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/finalize)",
              [with_session](httplib::Request const &req, httplib::Response &res) {
    with_session(req, res, [&](std::string const &id, Session &s) {
      try
      {
        s.config.finalize();
      }
      catch (ConfigurationError const &e)
      {
        send_error(res, 409, e.what());
        return;
      }
      send_json(res, 200, session_view(id, s));
    });
  });

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/generate)",
              [this, with_session](httplib::Request const &req, httplib::Response &res) {
    std::string product_name = "TraceabilityProduct";
    if (!req.body.empty())
    {
      auto body = parse_body(req, res);
      if (!body)
      {
        return;
      }
      if (body->contains("product_name"))
      {
        if (!(*body)["product_name"].is_string() || (*body)["product_name"].get<std::string>().empty())
        {
          send_error(res, 422, "'product_name' must be a non-empty string");
          return;
        }
        product_name = (*body)["product_name"].get<std::string>();
      }
    }
    with_session(req, res, [&](std::string const &, Session &s) {
      auto const status = s.config.status();
      if (!status.valid || !status.complete)
      {
        ordered_json body;
        body["error"]           = status.valid ? "configuration is incomplete" : "configuration is invalid";
        body["undecided"]       = status.undecided;
        body["undecided_count"] = status.undecided.size();
        send_json(res, 422, body);
        return;
      }
      try
      {
        auto product = render_product(s.config, config.template_dir, product_name);
        std::vector<std::pair<std::string, std::string>> entries;
        for (auto const &a : product.artifacts)
        {
          entries.emplace_back(a.path, a.content);
        }
        entries.emplace_back("manifest.json", product.manifest_text());
        res.status = 200;
        res.set_header("Content-Disposition", "attachment; filename=\"product.zip\"");
        res.set_content(make_zip(entries), "application/zip");
      }
      catch (std::exception const &e)
      {
        send_error(res, 422, e.what());
      }
    });
  });

  if (!config.allowed_origin.empty())
  {
    std::string const origin = config.allowed_origin;
    server.set_post_routing_handler([origin](httplib::Request const &, httplib::Response &res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    });
    server.Options(R"(.*)", [origin](httplib::Request const &, httplib::Response &res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Max-Age", "600");
    });
  }

  server.set_exception_handler([](httplib::Request const &, httplib::Response &res, std::exception_ptr ep) {
    std::string message = "internal error";
    try
    {
      std::rethrow_exception(ep);
    }
    catch (std::exception const &e)
    {
      message = e.what();
    }
    catch (...)
    {
    }
    send_error(res, 500, message);
  });
}

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config)))
{
  impl_->routes();
}

Service::~Service()
{
  stop();
}

int Service::bind()
{
  if (impl_->config.port == 0)
  {
    impl_->bound_port = impl_->server.bind_to_any_port(impl_->config.host);
  }
  else
  {
    impl_->bound_port =
        impl_->server.bind_to_port(impl_->config.host, impl_->config.port) ? impl_->config.port : -1;
  }
  return impl_->bound_port;
}

bool Service::run()
{
  return impl_->server.listen_after_bind();
}

void Service::stop()
{
  if (impl_ && impl_->server.is_running())
  {
    impl_->server.stop();
  }
}

bool Service::listen()
{
  return bind() >= 0 && run();
}

SessionStore &Service::sessions()
{
  return impl_->store;
}

}  // namespace tracespl
