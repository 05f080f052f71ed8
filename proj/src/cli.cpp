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

#include "tracespl/cli.hpp"

#include "tracespl/analysis.hpp"
#include "tracespl/assets.hpp"
#include "tracespl/cost_model.hpp"
#include "tracespl/generator.hpp"
#include "tracespl/http_service.hpp"
#include "tracespl/model_parser.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

namespace tracespl {

namespace fs = std::filesystem;

namespace {

// Errors that map to exit code 1.
struct DomainError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

void write_output(std::string const &path, std::string const &text, std::ostream &out)
{
  if (path.empty() || path == "-")
  {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file)
  {
    throw DomainError("cannot write " + path);
  }
}

std::pair<std::string, FeatureState> parse_decide(std::string const &arg)
{
  auto const eq = arg.find('=');
  if (eq == std::string::npos || eq == 0)
  {
    throw CLI::ValidationError("--decide", "expected FEATURE=on|off, got '" + arg + "'");
  }
  try
  {
    return {arg.substr(0, eq), parse_feature_value(arg.substr(eq + 1))};
  }
  catch (ConfigurationError const &e)
  {
    throw CLI::ValidationError("--decide", e.what());
  }
}

Service *g_service = nullptr;

extern "C" void on_signal(int)
{
  if (g_service != nullptr)
  {
    g_service->stop();
  }
}

}  // namespace

int cli_run(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Feature-model configurator and product generator for on-chain traceability", "tracespl"};
  app.require_subcommand(1);

  std::string model_path;
  std::string cfg_path;
  std::string out_path;
  std::string template_dir = default_template_dir().string();
  std::string product_name = "TraceabilityProduct";

  auto *validate = app.add_subcommand("validate", "check a feature model");
  validate->add_option("model", model_path, "feature model file")->required();
  std::size_t bound = AnalysisOptions{}.enumeration_bound;
  validate->add_option("--bound", bound, "largest model analysed by enumeration");

  auto *count = app.add_subcommand("count", "count the valid configurations of a model");
  count->add_option("model", model_path, "feature model file")->required();
  count->add_option("--bound", bound, "largest model counted by enumeration");
  std::string method = "auto";
  count->add_option("--method", method, "auto, enumerate, search or clauses")
      ->check(CLI::IsMember({"auto", "enumerate", "search", "clauses"}));

  auto *configure = app.add_subcommand("configure", "apply decisions and write a configuration");
  configure->add_option("model", model_path, "feature model file")->required();
  std::vector<std::string> decides;
  configure->add_option("--decide", decides, "FEATURE=on|off, applied in order");
  std::string from_path;
  configure->add_option("--from", from_path, "start from an existing configuration file");
  bool finalize = false;
  configure->add_flag("--finalize", finalize, "decide every remaining feature");
  configure->add_option("-o,--output", out_path, "output file ('-' for stdout)");

  auto *generate = app.add_subcommand("generate", "generate a product from a complete configuration");
  generate->add_option("model", model_path, "feature model file")->required();
  generate->add_option("config", cfg_path, "configuration file")->required();
  generate->add_option("-o,--output", out_path, "output directory (must be empty)")->required();
  generate->add_option("--templates", template_dir, "template directory");
  generate->add_option("--name", product_name, "product name");

  auto *verify = app.add_subcommand("verify", "check a generated product directory");
  std::string product_dir;
  verify->add_option("dir", product_dir, "product directory")->required();
  verify->add_option("--templates", template_dir, "template directory (for markers.json)");

  auto *cost = app.add_subcommand("cost", "cumulative gas cost comparison");
  std::string   scenarios_path = (asset_dir() / "scenarios.json").string();
  std::uint64_t n_from         = 1;
  std::uint64_t n_to           = 8;
  bool          csv            = false;
  std::string   study;
  cost->add_option("--scenarios", scenarios_path, "scenario file");
  cost->add_option("--from", n_from, "first run count")->check(CLI::PositiveNumber);
  cost->add_option("--to", n_to, "last run count")->check(CLI::PositiveNumber);
  cost->add_flag("--csv", csv, "emit CSV");
  cost->add_option("--study", study, "study to compare (default: first in file)");

  auto *serve = app.add_subcommand("serve", "run the HTTP service");
  std::string bind_addr;
  serve->add_option("--bind", bind_addr, "host:port (overrides BIND_ADDR)");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &)
  {
    out << app.help();
    return 0;
  }
  catch (CLI::CallForAllHelp const &)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  }
  catch (CLI::CallForVersion const &)
  {
    out << "tracespl 0.1.0\n";
    return 0;
  }
  catch (CLI::ParseError const &e)
  {
    err << "tracespl: " << e.what() << "\n";
    return 2;
  }

  try
  {
    if (*validate)
    {
      auto const model  = parse_model_file(model_path);
      auto const report = validate_model(model, AnalysisOptions{bound, true});
      for (auto const &s : report.structural)
      {
        out << "error: " << s << "\n";
      }
      for (auto const &n : report.notices)
      {
        out << "notice: " << n << "\n";
      }
      if (report.void_model)
      {
        out << "error: model is void\n";
      }
      for (auto const &d : report.dead_features)
      {
        out << "warning: dead feature " << d << "\n";
      }
      out << model.name() << ": " << model.size() << " features, " << model.constraints().size()
          << " constraints, " << (report.ok() ? "valid" : "invalid") << "\n";
      if (!report.ok())
      {
        err << "tracespl: model " << model.name() << " is invalid\n";
        return 1;
      }
      return 0;
    }
    if (*count)
    {
      auto const    model = parse_model_file(model_path);
      std::uint64_t n     = 0;
      if (method == "enumerate" || (method == "auto" && model.size() <= bound))
      {
        n = count_configurations(model, AnalysisOptions{std::max(bound, model.size()), true});
      }
      else if (method == "clauses")
      {
        n = count_models(ClauseSet(model));
      }
      else
      {
        n = count_configurations_by_search(model);
      }
      out << n << "\n";
      return 0;
    }
    if (*configure)
    {
      auto handle = make_model_handle(parse_model_file(model_path));
      auto config = Configuration::create(handle);
      if (!from_path.empty())
      {
        config = load_configuration(handle, read_text_file(from_path));
        if (!config.editable())
        {
          throw DomainError(from_path + ": configuration is invalid");
        }
      }
      for (auto const &arg : decides)
      {
        auto const [feature, value] = parse_decide(arg);
        auto const result           = config.decide(feature, value);
        if (!result.accepted)
        {
          throw DomainError("decision " + arg + " rejected: " + result.conflict.value_or("conflict"));
        }
      }
      if (finalize)
      {
        config.finalize();
      }
      write_output(out_path, serialize_configuration(config), out);
      return 0;
    }
    if (*generate)
    {
      auto handle = make_model_handle(parse_model_file(model_path));
      auto config = load_configuration(handle, read_text_file(cfg_path));
      auto const product = generate_product(config, out_path, template_dir, product_name);
      out << "generated " << product.artifacts.size() << " artifacts, " << product.plan.contracts.size()
          << " contracts in " << out_path << "\n";
      return 0;
    }
    if (*verify)
    {
      auto const report = verify_product_dir(product_dir, template_dir);
      for (auto const &f : report.findings)
      {
        out << "finding: " << f << "\n";
      }
      out << report.checks << " checks, " << report.findings.size() << " findings\n";
      if (!report.clean())
      {
        err << "tracespl: verification failed with " << report.findings.size() << " findings\n";
        return 1;
      }
      return 0;
    }
    if (*cost)
    {
      auto const scenarios = load_scenarios_file(scenarios_path);
      if (scenarios.empty())
      {
        throw DomainError("no scenarios in " + scenarios_path);
      }
      if (study.empty())
      {
        study = scenarios.front().study;
      }
      if (n_from > n_to)
      {
        throw CostError("--from must not exceed --to");
      }
      auto const pair = find_pair(scenarios, study);
      auto const rows = compare_table(pair.reference, pair.generated, n_from, n_to);
      if (csv)
      {
        out << comparison_csv(rows);
        return 0;
      }
      out << "study " << study << ": " << pair.reference.name << " vs " << pair.generated.name << "\n";
      for (auto const &r : rows)
      {
        out << "  n=" << r.runs << "  reference " << gas_to_string(r.reference_total) << "  generated "
            << gas_to_string(r.generated_total) << "\n";
      }
      auto const x = crossover(pair.reference, pair.generated, 1'000'000);
      out << "crossover: " << (x ? std::to_string(*x) : std::string("none up to 1000000 runs")) << "\n";
      return 0;
    }
    if (*serve)
    {
      auto cfg = service_config_from_env();
      if (!bind_addr.empty())
      {
        auto const colon = bind_addr.rfind(':');
        if (colon == std::string::npos)
        {
          err << "tracespl: --bind expects host:port\n";
          return 2;
        }
        cfg.host = bind_addr.substr(0, colon);
        cfg.port = std::stoi(bind_addr.substr(colon + 1));
      }
      Service service(cfg);
      int const port = service.bind();
      if (port < 0)
      {
        throw DomainError("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
      }
      out << "listening on " << cfg.host << ":" << port << std::endl;
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      service.run();
      g_service = nullptr;
      return 0;
    }
  }
  catch (CLI::ValidationError const &e)
  {
    err << "tracespl: " << e.what() << "\n";
    return 2;
  }
  catch (std::exception const &e)
  {
    err << "tracespl: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tracespl
