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

#include "tracespl/digest.hpp"
#include "tracespl/generator.hpp"

#include <regex>
#include <set>

namespace tracespl {

namespace fs = std::filesystem;

bool has_residual_tags(std::string_view text)
{
  for (std::string_view marker : {"/* #", "/* /", "/* ^", "/*#", "/*/", "/*^", "{{"})
  {
    if (text.find(marker) != std::string_view::npos)
    {
      return true;
    }
  }
  return false;
}

MarkerTable load_markers(fs::path const &template_dir)
{
  auto const path = template_dir / "markers.json";
  auto const doc  = nlohmann::json::parse(read_text_file(path));
  MarkerTable table;
  for (auto const &[feature, entries] : doc.items())
  {
    auto &list = table[feature];
    for (auto const &e : entries)
    {
      MarkerEntry m;
      m.file   = e.at("file").get<std::string>();
      m.symbol = e.at("symbol").get<std::string>();
      if (e.contains("file_gate"))
      {
        m.file_gate = e.at("file_gate").get<std::string>();
      }
      list.push_back(std::move(m));
    }
  }
  return table;
}

namespace {

// Blanks out comments and string literals so structural scans see code only.
std::string strip_comments_and_strings(std::string_view src)
{
  std::string out(src);
  std::size_t i = 0;
  while (i < out.size())
  {
    if (out.compare(i, 2, "//") == 0)
    {
      while (i < out.size() && out[i] != '\n')
      {
        out[i++] = ' ';
      }
    }
    else if (out.compare(i, 2, "/*") == 0)
    {
      auto const end  = out.find("*/", i + 2);
      auto const stop = end == std::string::npos ? out.size() : end + 2;
      for (; i < stop; ++i)
      {
        if (out[i] != '\n')
        {
          out[i] = ' ';
        }
      }
    }
    else if (out[i] == '"' || out[i] == '\'')
    {
      char const quote = out[i];
      out[i++]         = ' ';
      while (i < out.size() && out[i] != quote && out[i] != '\n')
      {
        if (out[i] == '\\' && i + 1 < out.size())
        {
          out[i++] = ' ';
        }
        out[i++] = ' ';
      }
      if (i < out.size() && out[i] == quote)
      {
        out[i++] = ' ';
      }
    }
    else
    {
      ++i;
    }
  }
  return out;
}

bool balanced(std::string_view code, std::string &why)
{
  std::string stack;
  for (char c : code)
  {
    if (c == '{' || c == '(')
    {
      stack.push_back(c);
    }
    else if (c == '}' || c == ')')
    {
      char const want = c == '}' ? '{' : '(';
      if (stack.empty() || stack.back() != want)
      {
        why = std::string("unmatched '") + c + "'";
        return false;
      }
      stack.pop_back();
    }
  }
  if (!stack.empty())
  {
    why = std::string("unclosed '") + stack.back() + "'";
    return false;
  }
  return true;
}

std::size_t count_matches(std::string const &text, std::regex const &re)
{
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

VerificationReport verify_product(nlohmann::json const &manifest, fs::path const &out_dir,
                                  MarkerTable const &markers)
{
  VerificationReport report;
  auto finding = [&](std::string msg) { report.findings.push_back(std::move(msg)); };

  if (manifest.value("schema", 0) != 1)
  {
    finding("manifest: unsupported schema");
    return report;
  }

  std::set<std::string> planned;
  std::set<std::string> controllers;
  for (auto const &c : manifest.at("plan").at("contracts"))
  {
    auto const name = c.at("name").get<std::string>();
    planned.insert(name);
    if (c.at("role") == "Controller")
    {
      controllers.insert(name);
    }
  }

  std::set<std::string> paths;
  for (auto const &a : manifest.at("artifacts"))
  {
    auto const rel  = a.at("path").get<std::string>();
    auto const kind = a.at("kind").get<std::string>();
    ++report.checks;
    if (!paths.insert(rel).second)
    {
      finding(rel + ": duplicate artifact path");
    }
    fs::path const path = out_dir / rel;
    if (!fs::is_regular_file(path))
    {
      finding(rel + ": missing");
      continue;
    }
    auto const content = read_text_file(path);
    ++report.checks;
    if (sha256_hex(content) != a.at("sha256").get<std::string>())
    {
      finding(rel + ": digest mismatch");
    }
    ++report.checks;
    if (has_residual_tags(content))
    {
      finding(rel + ": residual template tag");
    }
    if (kind != "ContractSource")
    {
      continue;
    }

    auto const name = fs::path(rel).stem().string();
    ++report.checks;
    if (!planned.contains(name))
    {
      finding(rel + ": contract not in the architecture plan");
    }
    auto const code = strip_comments_and_strings(content);
    std::string why;
    ++report.checks;
    if (!balanced(code, why))
    {
      finding(rel + ": " + why);
    }
    ++report.checks;
    std::regex const decl("\\bcontract\\s+" + name + "\\b");
    if (auto const n = count_matches(code, decl); n != 1)
    {
      finding(rel + ": 'contract " + name + "' declared " + std::to_string(n) + " times");
    }

    auto const role = a.value("role", std::string());
    if (role == "Data")
    {
      for (auto const &ctrl : controllers)
      {
        ++report.checks;
        if (count_matches(code, std::regex("\\b" + ctrl + "\\b")) != 0)
        {
          finding(rel + ": data contract references " + ctrl);
        }
      }
    }
    else if (role == "Controller")
    {
      auto const base = name.substr(0, name.size() - std::string_view("Controller").size());
      ++report.checks;
      if (count_matches(code, std::regex("\\b" + base + "Data\\s+private\\s+data\\b")) != 1)
      {
        finding(rel + ": controller does not hold its " + base + "Data by address");
      }
    }
  }

  nlohmann::json context;
  try
  {
    context = nlohmann::json::parse(read_text_file(out_dir / "context.json"));
  }
  catch (std::exception const &)
  {
    finding("context.json: unreadable");
    return report;
  }
  auto flag = [&](std::string const &feature) -> std::optional<bool> {
    if (!context.contains(feature) || !context.at(feature).is_boolean())
    {
      return std::nullopt;
    }
    return context.at(feature).get<bool>();
  };

  for (auto const &[feature, entries] : markers)
  {
    auto const on = flag(feature);
    if (!on)
    {
      finding("markers: feature " + feature + " not in context");
      continue;
    }
    for (auto const &m : entries)
    {
      ++report.checks;
      std::optional<bool> file_expected = true;
      if (m.file_gate)
      {
        file_expected = flag(*m.file_gate);
        if (!file_expected)
        {
          finding("markers: file gate " + *m.file_gate + " not in context");
          continue;
        }
      }
      fs::path const path  = out_dir / m.file;
      bool const     exist = fs::is_regular_file(path);
      if (!exist)
      {
        if (*file_expected)
        {
          finding(m.file + ": expected for " + feature + " but missing");
        }
        continue;
      }
      if (!*file_expected)
      {
        finding(m.file + ": present although " + *m.file_gate + " is deselected");
        continue;
      }
      bool const has = read_text_file(path).find(m.symbol) != std::string::npos;
      if (has != *on)
      {
        finding(m.file + ": '" + m.symbol + "' " + (has ? "present" : "absent") + " but " + feature + " is " +
                (*on ? "selected" : "deselected"));
      }
    }
  }
  return report;
}

VerificationReport verify_product_dir(fs::path const &out_dir, fs::path const &template_dir)
{
  auto const manifest_path = out_dir / "manifest.json";
  if (!fs::is_regular_file(manifest_path))
  {
    VerificationReport report;
    report.findings.push_back("manifest.json: missing");
    return report;
  }
  nlohmann::json manifest;
  try
  {
    manifest = nlohmann::json::parse(read_text_file(manifest_path));
  }
  catch (nlohmann::json::exception const &e)
  {
    VerificationReport report;
    report.findings.push_back(std::string("manifest.json: ") + e.what());
    return report;
  }
  return verify_product(manifest, out_dir, load_markers(template_dir));
}

}  // namespace tracespl
