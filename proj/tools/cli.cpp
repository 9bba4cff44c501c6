// Copyright 2026 The progbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "progbox/scenarios.hpp"

namespace progbox::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kCsvHeader =
    "scenario,mode,method,analytic,paper_value,mc_estimate,mc_stderr,cross_talk,pass";

std::string optional12(const std::optional<double>& x, const char* missing) {
  return x ? format12(*x) : std::string(missing);
}

nlohmann::ordered_json to_json(const ScenarioResult& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.id;
  j["mode"] = std::string(to_string(r.mode));
  j["method"] = std::string(to_string(r.method));
  j["analytic"] = round12(r.analytic);
  j["paper_value"] = round12(r.paper_value);
  j["tolerance"] = round12(r.tolerance);
  j["mc_estimate"] = r.mc_estimate ? nlohmann::ordered_json(round12(*r.mc_estimate)) : nullptr;
  j["mc_stderr"] = r.mc_stderr ? nlohmann::ordered_json(round12(*r.mc_stderr)) : nullptr;
  j["cross_talk"] = round12(r.cross_talk);
  j["pass"] = r.pass;
  j["citation"] = r.citation;
  j["metadata"] = r.metadata;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"value", round12(c.value)},
                      {"expected", round12(c.expected)},
                      {"tolerance", round12(c.tolerance)},
                      {"pass", c.pass}});
  }
  j["checks"] = std::move(checks);
  return j;
}

void print_json(const CliConfig& cfg, const std::vector<ScenarioResult>& results,
                std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["method"] = std::string(to_string(cfg.method));
  doc["samples"] = cfg.samples;
  doc["seed"] = cfg.seed;
  doc["quadrature_nodes"] = cfg.quadrature_nodes;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const ScenarioResult& r : results) {
    records.push_back(to_json(r));
    passed += r.pass ? 1 : 0;
  }
  doc["records"] = std::move(records);
  doc["passed"] = passed;
  doc["total"] = results.size();
  out << doc.dump(2) << '\n';
}

void print_csv(const std::vector<ScenarioResult>& results, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ScenarioResult& r : results) {
    out << r.id << ',' << to_string(r.mode) << ',' << to_string(r.method) << ','
        << format12(r.analytic) << ',' << format12(r.paper_value) << ','
        << optional12(r.mc_estimate, "") << ',' << optional12(r.mc_stderr, "") << ','
        << format12(r.cross_talk) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void print_table(const std::vector<ScenarioResult>& results, std::ostream& out) {
  const std::vector<std::string> head{"scenario",   "mode",      "method",     "analytic", "reference",
                                      "mc_estimate", "mc_stderr", "cross_talk", "pass"};
  std::vector<std::vector<std::string>> rows{head};
  std::size_t passed = 0;
  for (const ScenarioResult& r : results) {
    rows.push_back({r.id, std::string(to_string(r.mode)), std::string(to_string(r.method)),
                    format12(r.analytic), format12(r.paper_value), optional12(r.mc_estimate, "-"),
                    optional12(r.mc_stderr, "-"), format12(r.cross_talk),
                    r.pass ? "PASS" : "FAIL"});
    passed += r.pass ? 1 : 0;
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c])) << row[c]
          << (c + 1 < row.size() ? "  " : "\n");
    }
  }
  out << passed << '/' << results.size() << " scenarios passed\n";
}

std::pair<std::string, double> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("--tolerance expects <id>=<value>, got '" + text + "'");
  }
  const std::string value = text.substr(eq + 1);
  char* end = nullptr;
  const double tol = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || !(tol >= 0.0)) {
    throw UsageError("--tolerance value must be a non-negative number, got '" + value + "'");
  }
  return {text.substr(0, eq), tol};
}

void validate(CliConfig& cfg, const std::vector<std::string>& overrides) {
  if (cfg.list) return;
  if (cfg.all == !cfg.scenario_ids.empty()) {
    throw UsageError("select scenarios with exactly one of --all or --scenario");
  }
  if (cfg.method == AveragingMethod::MonteCarlo && cfg.samples == 0) {
    throw UsageError("--method monte_carlo requires --samples N with N > 0");
  }
  if (cfg.method != AveragingMethod::MonteCarlo && cfg.samples != 0) {
    throw UsageError("--samples is only valid with --method monte_carlo");
  }
  const auto& known = scenario_ids();
  auto is_known = [&](const std::string& id) {
    return std::find(known.begin(), known.end(), id) != known.end();
  };
  for (const std::string& id : cfg.scenario_ids) {
    if (!is_known(id)) throw UsageError("unknown scenario id '" + id + "'");
  }
  for (const std::string& text : overrides) {
    auto [id, tol] = parse_override(text);
    if (!is_known(id)) throw UsageError("unknown scenario id '" + id + "' in --tolerance");
    cfg.tolerance_overrides[id] = tol;
  }
  if (cfg.all) cfg.scenario_ids = known;
}

std::vector<ScenarioResult> execute(const CliConfig& cfg) {
  ScenarioRunOptions options;
  options.method = cfg.method;
  options.mc_samples = cfg.samples;
  options.seed = cfg.seed;
  options.quadrature_nodes = cfg.quadrature_nodes;
  std::vector<std::future<ScenarioResult>> futures;
  for (const std::string& id : cfg.scenario_ids) {
    futures.push_back(std::async(std::launch::async, [&cfg, id, options] {
      Scenario s = build_scenario(id);
      if (auto it = cfg.tolerance_overrides.find(id); it != cfg.tolerance_overrides.end()) {
        s.reference.tolerance = it->second;
      }
      return run_scenario(s, options);
    }));
  }
  std::vector<ScenarioResult> results;
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  std::string method = "design";
  std::string format = "table";
  std::vector<std::string> overrides;

  CLI::App app{"Simulate and verify black-box unitary discrimination strategies", "progbox"};
  app.add_flag("--all", cfg.all, "Run every registered scenario");
  app.add_option("--scenario", cfg.scenario_ids, "Scenario id (repeatable)")->take_all();
  app.add_option("--method", method, "Averaging engine")
      ->check(CLI::IsMember({"design", "quadrature", "monte_carlo"}));
  app.add_option("--samples", cfg.samples, "Monte Carlo draws per scenario");
  app.add_option("--seed", cfg.seed, "Monte Carlo seed");
  app.add_option("--nodes", cfg.quadrature_nodes, "Gauss-Legendre nodes per angle (>= 8)")
      ->check(CLI::Range(std::size_t{8}, std::size_t{4096}));
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_flag("--list", cfg.list, "Print scenario ids with citations");
  app.add_option("--tolerance", overrides, "Override a scenario's reference tolerance: <id>=<value>");

  try {
    app.parse(argc, argv);
    cfg.method = *parse_averaging_method(method);
    cfg.format = format == "json" ? OutputFormat::Json
                 : format == "csv" ? OutputFormat::Csv
                                   : OutputFormat::Table;
    validate(cfg, overrides);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (cfg.list) {
    for (const std::string& id : scenario_ids()) {
      out << id << '\t' << build_scenario(id).citation << '\n';
    }
    return kExitPass;
  }

  std::vector<ScenarioResult> results;
  try {
    results = execute(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }

  switch (cfg.format) {
    case OutputFormat::Json: print_json(cfg, results, out); break;
    case OutputFormat::Csv: print_csv(results, out); break;
    case OutputFormat::Table: print_table(results, out); break;
  }

  bool all_pass = true;
  for (const ScenarioResult& r : results) {
    if (r.pass) continue;
    all_pass = false;
    err << "FAIL " << r.id << ": |analytic - paper_value| = "
        << format12(std::abs(r.analytic - r.paper_value)) << " (tolerance "
        << format12(r.tolerance) << ")\n";
    for (const Check& c : r.checks) {
      if (!c.pass) {
        err << "  check '" << c.name << "': value " << format12(c.value) << ", expected "
            << format12(c.expected) << '\n';
      }
    }
  }
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace progbox::cli
