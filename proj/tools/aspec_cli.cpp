// Batch runner: load scenarios, run checks, write a report.
//
// Exit codes: 0 all checks passed or were not applicable, 1 some check failed or
// errored, 2 bad arguments or an unreadable scenario file.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aspec/runner.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

aspec::Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw aspec::InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return aspec::parse_scenario(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check coprime-action generation and Lie-ring statements on small permutation groups"};
  std::vector<std::string> scenario_paths;
  std::vector<std::string> builtin;
  bool all_builtin = false;
  bool list = false;
  std::string checks_arg;
  std::size_t max_order = 0;
  std::string format = "json";
  std::string out_path;
  std::size_t jobs = 1;
  std::string emit_dir;
  bool no_timings = false;

  app.add_option("--scenario", scenario_paths, "Scenario JSON file (repeatable)");
  app.add_option("--builtin", builtin, "Built-in scenario name or family (repeatable)");
  app.add_flag("--all-builtin", all_builtin, "Run every built-in scenario");
  app.add_flag("--list", list, "List built-in scenarios and exit");
  app.add_option("--checks", checks_arg, "Comma-separated check names or 'all' (default: the scenario's list)");
  app.add_option("--max-order", max_order, "Element cap for group enumeration (falls back to ASPEC_MAX_ORDER)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads across scenarios")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", no_timings, "Omit per-check timings from JSON output");
  app.add_option("--emit-scenarios", emit_dir, "Write the selected scenarios as JSON files into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& s : aspec::builtin_scenarios())
      std::cout << s.name << "  (family " << s.family << ", |A| = " << s.q << "^" << s.r << ")\n";
    return 0;
  }

  aspec::RunOptions opt;
  if (max_order == 0)
    if (const char* env = std::getenv("ASPEC_MAX_ORDER")) {
      try {
        max_order = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: ASPEC_MAX_ORDER is not a number\n";
        return 2;
      }
    }
  if (max_order != 0) opt.cap = max_order;
  opt.jobs = jobs;
  if (!checks_arg.empty() && checks_arg != "all") {
    for (const auto& c : split_list(checks_arg)) {
      if (!aspec::is_check_name(c)) {
        std::cerr << "error: unknown check \"" << c << "\"\n";
        return 2;
      }
      opt.checks.push_back(c);
    }
  } else if (checks_arg == "all") {
    opt.checks = aspec::check_names();
  }

  std::vector<aspec::Scenario> scenarios;
  for (const auto& path : scenario_paths) {
    try {
      scenarios.push_back(load_scenario(path));
    } catch (const std::exception& e) {
      std::cerr << "error: " << path << ": " << e.what() << '\n';
      return 2;
    }
  }
  if (all_builtin) {
    auto all = aspec::builtin_scenarios();
    scenarios.insert(scenarios.end(), all.begin(), all.end());
  }
  for (const auto& key : builtin) {
    auto found = aspec::select_builtin(key);
    if (found.empty()) {
      std::cerr << "error: no built-in scenario or family named \"" << key << "\"\n";
      return 2;
    }
    scenarios.insert(scenarios.end(), found.begin(), found.end());
  }
  if (scenarios.empty() && emit_dir.empty()) {
    std::cerr << "error: nothing to run; use --scenario, --builtin or --all-builtin\n";
    return 2;
  }

  if (!emit_dir.empty()) {
    std::filesystem::create_directories(emit_dir);
    if (scenarios.empty()) scenarios = aspec::builtin_scenarios();
    for (const auto& s : scenarios) {
      std::ofstream f(std::filesystem::path(emit_dir) / (s.name + ".json"));
      f << aspec::to_json(s).dump(2) << '\n';
    }
    if (scenario_paths.empty() && builtin.empty() && !all_builtin) return 0;
  }

  aspec::Report report = aspec::run_all(scenarios, opt);
  const auto fmt = format == "text" ? aspec::ReportFormat::text : aspec::ReportFormat::json;
  const std::string text = aspec::emit(report, fmt, !no_timings);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 2;
    }
    f << text;
  }
  return aspec::exit_code(report);
}
