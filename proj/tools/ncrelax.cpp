// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// ncrelax: moment-matrix relaxations from scenario files.
//
// Exit codes: 0 success or feasible, 1 infeasible, 2 usage or schema error,
// 3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ncrelax/cli.hpp"
#include "ncrelax/parallel.hpp"

namespace {

using namespace ncr;
using namespace ncr::cli;

struct Overrides {
  std::optional<std::size_t> level;
  std::optional<std::size_t> neighbours;
  bool real_only = false;
  std::optional<double> tolerance;
  std::optional<std::size_t> max_new_rules;
  bool log_completion = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--level", level, "Hierarchy level (moment-matrix word length)");
    cmd->add_option("--neighbours", neighbours, "Pauli neighbour filter distance (0 = none)");
    cmd->add_flag("--real-only", real_only, "Drop imaginary parts of moments");
    cmd->add_option("--tolerance", tolerance, "Solver gap and feasibility tolerance");
    cmd->add_option("--max-new-rules", max_new_rules, "Rewrite-rule completion cap");
    cmd->add_flag("--log-completion", log_completion, "Record each completion step");
  }

  void apply(ScenarioConfig& c) const {
    if (level) {
      c.level = *level;
      for (auto& l : c.localizing) {
        if (l.level > c.level) l.level = c.level;
      }
    }
    if (neighbours) c.neighbours = *neighbours;
    if (real_only) c.solve.real_only = true;
    if (tolerance) c.solve.tolerance = *tolerance;
    if (max_new_rules) c.max_new_rules = *max_new_rules;
    if (log_completion) c.log_completion = true;
  }
};

std::unique_ptr<Job> load_job(const std::string& config_path, const std::string& example, const Overrides& o) {
  if (!example.empty()) {
    if (auto cfg = example_config(example)) {
      o.apply(*cfg);
      if (example == "pna" && o.level) cfg->localizing.front().level = *o.level ? *o.level - 1 : 0;
      auto job = build_job(*cfg);
      job->title = example;
      return job;
    }
    return build_example(example, o.level.value_or(0));
  }
  if (config_path.empty()) throw CLI::ValidationError("a config file or --example is required");
  ScenarioConfig cfg = load_config(config_path);
  o.apply(cfg);
  return build_job(cfg);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncrelax: moment-matrix relaxations for noncommutative polynomial optimization"};
  app.require_subcommand(1);
  std::optional<std::size_t> threads;
  app.add_option("--threads", threads, "Worker threads (default: NCRELAX_THREADS or 1)");

  Overrides ov;
  std::string config_path, example, format = "sdpa", out_path;
  std::size_t repeats = 10;
  bool bench_solve = false;

  auto* describe_cmd = app.add_subcommand("describe", "Print alphabet, dictionary, symbols and matrices");
  describe_cmd->add_option("config", config_path, "Scenario config (JSON)");
  describe_cmd->add_option("--example", example, "Built-in example instead of a config");
  ov.add_to(describe_cmd);

  auto* generate_cmd = app.add_subcommand("generate", "Write the SDP in SDPA or JSON form");
  generate_cmd->add_option("config", config_path, "Scenario config (JSON)");
  generate_cmd->add_option("--example", example, "Built-in example instead of a config");
  generate_cmd->add_option("--format", format, "sdpa or json")->check(CLI::IsMember({"sdpa", "json"}));
  generate_cmd->add_option("--out", out_path, "Output file (default stdout)");
  ov.add_to(generate_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Solve with the embedded interior-point solver");
  solve_cmd->add_option("config", config_path, "Scenario config (JSON)");
  solve_cmd->add_option("--example", example, "Built-in example instead of a config");
  solve_cmd->add_option("--out", out_path, "Write the solution as JSON");
  ov.add_to(solve_cmd);

  auto* example_cmd = app.add_subcommand("example", "Run a built-in example");
  example_cmd->add_option("name", example, "Example name")->required()->check(CLI::IsMember(example_names()));
  ov.add_to(example_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Time problem set-up (trimmed mean over repeats)");
  bench_cmd->add_option("config", config_path, "Scenario config (JSON)");
  bench_cmd->add_option("--example", example, "Built-in example instead of a config");
  bench_cmd->add_option("--repeats", repeats, "Number of runs");
  bench_cmd->add_flag("--solve", bench_solve, "Include the solver phase");
  ov.add_to(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (threads) set_thread_count(std::max<std::size_t>(*threads, 1));

  try {
    if (*describe_cmd) {
      auto job = load_job(config_path, example, ov);
      std::cout << describe(*job);
      return 0;
    }
    if (*generate_cmd) {
      auto job = load_job(config_path, example, ov);
      write_output(generate_text(*job, format), out_path);
      std::cerr << generate_summary(*job);
      return 0;
    }
    if (*solve_cmd || *example_cmd) {
      auto job = load_job(config_path, example, ov);
      std::cout << job->title << "\n" << generate_summary(*job);
      const SolveReport rep = solve_job(*job);
      std::cout << rep.text;
      if (!out_path.empty()) {
        std::string text = "[\n";
        for (std::size_t i = 0; i < job->problems.size(); ++i) {
          if (i) text += ",\n";
          text += to_json(job->problems[i].assemble(), rep.solutions[i]);
        }
        write_output(text + "]\n", out_path);
      }
      return rep.exit_code;
    }
    if (*bench_cmd) {
      auto rows = bench([&] { return load_job(config_path, example, ov); }, repeats, bench_solve);
      std::cout << format_bench(rows);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InconsistentConstraints& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
