// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration documents, the jobs built from them, and the
// command implementations behind the ncrelax executable.

#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncrelax/imported.hpp"
#include "ncrelax/inflation.hpp"
#include "ncrelax/locality.hpp"
#include "ncrelax/matrix.hpp"
#include "ncrelax/moment_rules.hpp"
#include "ncrelax/sdp.hpp"
#include "ncrelax/symmetry.hpp"

namespace ncr::cli {

/// Schema violation; path is a JSON pointer into the document.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct LocalizingConfig {
  std::string polynomial;
  std::size_t level = 0;

  bool operator==(const LocalizingConfig&) const = default;
};

struct ObjectiveConfig {
  std::string type = "none";  // none, polynomial, cg, fc, imported
  std::string polynomial;
  std::vector<std::size_t> shape;  // cg / fc tensors, row-major
  std::vector<double> data;
  std::vector<std::string> tokens;  // imported
  Sense sense = Sense::maximize;

  bool operator==(const ObjectiveConfig&) const = default;
};

struct SymmetryConfig {
  std::vector<std::vector<std::vector<double>>> generators;
  std::size_t max_word_length = 2;

  bool operator==(const SymmetryConfig&) const = default;
};

struct SolveConfig {
  bool real_only = false;
  double tolerance = 1e-8;
  std::size_t max_block_dimension = 350;

  bool operator==(const SolveConfig&) const = default;
};

struct ScenarioConfig {
  std::string kind;  // locality, algebraic, pauli, inflation, imported
  std::size_t level = 1;
  std::size_t neighbours = 0;

  // locality
  std::vector<Party> parties;

  // algebraic
  std::vector<std::string> operators;
  bool hermitian = true;
  std::vector<std::pair<std::string, std::string>> rules;
  std::vector<std::string> projectors;
  std::vector<std::pair<std::string, std::string>> commuting;
  std::size_t max_new_rules = 128;
  bool log_completion = false;

  // pauli
  std::string topology = "chain";  // chain, lattice, unstructured
  std::size_t qubits = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool wrap = false;
  bool symmetrized = false;

  // inflation
  std::vector<Observable> observables;
  std::vector<std::vector<std::size_t>> sources;
  std::size_t inflation_level = 1;
  std::vector<double> distribution;

  // imported
  std::vector<std::vector<std::string>> matrix;
  std::string import_mode = "hermitian";  // hermitian, symmetric, general
  bool real = false;

  std::vector<LocalizingConfig> localizing;
  std::vector<std::string> constraints;  // operator polynomials with zero expectation
  ObjectiveConfig objective;
  std::optional<SymmetryConfig> symmetry;
  SolveConfig solve;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
std::string render_config(const ScenarioConfig& config);

/// One SDP of a job: PSD matrices, optional objective, equalities.
struct ProblemSpec {
  std::string name;
  SymbolRegistry* registry = nullptr;
  std::vector<SymbolicMatrix> psd;
  std::vector<Polynomial> equalities;
  std::optional<Polynomial> objective;
  Sense sense = Sense::maximize;
  bool real_only = false;

  SdpProblem assemble() const;
};

/// A built scenario with the objects its problems refer to.
struct Job {
  std::string title;
  std::vector<ScenarioConfig> configs;
  std::vector<std::shared_ptr<const Context>> contexts;
  std::vector<std::unique_ptr<MatrixSystem>> systems;
  std::vector<std::unique_ptr<ImportedScenario>> imported;
  std::vector<std::unique_ptr<SymmetryReduction>> reductions;
  std::vector<std::unique_ptr<MomentRulebook>> rulebooks;
  std::vector<std::string> notes;  // completion logs and similar
  std::vector<ProblemSpec> problems;
  SolverOptions solver;
};

std::unique_ptr<Job> build_job(const ScenarioConfig& config);

/// Names of the built-in examples.
const std::vector<std::string>& example_names();
/// Configuration of an example that is expressible as one document.
std::optional<ScenarioConfig> example_config(const std::string& name);
/// level 0 keeps the example's default. Throws std::invalid_argument for
/// unknown names.
std::unique_ptr<Job> build_example(const std::string& name, std::size_t level = 0);

/// SDPA or JSON text for every problem of the job.
std::string generate_text(const Job& job, const std::string& format);
/// Slot and constraint counts, one line per problem.
std::string generate_summary(const Job& job);

std::string describe(Job& job);

struct SolveReport {
  std::string text;
  int exit_code = 0;
  std::vector<SdpSolution> solutions;
};
SolveReport solve_job(const Job& job);

struct BenchRow {
  std::string phase;
  double trimmed_mean_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
};
/// Set-up timings over repeats, fastest and slowest runs removed from the
/// mean. solve adds the solver phase.
std::vector<BenchRow> bench(const std::function<std::unique_ptr<Job>()>& build, std::size_t repeats, bool solve);
std::string format_bench(const std::vector<BenchRow>& rows);

/// CHSH relabelling symmetries (party swap, input swaps, output flips) that
/// leave the correlator expression invariant, as matrices on (1, a0, a1, b0, b1).
std::vector<Eigen::MatrixXd> chsh_symmetry_generators();

}  // namespace ncr::cli
