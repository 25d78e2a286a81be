// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Semidefinite programs over moment slots: assembly from symbolic objects,
// an embedded primal-dual interior-point solver, evaluation at a solution,
// and SDPA / JSON export.

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncrelax/matrix.hpp"

namespace ncr {

enum class Sense { minimize, maximize, feasibility };
std::string to_string(Sense s);

struct SdpVariable {
  std::size_t slot = 0;
  bool imaginary = false;
  std::string label;
};

/// Real symmetric matrix in coordinate form; both triangles stored, sorted
/// by (row, col).
struct SymmetricSparse {
  std::size_t dim = 0;
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
};

/// F0 + sum_v y_v F_v >= 0.
struct SdpBlock {
  std::string label;
  std::size_t dim = 0;
  bool embedded = false;  // complex Hermitian block stored as its real embedding
  SymmetricSparse constant;
  std::vector<std::pair<std::size_t, SymmetricSparse>> terms;  // (variable, F_v), ascending variable
};

struct LinearConstraint {
  std::vector<std::pair<std::size_t, double>> coefficients;
  double rhs = 0.0;  // sum c_v y_v = rhs
};

struct SdpProblem {
  Sense sense = Sense::maximize;
  std::vector<SdpVariable> variables;
  std::vector<double> objective;  // per variable
  double objective_constant = 0.0;
  std::vector<SdpBlock> blocks;
  std::vector<LinearConstraint> equalities;
  std::optional<std::size_t> normalization;  // variable pinned to 1

  std::size_t real_variable_count() const;
  std::size_t imaginary_variable_count() const;
};

struct AssemblyOptions {
  Sense sense = Sense::maximize;
  bool real_only = false;
  bool normalize = true;
};

/// Assemble from objects of one registry. Assigns basis slots; only slots
/// that occur become variables. Throws std::invalid_argument for
/// non-Hermitian PSD matrices or symbols without slots.
SdpProblem assemble(SymbolRegistry& registry, const Polynomial& objective,
                    const std::vector<const SymbolicMatrix*>& psd, const std::vector<Polynomial>& equalities,
                    const AssemblyOptions& options);

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit, numerical_failure };
std::string to_string(SolveStatus s);

struct SolverOptions {
  std::size_t max_iterations = 200;
  double gap_tolerance = 1e-8;
  double feasibility_tolerance = 1e-8;
  std::size_t max_block_dimension = 350;
  double feasibility_threshold = -1e-7;
  bool verbose = false;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  double objective = 0.0;     // including the constant; t* in feasibility mode
  bool feasible = false;      // feasibility mode verdict
  std::vector<double> values; // per problem variable
  std::vector<double> real_slots;
  std::vector<double> imag_slots;
  double relative_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<double> block_min_eigenvalues;
  std::size_t iterations = 0;
  std::string message;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws SolverError when a block exceeds the dimension cap.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

/// Generic standard form: maximize b.y subject to C - sum y_i A_i >= 0
/// (one list of blocks; matrices dense symmetric). Exposed for testing.
struct DenseSdp {
  std::vector<Eigen::MatrixXd> C;
  std::vector<std::vector<Eigen::MatrixXd>> A;  // A[i][block]
  Eigen::VectorXd b;
};
struct DenseSdpResult {
  SolveStatus status = SolveStatus::numerical_failure;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> X;
  double primal_objective = 0.0;  // <C, X>
  double dual_objective = 0.0;    // b.y
  double relative_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::size_t iterations = 0;
};
DenseSdpResult solve_dense(const DenseSdp& sdp, const SolverOptions& options = {});

/// Numeric value of a polynomial at a solution.
cplx evaluate(const SymbolRegistry& registry, const Polynomial& p, const SdpSolution& s);
/// Numeric matrix at a solution.
Eigen::MatrixXcd evaluate(const SymbolRegistry& registry, const SymbolicMatrix& m, const SdpSolution& s);

/// Assemble and solve; an empty objective means a feasibility test.
struct SimpleResult {
  SdpSolution solution;
  double value = 0.0;
  bool feasible = false;
};
SimpleResult solve_simple(SymbolRegistry& registry, const std::vector<const SymbolicMatrix*>& psd,
                          const std::optional<Polynomial>& objective, Sense sense = Sense::maximize,
                          bool real_only = false, const SolverOptions& options = {});

/// SDPA sparse format. Minimizes, so a maximization objective is negated;
/// equalities become a diagonal block of paired inequalities.
void write_sdpa(const SdpProblem& problem, std::ostream& out);
std::string to_sdpa(const SdpProblem& problem);
/// JSON dump of variables, objective, blocks and equalities.
std::string to_json(const SdpProblem& problem);
std::string to_json(const SdpProblem& problem, const SdpSolution& solution);

}  // namespace ncr
