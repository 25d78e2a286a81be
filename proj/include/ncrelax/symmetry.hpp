// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symmetry reduction by group averaging. Group elements are (1+N)x(1+N)
// matrices acting on the right of the row vector (1, x_1, ..., x_N): column j
// holds the image of basis element j. Elements are lifted to words of bounded
// length, averaged, and the average is factorized to find the reduced
// variables.

#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "ncrelax/matrix.hpp"

namespace ncr {

/// All elements of the group generated by gens (identity first). Throws
/// std::invalid_argument for malformed input and std::length_error past cap.
std::vector<Eigen::MatrixXd> dimino(const std::vector<Eigen::MatrixXd>& gens, std::size_t cap = 1000000);

/// Matrix of an element on the words of `basis`: column j holds the
/// coefficients of the image of basis[j]. Throws std::domain_error when an
/// image leaves the span of the basis.
Eigen::MatrixXd lift(const Context& ctx, const Eigen::MatrixXd& element, const std::vector<OperatorWord>& basis);

Eigen::MatrixXd group_average(const std::vector<Eigen::MatrixXd>& elements);

/// Full-pivot elimination, A(row_perm[i], col_perm[j]) = (L U)(i, j). A step
/// whose remaining row and column are both zero is skipped in place: its L
/// diagonal and U row stay zero. Otherwise the pivot is the largest remaining
/// entry, the diagonal winning ties.
struct LUReduction {
  Eigen::MatrixXd L;
  Eigen::MatrixXd U;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::vector<std::size_t> pivots;  // steps with a nonzero pivot, ascending
};

LUReduction lu_reduce(const Eigen::MatrixXd& A, double relative_threshold = 1e-10);

/// Maps a scenario onto the variables left after imposing a symmetry group.
class SymmetryReduction {
 public:
  SymmetryReduction(MatrixSystem& base, const std::vector<Eigen::MatrixXd>& generators, std::size_t max_word_length,
                    std::size_t cap = 1000000);

  const std::vector<Eigen::MatrixXd>& group() const { return group_; }
  const std::vector<OperatorWord>& basis() const { return basis_; }
  /// Mean of the lifted elements (column convention, as the elements).
  const Eigen::MatrixXd& average() const { return average_; }
  /// Factorization of average()^T, whose row i expresses the averaged
  /// moment of basis word i.
  const LUReduction& lu() const { return lu_; }

  MatrixSystem& reduced() { return reduced_; }
  const SymbolRegistry& reduced_registry() const { return reduced_.registry(); }
  /// Number of reduced symbols, the identity included.
  std::size_t reduced_count() const { return definitions_.size(); }
  /// Reduced symbol id and its definition over base moments.
  struct Definition {
    std::size_t id = 0;
    bool conjugated = false;
    Polynomial base;  // in the base registry
  };
  const std::vector<Definition>& definitions() const { return definitions_; }

  /// Averaged image of the moment of basis word i, over reduced symbols.
  const Polynomial& image(std::size_t i) const { return forward_.at(i); }

  /// Base-scenario objects to the reduced scenario. Throws
  /// std::out_of_range for moments outside the lifted basis.
  Polynomial transform(const Polynomial& p) const;
  SymbolicMatrix transform(const SymbolicMatrix& m) const;

 private:
  MatrixSystem* base_;
  std::vector<Eigen::MatrixXd> group_;
  std::vector<OperatorWord> basis_;
  std::unordered_map<std::vector<oper_t>, std::size_t, IndexVectorHash> index_;
  Eigen::MatrixXd average_;
  LUReduction lu_;
  MatrixSystem reduced_;
  std::vector<Definition> definitions_;
  std::vector<Polynomial> forward_;
};

}  // namespace ncr
