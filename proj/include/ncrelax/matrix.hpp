// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbolic matrices of moment polynomials, their decomposition into basis
// matrices, and the per-scenario factory that generates and caches them.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ncrelax/context.hpp"
#include "ncrelax/operator_polynomial.hpp"
#include "ncrelax/polynomial.hpp"
#include "ncrelax/registry.hpp"

namespace ncr {

enum class MatrixKind { moment, localizing, commutator, anticommutator, extended, derived, imported };
std::string to_string(MatrixKind kind);

struct SparseEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  cplx value;
};

/// Coordinate list sorted by (row, col), no duplicates, no zeros.
struct SparseMatrix {
  std::size_t dim = 0;
  std::vector<SparseEntry> entries;

  bool is_real(double tol = 0.0) const;
};

/// M = sum_s a_s A_s + sum_s b_s B_s, where a_s and b_s are the real and
/// imaginary parts of the moment owning slot s.
struct BasisDecomposition {
  std::size_t dim = 0;
  std::map<std::size_t, SparseMatrix> real_parts;
  std::map<std::size_t, SparseMatrix> imag_parts;

  /// True if any basis matrix has a nonzero imaginary entry.
  bool complex_valued() const;
};

class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  SymbolicMatrix(std::size_t dim, MatrixKind kind) : dim_(dim), kind_(kind), entries_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  MatrixKind kind() const { return kind_; }
  void set_kind(MatrixKind k) { kind_ = k; }
  std::size_t level() const { return level_; }
  void set_level(std::size_t l) { level_ = l; }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }
  bool hermitian() const { return hermitian_; }
  void set_hermitian(bool h) { hermitian_ = h; }

  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  /// Entry (j,i) equals the conjugate of entry (i,j) everywhere.
  bool structurally_hermitian(const SymbolRegistry& reg) const;
  std::string render(const SymbolRegistry& reg) const;

 private:
  std::size_t dim_ = 0;
  MatrixKind kind_ = MatrixKind::moment;
  std::size_t level_ = 0;
  std::string label_;
  bool hermitian_ = true;
  std::vector<Polynomial> entries_;
};

/// Requires assign_basis_slots() on the registry; throws std::logic_error for
/// symbols without slots.
BasisDecomposition decompose(const SymbolicMatrix& m, const SymbolRegistry& reg);

SymbolicMatrix add(const SymbolicMatrix& a, const SymbolicMatrix& b, const SymbolRegistry& reg);
SymbolicMatrix scale(const SymbolicMatrix& a, cplx c, const SymbolRegistry& reg);
/// Principal submatrix on the given indices.
SymbolicMatrix submatrix(const SymbolicMatrix& a, const std::vector<std::size_t>& indices);

/// Owns the registry of one scenario and caches generated matrices.
class MatrixSystem {
 public:
  explicit MatrixSystem(std::shared_ptr<const Context> ctx, double zero_tolerance = 1e-12);

  const Context& context() const;
  std::shared_ptr<const Context> context_ptr() const { return ctx_; }
  SymbolRegistry& registry() { return registry_; }
  const SymbolRegistry& registry() const { return registry_; }

  const Dictionary& dictionary(std::size_t L, const WordFilter& filter = {});

  using MatrixHandle = std::shared_ptr<const SymbolicMatrix>;
  MatrixHandle moment_matrix(std::size_t L, const WordFilter& filter = {});
  MatrixHandle localizing_matrix(const OpPolynomial& v, std::size_t L, const WordFilter& filter = {});
  MatrixHandle commutator_matrix(const OpPolynomial& k, std::size_t L, const WordFilter& filter = {});
  MatrixHandle anticommutator_matrix(const OpPolynomial& k, std::size_t L, const WordFilter& filter = {});
  /// Moment matrix bordered by one row and column per extension symbol.
  MatrixHandle extended_matrix(std::size_t L, const std::vector<std::size_t>& extension,
                               const WordFilter& filter = {});

  Polynomial moment(const OperatorWord& w);
  Polynomial expectation(const OpPolynomial& p);

  std::size_t cache_size() const;

 private:
  struct TermList {
    std::vector<std::pair<cplx, OperatorWord>> terms;
  };
  using Generator = std::function<void(std::size_t, std::size_t, TermList&)>;

  MatrixHandle generate(const std::string& key, MatrixKind kind, std::size_t L, const WordFilter& filter,
                        const Generator& gen);
  const Dictionary& dictionary_locked(std::size_t L, const WordFilter& filter);

  std::shared_ptr<const Context> ctx_;
  SymbolRegistry registry_;
  std::map<std::string, Dictionary> dictionaries_;
  std::map<std::string, std::vector<OperatorWord>> conjugates_;
  std::map<std::string, MatrixHandle> cache_;
  mutable std::recursive_mutex mutex_;
};

}  // namespace ncr
