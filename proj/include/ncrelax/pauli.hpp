// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Qubit algebras: X, Y and Z per site with the Pauli product table, sites
// arranged as an unstructured set, a chain or a column-major lattice.

#pragma once

#include <string>
#include <vector>

#include "ncrelax/context.hpp"
#include "ncrelax/operator_polynomial.hpp"

namespace ncr {

enum class PauliTopology { unstructured, chain, lattice };

struct PauliSpec {
  PauliTopology topology = PauliTopology::chain;
  std::size_t qubits = 0;  // chain / unstructured
  std::size_t rows = 0;    // lattice
  std::size_t cols = 0;
  bool wrap = false;
  bool symmetrized = false;

  static PauliSpec chain(std::size_t n, bool wrap = false, bool symmetrized = false);
  static PauliSpec lattice(std::size_t rows, std::size_t cols, bool wrap = false, bool symmetrized = false);
};

class PauliContext : public Context {
 public:
  enum Axis : oper_t { X = 0, Y = 1, Z = 2 };

  explicit PauliContext(PauliSpec spec);

  const PauliSpec& spec() const { return spec_; }
  std::size_t qubits() const { return operator_count() / 3; }
  /// Zero-based qubit and axis.
  static oper_t op(std::size_t qubit, Axis axis) { return static_cast<oper_t>(3 * qubit + axis); }
  static std::size_t qubit_of(oper_t op) { return op / 3; }
  static Axis axis_of(oper_t op) { return static_cast<Axis>(op % 3); }

  /// Words whose qubits form a connected set when qubits at distance <= m
  /// (chains) or lattice neighbours (m = 1 only) are joined.
  WordFilter neighbour_filter(std::size_t m) const;
  bool neighbours(std::size_t a, std::size_t b, std::size_t m) const;

  /// Translation average over shifts valid for each term.
  OpPolynomial symmetrize(const OpPolynomial& p) const;
  /// Images of w under every valid translation (w itself included).
  std::vector<OperatorWord> translations(const OperatorWord& w) const;

  OperatorWord canonical_moment(const OperatorWord& w) const override;
  std::string operator_name(oper_t op) const override;
  std::string kind() const override { return "pauli"; }

 protected:
  void simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool& zero) const override;

 private:
  std::size_t row_of(std::size_t q) const { return q % spec_.rows; }
  std::size_t col_of(std::size_t q) const { return q / spec_.rows; }

  PauliSpec spec_;
};

}  // namespace ncr
