// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbol table: one entry per distinct moment, keyed by the shortlex-lower
// of a word and its conjugate. Entries carry Hermiticity and the real and
// imaginary basis slots used when a symbolic matrix is decomposed.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncrelax/context.hpp"
#include "ncrelax/polynomial.hpp"

namespace ncr {

struct SymbolEntry {
  std::size_t id = 0;
  OperatorWord word;            // phase-free representative (plain symbols)
  OperatorWord conjugate_word;  // canonical form of word's adjoint, with phase
  bool has_word = false;
  bool defined = true;  // false for gaps left by explicitly numbered symbols
  bool hermitian = false;
  bool antihermitian = false;
  std::optional<std::size_t> real_slot;
  std::optional<std::size_t> imag_slot;
  std::vector<std::size_t> factors;  // composite moments: product of these symbols
  std::string name;                  // named symbols (imported, reduced)
  std::vector<std::uint32_t> order_key;

  bool is_composite() const { return factors.size() > 1; }
};

class SymbolRegistry {
 public:
  /// ctx may be null for registries holding only named symbols.
  explicit SymbolRegistry(const Context* ctx, double zero_tolerance = 1e-12);

  const Context* context() const { return ctx_; }
  double tolerance() const { return tolerance_; }

  std::size_t size() const { return entries_.size(); }
  const SymbolEntry& operator[](std::size_t id) const { return entries_.at(id); }
  const std::vector<SymbolEntry>& entries() const { return entries_; }

  /// Find or insert the moment of w. The returned monomial carries w's phase
  /// (and any phase relating w to the stored representative).
  Monomial register_word(const OperatorWord& w);
  /// Lookup without insertion.
  std::optional<Monomial> find_word(const OperatorWord& w) const;

  /// Product of moments. Factors are sorted; a single factor collapses to
  /// itself. Factors must be Hermitian symbols.
  std::size_t register_composite(std::vector<std::size_t> factors);
  std::optional<std::size_t> find_composite(std::vector<std::size_t> factors) const;

  /// Named symbol with a fixed id (ids may skip). Used by imported and
  /// reduced scenarios. Re-registering the same id returns it unchanged.
  std::size_t register_named(std::size_t id, const std::string& name, bool hermitian, bool antihermitian = false);
  /// Update realness of an existing named symbol.
  void set_hermitian(std::size_t id, bool hermitian);

  /// Assign slots by ascending id. Returns (real_count, imag_count).
  std::pair<std::size_t, std::size_t> assign_basis_slots();
  std::size_t real_slot_count() const { return real_count_; }
  std::size_t imag_slot_count() const { return imag_count_; }

  /// <_sym on monomials (coefficients ignored): -1, 0 or 1.
  int compare(const Monomial& a, const Monomial& b) const;
  int compare_symbols(std::size_t a, std::size_t b) const;
  /// Polynomial order: leading terms first, missing terms count as zero.
  int compare(const Polynomial& a, const Polynomial& b) const;

  Polynomial normalize(std::vector<Monomial> terms) const;
  Polynomial normalize(const Polynomial& p) const { return normalize(p.terms); }
  Monomial normalize_monomial(Monomial m) const;
  Polynomial add(const Polynomial& a, const Polynomial& b) const;
  Polynomial scale(const Polynomial& a, cplx c) const;
  Polynomial conjugate(const Polynomial& p) const;
  Monomial conjugate(const Monomial& m) const;
  Polynomial constant(cplx c) const;  // c * <1>
  /// Real and imaginary parts: (p + p*)/2 and (p - p*)/(2i).
  Polynomial real_part(const Polynomial& p) const;
  Polynomial imag_part(const Polynomial& p) const;
  bool is_scalar(const Polynomial& p) const;  // empty or only <1>
  bool is_hermitian(const Polynomial& p) const;

  std::string symbol_string(std::size_t id) const;
  std::string format(const Monomial& m, bool first = true) const;
  std::string format(const Polynomial& p) const;
  /// Tabular dump: id, word, conjugate, R/I flags.
  std::string table() const;

 private:
  struct Alias {
    std::size_t id;
    bool conjugated;
    Phase phase;
  };
  std::size_t push(SymbolEntry e);
  std::uint64_t key_of(const OperatorWord& w) const;

  const Context* ctx_;
  double tolerance_;
  std::vector<SymbolEntry> entries_;
  std::unordered_map<std::uint64_t, Alias> words_;
  std::unordered_map<std::vector<oper_t>, std::size_t, IndexVectorHash> composites_;
  std::unordered_map<std::size_t, std::size_t> named_;  // user id -> same id (presence)
  std::size_t real_count_ = 0;
  std::size_t imag_count_ = 0;
};

}  // namespace ncr
