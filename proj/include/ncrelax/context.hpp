// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "ncrelax/word.hpp"

namespace ncr {

/// Per-scenario operator algebra. Implementations supply simplify(); the
/// remaining operations are derived from it.
class Context {
 public:
  explicit Context(std::size_t operator_count) : operator_count_(operator_count) {}
  virtual ~Context() = default;

  std::size_t operator_count() const { return operator_count_; }
  std::size_t size() const { return operator_count_; }

  /// True when every operator is its own adjoint.
  virtual bool hermitian_alphabet() const { return true; }
  virtual oper_t adjoint(oper_t op) const { return op; }

  /// Canonical form of a raw index sequence (carrying an initial phase).
  /// Throws std::out_of_range on a bad index.
  OperatorWord simplify(std::vector<oper_t> raw, Phase phase = {}) const;
  OperatorWord simplify(const OperatorWord& w) const;
  OperatorWord simplify(std::initializer_list<oper_t> raw) const { return simplify(std::vector<oper_t>(raw)); }

  OperatorWord multiply(const OperatorWord& a, const OperatorWord& b) const;
  OperatorWord conjugate(const OperatorWord& w) const;

  /// Moment-level canonical representative. Identity unless the scenario
  /// identifies moments beyond operator relations (symmetrization, inflation).
  virtual OperatorWord canonical_moment(const OperatorWord& w) const { return w; }

  /// Split a canonical word into independent factors. Identity by default.
  virtual bool can_factorize() const { return false; }
  virtual std::vector<OperatorWord> factorize(const OperatorWord& w) const { return {w}; }

  virtual std::string operator_name(oper_t op) const;
  std::string format(const OperatorWord& w) const;

  /// Parse a space-separated list of operator names ("" or "1" is identity).
  virtual OperatorWord parse_word(const std::string& text) const;

  virtual std::string kind() const { return "generic"; }

 protected:
  /// Bring raw indices to canonical form in place; may set zero or phase.
  /// Default is the free algebra (no relations).
  virtual void simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool& zero) const;

 private:
  std::size_t operator_count_;
};

/// Optional restriction on admitted dictionary words.
struct WordFilter {
  std::string tag;
  std::function<bool(const OperatorWord&)> admit;

  bool active() const { return static_cast<bool>(admit); }
};

struct Dictionary {
  const Context* context = nullptr;
  std::size_t max_length = 0;
  std::string filter_tag;
  std::vector<OperatorWord> words;

  std::size_t size() const { return words.size(); }
  const OperatorWord& operator[](std::size_t i) const { return words[i]; }
};

/// All distinct canonical nonzero phase-free words of length at most L, in
/// shortlex order. Words are grown one letter at a time from the previous
/// length, so the context must satisfy: a canonical word's prefix is
/// reachable at the previous length (true for every built-in context).
Dictionary generate_dictionary(const Context& ctx, std::size_t L, const WordFilter& filter = {});

/// Conjugates of the dictionary's words, in the same order (D*).
std::vector<OperatorWord> conjugate_dictionary(const Context& ctx, const Dictionary& dict);

}  // namespace ncr
