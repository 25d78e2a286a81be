// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Monomial rewrite rules over operator words, reduction to normal form, and
// Knuth-Bendix completion with a cap on the number of added rules.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncrelax/context.hpp"

namespace ncr {

/// lhs -> rhs with rhs shortlex-smaller than lhs (or zero).
struct OperatorRule {
  std::vector<oper_t> lhs;
  OperatorWord rhs;

  bool operator==(const OperatorRule&) const = default;
};

/// Orient the equation a = b into a rule. Returns nullopt when both sides
/// are identical (trivial rule).
std::optional<OperatorRule> orient_equation(const OperatorWord& a, const OperatorWord& b);

enum class CompletionStatus { untested, convergent, failed };

struct CompletionResult {
  CompletionStatus status = CompletionStatus::untested;
  std::size_t rules_added = 0;
  std::vector<std::string> log;
};

class OperatorRulebook {
 public:
  static constexpr std::size_t kDefaultRestartCap = 128;

  explicit OperatorRulebook(std::size_t operator_count = 0) : operator_count_(operator_count) {}

  /// Insert an oriented rule (kept sorted by lhs). A rule whose lhs already
  /// exists is merged by orienting the two right-hand sides.
  void add_rule(OperatorRule rule);
  /// Orient and add a = b.
  void add_equation(const OperatorWord& a, const OperatorWord& b);

  const std::vector<OperatorRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  std::size_t operator_count() const { return operator_count_; }
  CompletionStatus status() const { return status_; }

  /// Leftmost match, first rule wins, until no rule applies.
  OperatorWord reduce(const OperatorWord& w) const;
  OperatorWord reduce(std::vector<oper_t> ops, Phase phase = {}) const;

  /// Apply a single rewrite at the given position with the given rule.
  static OperatorWord apply_at(const OperatorWord& w, const OperatorRule& rule, std::size_t pos);
  /// Positions where rule's lhs occurs in w.
  static std::vector<std::size_t> matches(const OperatorWord& w, const OperatorRule& rule);

  /// Knuth-Bendix completion. cap bounds the number of rules added; when it
  /// would be exceeded the partial set is kept and status is failed.
  CompletionResult complete(std::size_t cap = kDefaultRestartCap, bool logged = false,
                            const Context* names = nullptr);

  /// True if every critical pair is joinable (no new rules needed).
  bool is_confluent() const;

  std::string format_rule(const OperatorRule& r, const Context* names = nullptr) const;

 private:
  std::optional<OperatorRule> find_critical(std::size_t i, std::size_t j, std::vector<std::string>* log,
                                            const Context* names) const;
  void sort_rules();
  std::string fmt(const std::vector<oper_t>& ops, const Context* names) const;
  std::string fmt(const OperatorWord& w, const Context* names) const;

  std::size_t operator_count_;
  std::vector<OperatorRule> rules_;
  CompletionStatus status_ = CompletionStatus::untested;
};

/// Named alphabet for algebraic scenarios. Non-Hermitian operators are laid
/// out interleaved: a, a*, b, b*, ...
class AlgebraicAlphabet {
 public:
  AlgebraicAlphabet(std::vector<std::string> names, bool hermitian);

  std::size_t size() const { return hermitian_ ? names_.size() : 2 * names_.size(); }
  bool hermitian() const { return hermitian_; }
  oper_t index_of(const std::string& name) const;  // throws std::invalid_argument
  oper_t adjoint(oper_t op) const { return hermitian_ ? op : (op ^ 1U); }
  std::string name(oper_t op) const;
  const std::vector<std::string>& base_names() const { return names_; }

 private:
  std::vector<std::string> names_;
  bool hermitian_;
};

OperatorRule make_hermitian(const AlgebraicAlphabet& alphabet, const std::string& op);
OperatorRule make_projector(const AlgebraicAlphabet& alphabet, const std::string& op);
OperatorRule add_commutator(const AlgebraicAlphabet& alphabet, const std::string& a, const std::string& b);

/// Context whose relations are a (completed) operator rulebook.
class AlgebraicContext : public Context {
 public:
  AlgebraicContext(AlgebraicAlphabet alphabet, OperatorRulebook rules);

  /// Run completion; returns the result (status also kept in rulebook()).
  CompletionResult complete(std::size_t cap = OperatorRulebook::kDefaultRestartCap, bool logged = false);

  const AlgebraicAlphabet& alphabet() const { return alphabet_; }
  const OperatorRulebook& rulebook() const { return rules_; }

  bool hermitian_alphabet() const override { return alphabet_.hermitian(); }
  oper_t adjoint(oper_t op) const override { return alphabet_.adjoint(op); }
  std::string operator_name(oper_t op) const override { return alphabet_.name(op); }
  std::string kind() const override { return "algebraic"; }

 protected:
  void simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool& zero) const override;

 private:
  AlgebraicAlphabet alphabet_;
  OperatorRulebook rules_;
};

}  // namespace ncr
