// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Equality constraints on moments, oriented into substitution rules and kept
// in reduced form so that one pass of substitution is always enough.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncrelax/matrix.hpp"
#include "ncrelax/polynomial.hpp"
#include "ncrelax/registry.hpp"

namespace ncr {

enum class MomentRuleKind { oriented, reoriented, partial };

/// <lhs> -> rhs. Conjugated occurrences of lhs are replaced by conj(rhs).
struct MomentRule {
  std::size_t lhs = 0;
  MomentRuleKind kind = MomentRuleKind::oriented;
  Polynomial rhs;
  double delta = 0.0;  // partial rules only, in (-pi, pi]
};

class InconsistentConstraints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Orientation {
  MomentRule rule;
  std::optional<Polynomial> split;  // implied constraint, partial rules only
};

/// Turn p = 0 into a rule. p must be normalized; throws InconsistentConstraints
/// for a nonzero scalar and std::invalid_argument for the zero polynomial.
Orientation orient(const SymbolRegistry& reg, const Polynomial& p);

/// Apply one rule to p (single pass over p's terms).
Polynomial apply_rule(const SymbolRegistry& reg, const MomentRule& rule, const Polynomial& p);

class MomentRulebook {
 public:
  explicit MomentRulebook(const SymbolRegistry& reg) : reg_(&reg) {}

  /// Queue a constraint p = 0.
  void add_constraint(Polynomial p);
  /// Build the reduced rule set from every queued constraint (and any rules
  /// already present). Throws InconsistentConstraints.
  void complete();

  const std::map<std::size_t, MomentRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  /// Number of right-hand sides rewritten while inserting rules.
  std::size_t rhs_rewrites() const { return rhs_rewrites_; }

  Polynomial reduce(const Polynomial& p) const;
  SymbolicMatrix reduce(const SymbolicMatrix& m) const;

  /// Every rule's rhs is a fixed point of every rule.
  bool is_reduced() const;

  std::string format_rule(const MomentRule& r) const;
  std::string listing() const;

 private:
  void insert(MomentRule r);

  const SymbolRegistry* reg_;
  std::vector<Polynomial> pending_;
  std::map<std::size_t, MomentRule> rules_;
  std::size_t rhs_rewrites_ = 0;
};

}  // namespace ncr
