// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Classical causal networks and their web inflations. Every observable is
// copied once per choice of copies of its sources; moments are identified up
// to relabelling source copies, and split into factors when their operators
// share no source copy.

#pragma once

#include <string>
#include <vector>

#include "ncrelax/context.hpp"
#include "ncrelax/matrix.hpp"
#include "ncrelax/moment_rules.hpp"

namespace ncr {

struct Observable {
  std::string name;
  std::size_t outcomes = 2;  // 0 marks a continuous observable

  bool operator==(const Observable&) const = default;
};

struct NetworkSpec {
  std::vector<Observable> observables;
  std::vector<std::vector<std::size_t>> sources;  // observable indices per source
  std::size_t level = 1;                          // copies per source
};

class InflationContext : public Context {
 public:
  struct Variant {
    std::size_t observable = 0;
    std::vector<std::size_t> copies;  // one per attached source, declaration order
    oper_t first_op = 0;
  };
  struct OpInfo {
    std::size_t observable = 0;
    std::size_t variant = 0;  // index into variants()
    std::size_t outcome = 0;
  };

  explicit InflationContext(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }
  const std::vector<Variant>& variants() const { return variants_; }
  const OpInfo& info(oper_t op) const { return info_.at(op); }
  /// Sources attached to an observable, ascending.
  const std::vector<std::size_t>& sources_of(std::size_t observable) const { return attached_.at(observable); }
  /// Variant index for an observable and copy tuple.
  std::size_t variant_index(std::size_t observable, const std::vector<std::size_t>& copies) const;
  /// Operators of a variant (one per non-final outcome; one for continuous).
  std::vector<oper_t> variant_ops(std::size_t variant) const;
  /// The variant with every copy index zero.
  std::size_t primary_variant(std::size_t observable) const { return variant_index(observable, {}); }

  bool hermitian_alphabet() const override { return true; }
  OperatorWord canonical_moment(const OperatorWord& w) const override;
  bool can_factorize() const override { return true; }
  std::vector<OperatorWord> factorize(const OperatorWord& w) const override;
  std::string operator_name(oper_t op) const override;
  std::string kind() const override { return "inflation"; }

 protected:
  void simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool& zero) const override;

 private:
  oper_t relabel(oper_t op, const std::vector<std::vector<std::size_t>>& perms) const;
  bool shares_source(oper_t a, oper_t b) const;

  NetworkSpec spec_;
  std::vector<std::vector<std::size_t>> attached_;
  std::vector<std::size_t> first_variant_;
  std::vector<Variant> variants_;
  std::vector<OpInfo> info_;
  std::vector<std::vector<std::vector<std::size_t>>> source_perms_;  // all tuples of per-source permutations
};

/// Build the rulebook that imposes a distribution on the primary variants of
/// the discrete observables (last observable varies fastest), then adds, for
/// every registered product moment with a factor of known value, the rule
/// replacing that factor by its value. Register matrices first.
MomentRulebook distribution_rulebook(MatrixSystem& system, const std::vector<double>& probabilities);

}  // namespace ncr
