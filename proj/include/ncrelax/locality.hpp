// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bell scenarios with projective measurements in Collins-Gisin form: one
// operator per non-final outcome, parties commute, outcomes of one
// measurement are orthogonal projectors.

#pragma once

#include <string>
#include <vector>

#include "ncrelax/context.hpp"
#include "ncrelax/operator_polynomial.hpp"

namespace ncr {

struct Measurement {
  std::string name;
  std::size_t outcomes = 2;

  bool operator==(const Measurement&) const = default;
};

struct Party {
  std::string name;
  std::vector<Measurement> measurements;

  bool operator==(const Party&) const = default;
};

struct LocalitySpec {
  std::vector<Party> parties;

  /// Parties A, B, ... each with the same number of measurements and outcomes.
  static LocalitySpec uniform(std::size_t parties, std::size_t measurements, std::size_t outcomes);
};

/// Dense row-major array; the first axis varies slowest.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  static Tensor matrix(const std::vector<std::vector<double>>& rows);
  std::size_t size() const;
};

class LocalityContext : public Context {
 public:
  struct OpInfo {
    std::size_t party = 0;
    std::size_t measurement = 0;
    std::size_t outcome = 0;
  };

  explicit LocalityContext(LocalitySpec spec);

  const LocalitySpec& spec() const { return spec_; }
  std::size_t party_count() const { return spec_.parties.size(); }
  const OpInfo& info(oper_t op) const { return info_.at(op); }
  /// Operator for a non-final outcome. Throws std::out_of_range.
  oper_t op(std::size_t party, std::size_t measurement, std::size_t outcome) const;
  /// Operators of one measurement (outcomes 0..n-2).
  std::vector<oper_t> measurement_ops(std::size_t party, std::size_t measurement) const;
  /// Operators of one party, in layout order.
  std::vector<oper_t> party_ops(std::size_t party) const;

  std::string operator_name(oper_t op) const override;
  std::string kind() const override { return "locality"; }

 protected:
  void simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool& zero) const override;

 private:
  LocalitySpec spec_;
  std::vector<OpInfo> info_;
  std::vector<std::vector<oper_t>> first_op_;  // [party][measurement]
  std::vector<std::string> names_;
};

/// Contraction with a Collins-Gisin tensor. Axis k has 1 + (operators of
/// party k) entries; index 0 is the identity.
OpPolynomial cg_polynomial(const LocalityContext& ctx, const Tensor& grid);
/// Contraction with a full-correlator tensor. Axis k has 1 + (measurements of
/// party k) entries; index 0 is the identity, index m+1 the +-1 observable
/// 2 a_m - 1 of measurement m. Binary measurements only.
OpPolynomial fc_polynomial(const LocalityContext& ctx, const Tensor& grid);

/// <A B> for two binary measurements of different parties.
OpPolynomial correlator(const LocalityContext& ctx, std::size_t party_a, std::size_t measurement_a,
                        std::size_t party_b, std::size_t measurement_b);

/// One polynomial per joint outcome, in "= 0" form: E(outcomes) - p * 1.
/// groups[k] holds the non-final-outcome operators of the k-th measurement;
/// the final outcome is 1 minus the sum. The last group varies fastest.
std::vector<OpPolynomial> probability_polynomials(const Context& ctx, const std::vector<std::vector<oper_t>>& groups,
                                                  const std::vector<double>& probabilities);

/// Same, for (party, measurement) pairs of a locality scenario.
std::vector<OpPolynomial> probability_polynomials(const LocalityContext& ctx,
                                                  const std::vector<std::pair<std::size_t, std::size_t>>& joint,
                                                  const std::vector<double>& probabilities);

}  // namespace ncr
