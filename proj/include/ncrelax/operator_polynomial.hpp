// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Polynomials over operators (not moments). Products act on words; moments
// are taken only when a polynomial is registered.

#pragma once

#include <string>
#include <vector>

#include "ncrelax/context.hpp"
#include "ncrelax/polynomial.hpp"
#include "ncrelax/registry.hpp"

namespace ncr {

struct OpTerm {
  cplx coefficient{1.0, 0.0};
  OperatorWord word;  // phase-free, canonical
};

/// Terms sorted by shortlex word, like words gathered.
struct OpPolynomial {
  std::vector<OpTerm> terms;

  static OpPolynomial identity(cplx c = 1.0);
  static OpPolynomial of(const OperatorWord& w, cplx c = 1.0);

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
};

/// Simplify every word, fold phases into coefficients, sort and gather.
OpPolynomial simplify(const Context& ctx, const OpPolynomial& p, double tol = 1e-12);

OpPolynomial add(const Context& ctx, const OpPolynomial& a, const OpPolynomial& b);
OpPolynomial scale(const Context& ctx, const OpPolynomial& a, cplx c);
OpPolynomial multiply(const Context& ctx, const OpPolynomial& a, const OpPolynomial& b);
OpPolynomial adjoint(const Context& ctx, const OpPolynomial& p);
bool is_hermitian(const Context& ctx, const OpPolynomial& p, double tol = 1e-12);

/// Linear-combination text: "2 x1 x2 - 0.5 x1 + 1". Coefficients are real.
OpPolynomial parse_op_polynomial(const Context& ctx, const std::string& text);
std::string format(const Context& ctx, const OpPolynomial& p);
/// Stable text key for caching.
std::string fingerprint(const OpPolynomial& p);

/// Expectation value: sum of c * <w> over registered moments.
Polynomial expectation(SymbolRegistry& registry, const OpPolynomial& p);

}  // namespace ncr
