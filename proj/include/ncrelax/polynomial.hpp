// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ncrelax/word.hpp"

namespace ncr {

/// coefficient * <symbol> or coefficient * <symbol>^*.
struct Monomial {
  std::size_t id = 0;
  bool conjugated = false;
  cplx coefficient{1.0, 0.0};

  bool is_zero() const { return id == 0 || coefficient == cplx{}; }
  bool operator==(const Monomial&) const = default;
};

/// Linear combination of moments. Terms are kept normalized by the owning
/// SymbolRegistry: descending symbol order, conjugate pairs adjacent with
/// the unconjugated form first, like terms gathered.
struct Polynomial {
  std::vector<Monomial> terms;

  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> t) : terms(std::move(t)) {}
  explicit Polynomial(Monomial m) {
    if (!m.is_zero()) terms.push_back(m);
  }

  bool empty() const { return terms.empty(); }
  bool is_zero() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  bool operator==(const Polynomial&) const = default;
};

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol = 1e-12);

}  // namespace ncr
