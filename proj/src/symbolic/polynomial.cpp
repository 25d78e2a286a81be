// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/polynomial.hpp"

#include <cmath>

namespace ncr {

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].id != b.terms[i].id || a.terms[i].conjugated != b.terms[i].conjugated) return false;
    if (std::abs(a.terms[i].coefficient - b.terms[i].coefficient) > tol) return false;
  }
  return true;
}

}  // namespace ncr
