// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Operator words: canonical index sequences with a fourth-root-of-unity
// phase and a distinguished zero. Everything above this layer trades in them.

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncr {

using oper_t = std::uint32_t;
using cplx = std::complex<double>;

/// Phase is stored as the exponent k of i^k, k in {0,1,2,3}.
struct Phase {
  std::uint8_t k = 0;

  constexpr Phase() = default;
  constexpr explicit Phase(int power) : k(static_cast<std::uint8_t>(((power % 4) + 4) % 4)) {}

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase imag() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_imag() { return Phase(3); }

  constexpr Phase operator*(Phase o) const { return Phase(k + o.k); }
  constexpr Phase conj() const { return Phase(4 - k); }
  constexpr bool operator==(const Phase&) const = default;

  cplx value() const;
  std::string str() const;  // "", "-", "i", "-i"
};

class HashOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An operator word. A zero word has no indices and phase +1.
struct OperatorWord {
  std::vector<oper_t> ops;
  Phase phase{};
  bool zero = false;

  OperatorWord() = default;
  explicit OperatorWord(std::vector<oper_t> indices, Phase p = {}) : ops(std::move(indices)), phase(p) {}
  OperatorWord(std::initializer_list<oper_t> indices) : ops(indices) {}

  static OperatorWord identity() { return OperatorWord{}; }
  static OperatorWord make_zero() {
    OperatorWord w;
    w.zero = true;
    return w;
  }

  bool is_identity() const { return !zero && ops.empty(); }
  std::size_t size() const { return ops.size(); }
  bool empty() const { return ops.empty(); }

  /// Same word without phase.
  OperatorWord unsigned_word() const {
    OperatorWord w = *this;
    w.phase = Phase{};
    return w;
  }

  bool operator==(const OperatorWord& o) const {
    return zero == o.zero && phase == o.phase && ops == o.ops;
  }
};

/// Shortlex comparison; phases are ignored. Zero orders before everything.
int shortlex_compare(const OperatorWord& a, const OperatorWord& b);
int shortlex_compare(std::span<const oper_t> a, std::span<const oper_t> b);

inline bool shortlex_less(const OperatorWord& a, const OperatorWord& b) {
  return shortlex_compare(a, b) < 0;
}

/// Shortlex rank of the index sequence over an alphabet of N symbols.
/// Throws HashOverflow if the rank does not fit in 64 bits.
std::uint64_t word_hash(std::span<const oper_t> ops, std::size_t operator_count);
inline std::uint64_t word_hash(const OperatorWord& w, std::size_t operator_count) {
  if (w.zero) throw std::invalid_argument("word_hash: zero word has no rank");
  return word_hash(std::span<const oper_t>(w.ops), operator_count);
}

/// Hash functor for raw index vectors (for unordered containers).
struct IndexVectorHash {
  std::size_t operator()(const std::vector<oper_t>& v) const noexcept;
};

}  // namespace ncr
