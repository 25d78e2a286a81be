// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/word.hpp"

#include <algorithm>

namespace ncr {

cplx Phase::value() const {
  switch (k) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::string Phase::str() const {
  switch (k) {
    case 0: return "";
    case 1: return "i";
    case 2: return "-";
    default: return "-i";
  }
}

int shortlex_compare(std::span<const oper_t> a, std::span<const oper_t> b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int shortlex_compare(const OperatorWord& a, const OperatorWord& b) {
  if (a.zero || b.zero) {
    if (a.zero && b.zero) return 0;
    return a.zero ? -1 : 1;
  }
  return shortlex_compare(std::span<const oper_t>(a.ops), std::span<const oper_t>(b.ops));
}

std::uint64_t word_hash(std::span<const oper_t> ops, std::size_t operator_count) {
  // Bijective base-N numeral: digit d_k = index + 1. This is exactly the
  // number of shortlex-smaller sequences.
  std::uint64_t rank = 0;
  const std::uint64_t base = operator_count;
  for (oper_t op : ops) {
    if (op >= operator_count) throw std::out_of_range("word_hash: operator index out of range");
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(rank, base, &next) ||
        __builtin_add_overflow(next, static_cast<std::uint64_t>(op) + 1, &next)) {
      throw HashOverflow("word_hash: word of length " + std::to_string(ops.size()) +
                         " cannot be ranked in 64 bits");
    }
    rank = next;
  }
  return rank;
}

std::size_t IndexVectorHash::operator()(const std::vector<oper_t>& v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ v.size();
  for (oper_t x : v) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ncr
