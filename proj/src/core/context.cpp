// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/context.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ncr {

void Context::simplify_in_place(std::vector<oper_t>&, Phase&, bool&) const {}

OperatorWord Context::simplify(std::vector<oper_t> raw, Phase phase) const {
  for (oper_t op : raw) {
    if (op >= operator_count_) {
      throw std::out_of_range("operator index " + std::to_string(op + 1) + " out of range (" +
                              std::to_string(operator_count_) + " operators)");
    }
  }
  bool zero = false;
  simplify_in_place(raw, phase, zero);
  if (zero) return OperatorWord::make_zero();
  return OperatorWord(std::move(raw), phase);
}

OperatorWord Context::simplify(const OperatorWord& w) const {
  if (w.zero) return w;
  return simplify(w.ops, w.phase);
}

OperatorWord Context::multiply(const OperatorWord& a, const OperatorWord& b) const {
  if (a.zero || b.zero) return OperatorWord::make_zero();
  std::vector<oper_t> raw;
  raw.reserve(a.size() + b.size());
  raw.insert(raw.end(), a.ops.begin(), a.ops.end());
  raw.insert(raw.end(), b.ops.begin(), b.ops.end());
  return simplify(std::move(raw), a.phase * b.phase);
}

OperatorWord Context::conjugate(const OperatorWord& w) const {
  if (w.zero) return w;
  std::vector<oper_t> raw(w.ops.rbegin(), w.ops.rend());
  if (!hermitian_alphabet()) {
    for (auto& op : raw) op = adjoint(op);
  }
  return simplify(std::move(raw), w.phase.conj());
}

std::string Context::operator_name(oper_t op) const { return "x" + std::to_string(op + 1); }

std::string Context::format(const OperatorWord& w) const {
  if (w.zero) return "0";
  std::string out = w.phase.str();
  if (w.ops.empty()) return out + "1";
  for (std::size_t i = 0; i < w.ops.size(); ++i) {
    if (i) out += ' ';
    out += operator_name(w.ops[i]);
  }
  return out;
}

OperatorWord Context::parse_word(const std::string& text) const {
  std::istringstream in(text);
  std::string token;
  std::vector<oper_t> raw;
  while (in >> token) {
    if (token == "1") continue;
    bool found = false;
    for (oper_t op = 0; op < operator_count_; ++op) {
      if (operator_name(op) == token) {
        raw.push_back(op);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown operator '" + token + "'");
  }
  return simplify(std::move(raw));
}

}  // namespace ncr
