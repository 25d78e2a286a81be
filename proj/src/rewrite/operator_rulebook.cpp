// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Completion follows the classic loop: scan ordered pairs of rules for
// overlaps between a suffix of one left-hand side and a prefix of another,
// reduce both one-step rewrites of the overlap word, and if they differ add
// the oriented equation as a new rule. Existing rules whose right-hand side
// the new rule rewrites are re-reduced (and dropped if they collapse onto
// their own left-hand side). Every addition restarts the scan; the cap on
// additions is what keeps non-terminating inputs from looping forever.

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ncrelax/operator_rules.hpp"

namespace ncr {

namespace {

bool lhs_less(const OperatorRule& a, const OperatorRule& b) {
  return shortlex_compare(std::span<const oper_t>(a.lhs), std::span<const oper_t>(b.lhs)) < 0;
}

bool occurs_at(const std::vector<oper_t>& hay, const std::vector<oper_t>& needle, std::size_t pos) {
  if (pos + needle.size() > hay.size()) return false;
  return std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(pos));
}

bool contains(const std::vector<oper_t>& hay, const std::vector<oper_t>& needle) {
  if (needle.size() > hay.size()) return false;
  for (std::size_t p = 0; p + needle.size() <= hay.size(); ++p) {
    if (occurs_at(hay, needle, p)) return true;
  }
  return false;
}

}  // namespace

std::optional<OperatorRule> orient_equation(const OperatorWord& a, const OperatorWord& b) {
  if (a.zero && b.zero) return std::nullopt;
  if (a.zero || b.zero) {
    const OperatorWord& nz = a.zero ? b : a;
    if (nz.ops.empty()) throw std::invalid_argument("relation sets the identity to zero");
    return OperatorRule{nz.ops, OperatorWord::make_zero()};
  }
  int c = shortlex_compare(a, b);
  if (c == 0) {
    if (a.phase == b.phase) return std::nullopt;
    // phase * w = w with phase != 1 forces w = 0
    if (a.ops.empty()) throw std::invalid_argument("relation sets the identity to zero");
    return OperatorRule{a.ops, OperatorWord::make_zero()};
  }
  const OperatorWord& hi = c > 0 ? a : b;
  const OperatorWord& lo = c > 0 ? b : a;
  OperatorWord rhs = lo;
  rhs.phase = lo.phase * hi.phase.conj();
  return OperatorRule{hi.ops, rhs};
}

void OperatorRulebook::sort_rules() { std::stable_sort(rules_.begin(), rules_.end(), lhs_less); }

void OperatorRulebook::add_rule(OperatorRule rule) {
  if (rule.lhs.empty()) throw std::invalid_argument("rule with empty left-hand side");
  for (oper_t op : rule.lhs) {
    if (operator_count_ && op >= operator_count_) throw std::out_of_range("rule operator out of range");
  }
  if (!rule.rhs.zero && shortlex_compare(std::span<const oper_t>(rule.rhs.ops),
                                         std::span<const oper_t>(rule.lhs)) >= 0) {
    auto oriented = orient_equation(OperatorWord(rule.lhs), rule.rhs);
    if (!oriented) return;
    rule = *oriented;
  }
  auto it = std::lower_bound(rules_.begin(), rules_.end(), rule, lhs_less);
  if (it != rules_.end() && it->lhs == rule.lhs) {
    if (it->rhs == rule.rhs) return;
    auto merged = orient_equation(it->rhs, rule.rhs);
    if (merged) add_rule(*merged);
    return;
  }
  rules_.insert(it, std::move(rule));
  status_ = CompletionStatus::untested;
}

void OperatorRulebook::add_equation(const OperatorWord& a, const OperatorWord& b) {
  if (auto r = orient_equation(a, b)) add_rule(*r);
}

OperatorWord OperatorRulebook::apply_at(const OperatorWord& w, const OperatorRule& rule, std::size_t pos) {
  if (rule.rhs.zero) return OperatorWord::make_zero();
  std::vector<oper_t> out;
  out.reserve(w.size() - rule.lhs.size() + rule.rhs.size());
  out.insert(out.end(), w.ops.begin(), w.ops.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), rule.rhs.ops.begin(), rule.rhs.ops.end());
  out.insert(out.end(), w.ops.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()), w.ops.end());
  return OperatorWord(std::move(out), w.phase * rule.rhs.phase);
}

std::vector<std::size_t> OperatorRulebook::matches(const OperatorWord& w, const OperatorRule& rule) {
  std::vector<std::size_t> out;
  if (w.zero) return out;
  for (std::size_t p = 0; p + rule.lhs.size() <= w.size(); ++p) {
    if (occurs_at(w.ops, rule.lhs, p)) out.push_back(p);
  }
  return out;
}

OperatorWord OperatorRulebook::reduce(std::vector<oper_t> ops, Phase phase) const {
  OperatorWord w(std::move(ops), phase);
  for (;;) {
    if (w.zero) return w;
    bool changed = false;
    for (std::size_t pos = 0; pos < w.size() && !changed; ++pos) {
      for (const auto& rule : rules_) {
        if (occurs_at(w.ops, rule.lhs, pos)) {
          w = apply_at(w, rule, pos);
          changed = true;
          break;
        }
      }
    }
    if (!changed) return w;
  }
}

OperatorWord OperatorRulebook::reduce(const OperatorWord& w) const {
  if (w.zero) return w;
  return reduce(w.ops, w.phase);
}

std::string OperatorRulebook::fmt(const std::vector<oper_t>& ops, const Context* names) const {
  if (ops.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (names) {
      if (i) out += ' ';
      out += names->operator_name(ops[i]);
    } else {
      out += static_cast<char>('a' + static_cast<char>(ops[i] % 26));
    }
  }
  return out;
}

std::string OperatorRulebook::fmt(const OperatorWord& w, const Context* names) const {
  if (w.zero) return "0";
  return w.phase.str() + fmt(w.ops, names);
}

std::string OperatorRulebook::format_rule(const OperatorRule& r, const Context* names) const {
  return fmt(r.lhs, names) + " -> " + fmt(r.rhs, names);
}

std::optional<OperatorRule> OperatorRulebook::find_critical(std::size_t i, std::size_t j,
                                                            std::vector<std::string>* log,
                                                            const Context* names) const {
  const OperatorRule& ri = rules_[i];
  const OperatorRule& rj = rules_[j];
  const std::size_t max_k = std::min(ri.lhs.size(), rj.lhs.size());
  for (std::size_t k = 1; k < max_k + 1; ++k) {
    // Proper overlaps only; containment is removed by interreduction.
    if (k == ri.lhs.size() || k == rj.lhs.size()) break;
    if (!std::equal(ri.lhs.end() - static_cast<std::ptrdiff_t>(k), ri.lhs.end(), rj.lhs.begin())) continue;

    std::vector<oper_t> tail(rj.lhs.begin() + static_cast<std::ptrdiff_t>(k), rj.lhs.end());
    std::vector<oper_t> head(ri.lhs.begin(), ri.lhs.end() - static_cast<std::ptrdiff_t>(k));

    OperatorWord wi;
    if (ri.rhs.zero) {
      wi = OperatorWord::make_zero();
    } else {
      std::vector<oper_t> ops = ri.rhs.ops;
      ops.insert(ops.end(), tail.begin(), tail.end());
      wi = reduce(std::move(ops), ri.rhs.phase);
    }
    OperatorWord wj;
    if (rj.rhs.zero) {
      wj = OperatorWord::make_zero();
    } else {
      std::vector<oper_t> ops = head;
      ops.insert(ops.end(), rj.rhs.ops.begin(), rj.rhs.ops.end());
      wj = reduce(std::move(ops), rj.rhs.phase);
    }
    if (log) {
      std::vector<oper_t> w = ri.lhs;
      w.insert(w.end(), tail.begin(), tail.end());
      log->push_back("compose " + format_rule(ri, names) + " with " + format_rule(rj, names) + " on " +
                     fmt(w, names) + ": " + fmt(wi, names) + " vs " + fmt(wj, names) +
                     (wi == wj ? " (confluent)" : ""));
    }
    if (wi == wj) continue;
    auto rule = orient_equation(wi, wj);
    if (rule) return rule;
  }
  return std::nullopt;
}

bool OperatorRulebook::is_confluent() const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = 0; j < rules_.size(); ++j) {
      if (find_critical(i, j, nullptr, nullptr)) return false;
    }
  }
  // No left-hand side may contain another.
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = 0; j < rules_.size(); ++j) {
      if (i != j && contains(rules_[i].lhs, rules_[j].lhs)) return false;
    }
  }
  return true;
}

CompletionResult OperatorRulebook::complete(std::size_t cap, bool logged, const Context* names) {
  CompletionResult result;
  std::vector<std::string>* log = logged ? &result.log : nullptr;

  // Interreduce: drop rules whose lhs contains another lhs, re-adding them
  // as reduced equations; bring every rhs to normal form.
  auto interreduce = [&]() {
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = 0; i < rules_.size() && !again; ++i) {
        for (std::size_t j = 0; j < rules_.size(); ++j) {
          if (i == j || !contains(rules_[i].lhs, rules_[j].lhs)) continue;
          OperatorRule old = rules_[i];
          rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(i));
          OperatorWord l = reduce(OperatorWord(old.lhs));
          OperatorWord r = reduce(old.rhs);
          if (log) log->push_back("remove " + format_rule(old, names) + " (lhs reducible)");
          if (auto nr = orient_equation(l, r)) {
            if (log) log->push_back("orient " + format_rule(*nr, names));
            add_rule(*nr);
          }
          again = true;
          break;
        }
      }
    }
    for (auto& rule : rules_) {
      OperatorWord r = reduce(rule.rhs);
      if (!(r == rule.rhs)) {
        if (log) log->push_back("reduce rhs of " + format_rule(rule, names) + " to " + fmt(r, names));
        rule.rhs = r;
      }
    }
  };

  interreduce();

  for (;;) {
    std::optional<OperatorRule> fresh;
    for (std::size_t i = 0; i < rules_.size() && !fresh; ++i) {
      for (std::size_t j = 0; j < rules_.size() && !fresh; ++j) {
        fresh = find_critical(i, j, log, names);
      }
    }
    if (!fresh) break;

    if (result.rules_added >= cap) {
      if (log) log->push_back("failure: cap of " + std::to_string(cap) + " new rules reached");
      result.status = status_ = CompletionStatus::failed;
      return result;
    }
    if (log) log->push_back("orient new rule " + format_rule(*fresh, names));

    // Step 7: reduce the right-hand sides that the new rule touches.
    OperatorRulebook probe(operator_count_);
    probe.rules_ = rules_;
    probe.rules_.push_back(*fresh);
    probe.sort_rules();
    std::vector<OperatorRule> kept;
    kept.reserve(rules_.size());
    for (const auto& rk : rules_) {
      if (!rk.rhs.zero && contains(rk.rhs.ops, fresh->lhs)) {
        OperatorWord wk = probe.reduce(rk.rhs);
        if (!wk.zero && wk.phase == Phase{} && wk.ops == rk.lhs) {
          if (log) log->push_back("delete redundant " + format_rule(rk, names));
          continue;
        }
        if (log) log->push_back("reduce " + format_rule(rk, names) + " to rhs " + fmt(wk, names));
        kept.push_back(OperatorRule{rk.lhs, wk});
      } else {
        kept.push_back(rk);
      }
    }
    rules_ = std::move(kept);
    add_rule(*fresh);
    ++result.rules_added;
    interreduce();
  }

  result.status = status_ = CompletionStatus::convergent;
  if (log) log->push_back("convergent with " + std::to_string(rules_.size()) + " rules");
  return result;
}

AlgebraicAlphabet::AlgebraicAlphabet(std::vector<std::string> names, bool hermitian)
    : names_(std::move(names)), hermitian_(hermitian) {
  if (names_.empty()) throw std::invalid_argument("algebraic alphabet needs at least one operator");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate operator name '" + names_[i] + "'");
    }
  }
}

oper_t AlgebraicAlphabet::index_of(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return static_cast<oper_t>(hermitian_ ? k : 2 * k);
    if (!hermitian_ && names_[k] + "*" == name) return static_cast<oper_t>(2 * k + 1);
  }
  throw std::invalid_argument("unknown operator '" + name + "'");
}

std::string AlgebraicAlphabet::name(oper_t op) const {
  if (hermitian_) return names_.at(op);
  return names_.at(op / 2) + ((op & 1U) ? "*" : "");
}

OperatorRule make_hermitian(const AlgebraicAlphabet& alphabet, const std::string& op) {
  oper_t x = alphabet.index_of(op);
  oper_t xs = alphabet.adjoint(x);
  if (x == xs) throw std::invalid_argument("operator '" + op + "' is already Hermitian");
  auto r = orient_equation(OperatorWord{xs}, OperatorWord{x});
  return *r;
}

OperatorRule make_projector(const AlgebraicAlphabet& alphabet, const std::string& op) {
  oper_t x = alphabet.index_of(op);
  return OperatorRule{{x, x}, OperatorWord{x}};
}

OperatorRule add_commutator(const AlgebraicAlphabet& alphabet, const std::string& a, const std::string& b) {
  oper_t x = alphabet.index_of(a);
  oper_t y = alphabet.index_of(b);
  if (x == y) throw std::invalid_argument("commutator of an operator with itself");
  oper_t lo = std::min(x, y);
  oper_t hi = std::max(x, y);
  return OperatorRule{{hi, lo}, OperatorWord{lo, hi}};
}

AlgebraicContext::AlgebraicContext(AlgebraicAlphabet alphabet, OperatorRulebook rules)
    : Context(alphabet.size()), alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  if (rules_.operator_count() != 0 && rules_.operator_count() != alphabet_.size()) {
    throw std::invalid_argument("rulebook alphabet size does not match the context");
  }
}

CompletionResult AlgebraicContext::complete(std::size_t cap, bool logged) {
  return rules_.complete(cap, logged, this);
}

void AlgebraicContext::simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool& zero) const {
  if (rules_.size() == 0) return;
  OperatorWord w = rules_.reduce(std::move(ops), phase);
  if (w.zero) {
    zero = true;
    ops.clear();
    phase = Phase{};
    return;
  }
  ops = std::move(w.ops);
  phase = w.phase;
}

}  // namespace ncr
