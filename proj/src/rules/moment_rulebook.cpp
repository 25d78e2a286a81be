// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ncrelax/moment_rules.hpp"

namespace ncr {

namespace {

bool same_magnitude(cplx a, cplx b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  return std::abs(ma - mb) <= 1e-12 * std::max(ma, mb);
}

Polynomial without_symbol(const Polynomial& p, std::size_t id) {
  Polynomial out;
  for (const auto& t : p.terms) {
    if (t.id != id) out.terms.push_back(t);
  }
  return out;
}

}  // namespace

Orientation orient(const SymbolRegistry& reg, const Polynomial& input) {
  Polynomial p = reg.normalize(input);
  if (p.empty()) throw std::invalid_argument("cannot orient the zero polynomial");
  if (reg.is_scalar(p)) throw InconsistentConstraints("constraints imply a nonzero constant equals zero");
  if (p.terms.front().conjugated) p = reg.conjugate(p);

  const Monomial lead = p.terms.front();
  const std::size_t X = lead.id;
  const cplx c1 = lead.coefficient;
  Orientation out;
  out.rule.lhs = X;

  const bool pair = p.size() > 1 && p.terms[1].id == X && p.terms[1].conjugated;
  if (!pair) {
    Polynomial rest(std::vector<Monomial>(p.terms.begin() + 1, p.terms.end()));
    out.rule.kind = MomentRuleKind::oriented;
    out.rule.rhs = reg.scale(rest, -1.0 / c1);
    return out;
  }

  const cplx c2 = p.terms[1].coefficient;
  Polynomial q(std::vector<Monomial>(p.terms.begin() + 2, p.terms.end()));
  if (!same_magnitude(c1, c2)) {
    // c1 X + c2 X* + q = 0 together with its conjugate gives
    // (|c1|^2 - |c2|^2) X = c2 q* - c1* q.
    const double denom = std::norm(c1) - std::norm(c2);
    Polynomial num = reg.add(reg.scale(reg.conjugate(q), c2), reg.scale(q, -std::conj(c1)));
    out.rule.kind = MomentRuleKind::reoriented;
    out.rule.rhs = reg.scale(num, 1.0 / denom);
    return out;
  }

  // k e^{ia} X + k e^{ib} X* + q = 0 fixes only the projection
  // Re(e^{i(a-b)/2} X) = R with R = -e^{-i(a+b)/2} q / (2k).
  const double k = std::abs(c1);
  const double a = std::arg(c1);
  const double b = std::arg(c2);
  const double delta = 0.5 * (a - b);
  const cplx I{0.0, 1.0};
  Polynomial R = reg.scale(q, -std::exp(-I * (0.5 * (a + b))) / (2.0 * k));
  Polynomial re = reg.real_part(R);
  Polynomial im = reg.imag_part(R);

  std::vector<Monomial> rhs{Monomial{X, false, 0.5}, Monomial{X, true, -0.5 * std::exp(-2.0 * I * delta)}};
  for (const auto& t : reg.scale(re, std::exp(-I * delta)).terms) rhs.push_back(t);
  out.rule.kind = MomentRuleKind::partial;
  out.rule.rhs = reg.normalize(std::move(rhs));
  out.rule.delta = delta <= -std::numbers::pi ? std::numbers::pi : delta;
  if (!im.empty()) out.split = im;
  return out;
}

Polynomial apply_rule(const SymbolRegistry& reg, const MomentRule& rule, const Polynomial& p) {
  bool hit = false;
  std::vector<Monomial> terms;
  for (const auto& t : p.terms) {
    if (t.id != rule.lhs) {
      terms.push_back(t);
      continue;
    }
    hit = true;
    const Polynomial sub = t.conjugated ? reg.conjugate(rule.rhs) : rule.rhs;
    for (auto m : sub.terms) {
      m.coefficient *= t.coefficient;
      terms.push_back(m);
    }
  }
  if (!hit) return p;
  return reg.normalize(std::move(terms));
}

void MomentRulebook::add_constraint(Polynomial p) { pending_.push_back(reg_->normalize(p)); }

Polynomial MomentRulebook::reduce(const Polynomial& p) const {
  if (rules_.empty()) return p;
  bool hit = false;
  std::vector<Monomial> terms;
  for (const auto& t : p.terms) {
    auto it = rules_.find(t.id);
    if (it == rules_.end()) {
      terms.push_back(t);
      continue;
    }
    hit = true;
    const Polynomial sub = t.conjugated ? reg_->conjugate(it->second.rhs) : it->second.rhs;
    for (auto m : sub.terms) {
      m.coefficient *= t.coefficient;
      terms.push_back(m);
    }
  }
  if (!hit) return p;
  return reg_->normalize(std::move(terms));
}

SymbolicMatrix MomentRulebook::reduce(const SymbolicMatrix& m) const {
  SymbolicMatrix out(m.dim(), MatrixKind::derived);
  out.set_level(m.level());
  out.set_label(m.label());
  out.set_hermitian(m.hermitian());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out.at(i, j) = reduce(m.at(i, j));
  }
  return out;
}

void MomentRulebook::insert(MomentRule r) {
  auto existing = rules_.find(r.lhs);
  if (existing != rules_.end()) {
    // Only a partial rule can leave its own lhs behind. A second, different
    // axis for the same moment pins it completely:
    // X/2 + u1 X*/2 = s1 and X/2 + u2 X*/2 = s2 give X* = 2 (s1 - s2) / (u1 - u2).
    const MomentRule& old = existing->second;
    if (old.kind != MomentRuleKind::partial || r.kind != MomentRuleKind::partial) {
      throw std::logic_error("duplicate moment rule for " + reg_->symbol_string(r.lhs));
    }
    const cplx I{0.0, 1.0};
    const cplx u1 = std::exp(-2.0 * I * old.delta);
    const cplx u2 = std::exp(-2.0 * I * r.delta);
    Polynomial s1 = without_symbol(old.rhs, r.lhs);
    Polynomial s2 = without_symbol(r.rhs, r.lhs);
    Polynomial xstar = reg_->scale(reg_->add(s1, reg_->scale(s2, -1.0)), 2.0 / (u1 - u2));
    MomentRule full;
    full.lhs = r.lhs;
    full.kind = MomentRuleKind::reoriented;
    full.rhs = reg_->conjugate(xstar);
    rules_.erase(existing);
    r = std::move(full);
  }
  for (auto& [id, other] : rules_) {
    Polynomial next = apply_rule(*reg_, r, other.rhs);
    if (!(next == other.rhs)) {
      other.rhs = std::move(next);
      ++rhs_rewrites_;
    }
  }
  rules_.emplace(r.lhs, std::move(r));
}

void MomentRulebook::complete() {
  std::vector<Polynomial> work;
  for (auto& p : pending_) {
    if (!p.empty()) work.push_back(std::move(p));
  }
  pending_.clear();
  auto less = [this](const Polynomial& a, const Polynomial& b) { return reg_->compare(a, b) < 0; };
  std::stable_sort(work.begin(), work.end(), less);

  std::size_t head = 0;
  while (head < work.size()) {
    Polynomial p = reduce(work[head++]);
    if (p.empty()) continue;
    if (reg_->is_scalar(p)) throw InconsistentConstraints("constraints imply " + reg_->format(p) + " = 0");
    Orientation o = orient(*reg_, p);
    if (o.split) {
      auto pos = std::upper_bound(work.begin() + static_cast<std::ptrdiff_t>(head), work.end(), *o.split, less);
      work.insert(pos, *o.split);
    }
    insert(std::move(o.rule));
  }
}

bool MomentRulebook::is_reduced() const {
  for (const auto& [id, r] : rules_) {
    for (const auto& [id2, r2] : rules_) {
      if (!approx_equal(apply_rule(*reg_, r2, r.rhs), r.rhs, 1e-9)) return false;
    }
  }
  return true;
}

std::string MomentRulebook::format_rule(const MomentRule& r) const {
  std::string s = reg_->symbol_string(r.lhs) + " -> " + reg_->format(r.rhs);
  if (r.kind == MomentRuleKind::partial) {
    std::ostringstream os;
    os << "  [partial, delta=" << r.delta << "]";
    s += os.str();
  }
  return s;
}

std::string MomentRulebook::listing() const {
  std::vector<const MomentRule*> order;
  for (const auto& [id, r] : rules_) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [this](const MomentRule* a, const MomentRule* b) { return reg_->compare_symbols(a->lhs, b->lhs) < 0; });
  std::string out;
  for (const auto* r : order) out += format_rule(*r) + "\n";
  return out;
}

}  // namespace ncr
