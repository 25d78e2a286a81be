// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/registry.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ncr {

namespace {

std::vector<std::uint32_t> word_key(const std::vector<oper_t>& ops) {
  std::vector<std::uint32_t> key;
  key.reserve(ops.size() + 2);
  key.push_back(static_cast<std::uint32_t>(ops.size()));
  key.insert(key.end(), ops.begin(), ops.end());
  key.push_back(1);
  return key;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string format_coefficient(cplx c) {
  if (c.imag() == 0.0) return format_number(c.real());
  if (c.real() == 0.0) {
    if (c.imag() == 1.0) return "i";
    if (c.imag() == -1.0) return "-i";
    return format_number(c.imag()) + "i";
  }
  return "(" + format_number(c.real()) + (c.imag() < 0 ? "-" : "+") + format_number(std::abs(c.imag())) + "i)";
}

}  // namespace

SymbolRegistry::SymbolRegistry(const Context* ctx, double zero_tolerance) : ctx_(ctx), tolerance_(zero_tolerance) {
  SymbolEntry zero;
  zero.id = 0;
  zero.word = OperatorWord::make_zero();
  zero.conjugate_word = OperatorWord::make_zero();
  zero.hermitian = true;
  zero.antihermitian = true;
  zero.name = "0";
  entries_.push_back(zero);

  SymbolEntry one;
  one.id = 1;
  one.word = OperatorWord::identity();
  one.conjugate_word = OperatorWord::identity();
  one.has_word = true;
  one.hermitian = true;
  one.name = "1";
  one.order_key = word_key({});
  entries_.push_back(one);
  if (ctx_) words_[0] = Alias{1, false, Phase{}};
}

std::size_t SymbolRegistry::push(SymbolEntry e) {
  e.id = entries_.size();
  entries_.push_back(std::move(e));
  return entries_.back().id;
}

std::uint64_t SymbolRegistry::key_of(const OperatorWord& w) const {
  return word_hash(std::span<const oper_t>(w.ops), ctx_->operator_count());
}

std::optional<Monomial> SymbolRegistry::find_word(const OperatorWord& w) const {
  if (w.zero) return Monomial{0, false, {0.0, 0.0}};
  if (!ctx_) throw std::logic_error("registry has no operator context");
  OperatorWord cw = ctx_->canonical_moment(w);
  if (cw.zero) return Monomial{0, false, {0.0, 0.0}};
  if (ctx_->can_factorize()) {
    auto parts = ctx_->factorize(cw.unsigned_word());
    if (parts.size() > 1) {
      std::vector<std::size_t> ids;
      cplx coef = cw.phase.value();
      for (const auto& f : parts) {
        auto m = find_word(f);
        if (!m) return std::nullopt;
        ids.push_back(m->id);
        coef *= m->coefficient;
      }
      auto cid = find_composite(ids);
      if (!cid) return std::nullopt;
      return Monomial{*cid, false, coef};
    }
  }
  auto it = words_.find(key_of(cw));
  if (it == words_.end()) return std::nullopt;
  const Alias& a = it->second;
  return normalize_monomial(Monomial{a.id, a.conjugated, (cw.phase * a.phase).value()});
}

Monomial SymbolRegistry::register_word(const OperatorWord& w) {
  if (w.zero) return Monomial{0, false, {0.0, 0.0}};
  if (!ctx_) throw std::logic_error("registry has no operator context");
  OperatorWord cw = ctx_->canonical_moment(w);
  if (cw.zero) return Monomial{0, false, {0.0, 0.0}};
  const Phase ph = cw.phase;
  OperatorWord base = cw.unsigned_word();

  if (ctx_->can_factorize()) {
    auto parts = ctx_->factorize(base);
    if (parts.size() > 1) {
      std::vector<std::size_t> ids;
      cplx coef = ph.value();
      for (const auto& f : parts) {
        Monomial m = register_word(f);
        if (m.id == 0) return Monomial{0, false, {0.0, 0.0}};
        if (m.conjugated) throw std::logic_error("composite moments require Hermitian factors");
        ids.push_back(m.id);
        coef *= m.coefficient;
      }
      return Monomial{register_composite(std::move(ids)), false, coef};
    }
  }

  const std::uint64_t key = key_of(base);
  if (auto it = words_.find(key); it != words_.end()) {
    const Alias& a = it->second;
    return normalize_monomial(Monomial{a.id, a.conjugated, (ph * a.phase).value()});
  }

  OperatorWord c = ctx_->canonical_moment(ctx_->conjugate(base));
  if (c.zero) throw std::logic_error("adjoint of a nonzero word simplified to zero");
  const Phase phi = c.phase;
  OperatorWord v = c.unsigned_word();

  SymbolEntry e;
  e.has_word = true;
  const int cmp = shortlex_compare(base, v);
  if (cmp == 0) {
    e.word = base;
    e.conjugate_word = c;
    e.hermitian = (phi == Phase::one());
    e.antihermitian = (phi == Phase::minus_one());
    e.order_key = word_key(base.ops);
    std::size_t id = push(std::move(e));
    words_[key] = Alias{id, false, Phase{}};
    return Monomial{id, false, ph.value()};
  }
  if (cmp < 0) {
    // base is stored; v = phi^* base^dagger, so <v> = phi^* <base>^*.
    e.word = base;
    e.conjugate_word = c;
    e.order_key = word_key(base.ops);
    std::size_t id = push(std::move(e));
    words_[key] = Alias{id, false, Phase{}};
    words_[key_of(v)] = Alias{id, true, phi.conj()};
    return Monomial{id, false, ph.value()};
  }
  // v is stored; v^dagger = phi base, so <base> = phi^* <v>^*.
  e.word = v;
  e.conjugate_word = OperatorWord(base.ops, phi);
  e.order_key = word_key(v.ops);
  std::size_t id = push(std::move(e));
  words_[key_of(v)] = Alias{id, false, Phase{}};
  words_[key] = Alias{id, true, phi.conj()};
  return Monomial{id, true, (ph * phi.conj()).value()};
}

std::optional<std::size_t> SymbolRegistry::find_composite(std::vector<std::size_t> factors) const {
  std::vector<std::size_t> flat;
  for (std::size_t f : factors) {
    if (f >= entries_.size()) return std::nullopt;
    const SymbolEntry& fe = entries_[f];
    if (fe.is_composite()) flat.insert(flat.end(), fe.factors.begin(), fe.factors.end());
    else if (f != 1) flat.push_back(f);
  }
  factors = std::move(flat);
  std::sort(factors.begin(), factors.end());
  if (factors.empty()) return 1;
  if (std::find(factors.begin(), factors.end(), std::size_t{0}) != factors.end()) return 0;
  if (factors.size() == 1) return factors[0];
  std::vector<oper_t> key(factors.begin(), factors.end());
  auto it = composites_.find(key);
  if (it == composites_.end()) return std::nullopt;
  return it->second;
}

std::size_t SymbolRegistry::register_composite(std::vector<std::size_t> factors) {
  if (factors.empty()) return 1;
  std::vector<std::size_t> flat;
  for (std::size_t f : factors) {
    const SymbolEntry& fe = entries_.at(f);
    if (fe.is_composite()) flat.insert(flat.end(), fe.factors.begin(), fe.factors.end());
    else flat.push_back(f);
  }
  factors = std::move(flat);
  std::sort(factors.begin(), factors.end());
  // <1> factors are dropped; a zero factor makes the product zero
  std::erase(factors, std::size_t{1});
  if (factors.empty()) return 1;
  if (std::find(factors.begin(), factors.end(), std::size_t{0}) != factors.end()) return 0;
  if (factors.size() == 1) return factors[0];
  std::vector<oper_t> key(factors.begin(), factors.end());
  if (auto it = composites_.find(key); it != composites_.end()) return it->second;

  SymbolEntry e;
  e.factors = factors;
  bool herm = true;
  std::uint32_t total = 0;
  std::vector<std::uint32_t> concat;
  std::vector<std::uint32_t> lens;
  for (std::size_t f : factors) {
    const SymbolEntry& fe = entries_.at(f);
    if (!fe.hermitian) herm = false;
    std::uint32_t len = fe.order_key.empty() ? 0 : fe.order_key.front();
    total += len;
    if (fe.order_key.size() > 2) concat.insert(concat.end(), fe.order_key.begin() + 1, fe.order_key.end() - 1);
    lens.push_back(len);
  }
  if (!herm) throw std::logic_error("composite moments require Hermitian factors");
  e.hermitian = true;
  e.order_key.push_back(total);
  e.order_key.insert(e.order_key.end(), concat.begin(), concat.end());
  e.order_key.push_back(static_cast<std::uint32_t>(factors.size()));
  e.order_key.insert(e.order_key.end(), lens.begin(), lens.end());
  std::size_t id = push(std::move(e));
  composites_[key] = id;
  return id;
}

std::size_t SymbolRegistry::register_named(std::size_t id, const std::string& name, bool hermitian,
                                           bool antihermitian) {
  if (id < 2) return id;
  while (entries_.size() <= id) {
    SymbolEntry gap;
    gap.id = entries_.size();
    gap.defined = false;
    gap.order_key = {1u, static_cast<std::uint32_t>(gap.id)};
    entries_.push_back(gap);
  }
  SymbolEntry& e = entries_[id];
  if (!e.defined || !named_.count(id)) {
    e.defined = true;
    e.name = name;
    e.hermitian = hermitian;
    e.antihermitian = antihermitian && !hermitian;
    e.order_key = {1u, static_cast<std::uint32_t>(id)};
    named_[id] = id;
  }
  return id;
}

void SymbolRegistry::set_hermitian(std::size_t id, bool hermitian) {
  SymbolEntry& e = entries_.at(id);
  e.hermitian = hermitian;
  if (hermitian) e.antihermitian = false;
}

std::pair<std::size_t, std::size_t> SymbolRegistry::assign_basis_slots() {
  std::size_t r = 0;
  std::size_t im = 0;
  for (auto& e : entries_) {
    e.real_slot.reset();
    e.imag_slot.reset();
    if (e.id == 0 || !e.defined) continue;
    if (!e.antihermitian) e.real_slot = r++;
    if (!e.hermitian) e.imag_slot = im++;
  }
  real_count_ = r;
  imag_count_ = im;
  return {r, im};
}

int SymbolRegistry::compare_symbols(std::size_t a, std::size_t b) const {
  if (a == b) return 0;
  if (a == 0) return -1;
  if (b == 0) return 1;
  const auto& ka = entries_[a].order_key;
  const auto& kb = entries_[b].order_key;
  if (ka != kb) return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end()) ? -1 : 1;
  return a < b ? -1 : 1;
}

int SymbolRegistry::compare(const Monomial& a, const Monomial& b) const {
  int c = compare_symbols(a.id, b.id);
  if (c != 0) return c;
  if (a.conjugated == b.conjugated) return 0;
  return a.conjugated ? 1 : -1;
}

int SymbolRegistry::compare(const Polynomial& a, const Polynomial& b) const {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.size()) return -1;
    if (i >= b.size()) return 1;
    int c = compare(a.terms[i], b.terms[i]);
    if (c != 0) return c;
  }
  return 0;
}

Monomial SymbolRegistry::normalize_monomial(Monomial m) const {
  if (m.id == 0) return Monomial{0, false, {0.0, 0.0}};
  const SymbolEntry& e = entries_.at(m.id);
  if (m.conjugated && e.hermitian) m.conjugated = false;
  if (m.conjugated && e.antihermitian) {
    m.conjugated = false;
    m.coefficient = -m.coefficient;
  }
  return m;
}

Polynomial SymbolRegistry::normalize(std::vector<Monomial> terms) const {
  std::vector<Monomial> work;
  work.reserve(terms.size());
  for (auto& t : terms) {
    if (t.id == 0) continue;
    work.push_back(normalize_monomial(t));
  }
  std::stable_sort(work.begin(), work.end(), [this](const Monomial& a, const Monomial& b) {
    int c = compare_symbols(a.id, b.id);
    if (c != 0) return c > 0;
    return !a.conjugated && b.conjugated;
  });
  Polynomial out;
  for (const auto& t : work) {
    if (!out.terms.empty() && out.terms.back().id == t.id && out.terms.back().conjugated == t.conjugated) {
      out.terms.back().coefficient += t.coefficient;
    } else {
      out.terms.push_back(t);
    }
  }
  std::erase_if(out.terms, [this](const Monomial& m) { return std::abs(m.coefficient) <= tolerance_; });
  return out;
}

Polynomial SymbolRegistry::add(const Polynomial& a, const Polynomial& b) const {
  std::vector<Monomial> t = a.terms;
  t.insert(t.end(), b.terms.begin(), b.terms.end());
  return normalize(std::move(t));
}

Polynomial SymbolRegistry::scale(const Polynomial& a, cplx c) const {
  std::vector<Monomial> t = a.terms;
  for (auto& m : t) m.coefficient *= c;
  return normalize(std::move(t));
}

Monomial SymbolRegistry::conjugate(const Monomial& m) const {
  return normalize_monomial(Monomial{m.id, !m.conjugated, std::conj(m.coefficient)});
}

Polynomial SymbolRegistry::conjugate(const Polynomial& p) const {
  std::vector<Monomial> t;
  t.reserve(p.size());
  for (const auto& m : p.terms) t.push_back(Monomial{m.id, !m.conjugated, std::conj(m.coefficient)});
  return normalize(std::move(t));
}

Polynomial SymbolRegistry::constant(cplx c) const { return normalize(std::vector<Monomial>{Monomial{1, false, c}}); }

Polynomial SymbolRegistry::real_part(const Polynomial& p) const {
  return scale(add(p, conjugate(p)), 0.5);
}

Polynomial SymbolRegistry::imag_part(const Polynomial& p) const {
  return scale(add(p, scale(conjugate(p), -1.0)), cplx{0.0, -0.5});
}

bool SymbolRegistry::is_scalar(const Polynomial& p) const {
  return p.terms.empty() || (p.terms.size() == 1 && p.terms[0].id == 1);
}

bool SymbolRegistry::is_hermitian(const Polynomial& p) const {
  return approx_equal(normalize(p), conjugate(p), 1e3 * tolerance_);
}

std::string SymbolRegistry::symbol_string(std::size_t id) const {
  const SymbolEntry& e = entries_.at(id);
  if (id == 0) return "0";
  if (id == 1) return "<1>";
  if (e.is_composite()) {
    std::string s;
    for (std::size_t f : e.factors) s += symbol_string(f);
    return s;
  }
  if (e.has_word && ctx_) return "<" + ctx_->format(e.word) + ">";
  if (!e.name.empty()) return "<" + e.name + ">";
  return "<#" + std::to_string(id) + ">";
}

std::string SymbolRegistry::format(const Monomial& m, bool first) const {
  std::string sym = symbol_string(m.id) + (m.conjugated ? "*" : "");
  cplx c = m.coefficient;
  std::string out;
  const bool real = c.imag() == 0.0;
  if (real) {
    double v = c.real();
    if (!first) out += v < 0 ? " - " : " + ";
    else if (v < 0) out += "-";
    double a = std::abs(v);
    if (m.id == 1) return out + format_number(a);
    if (a != 1.0) out += format_number(a);
    return out + sym;
  }
  if (!first) out += " + ";
  if (m.id == 1) return out + format_coefficient(c);
  return out + format_coefficient(c) + sym;
}

std::string SymbolRegistry::format(const Polynomial& p) const {
  if (p.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.terms.size(); ++i) out += format(p.terms[i], i == 0);
  return out;
}

std::string SymbolRegistry::table() const {
  std::ostringstream os;
  os << std::left << std::setw(6) << "id" << std::setw(28) << "moment" << std::setw(28) << "conjugate"
     << "type\n";
  for (const auto& e : entries_) {
    if (!e.defined) continue;
    std::string conj;
    if (e.id == 0) conj = "0";
    else if (e.has_word && ctx_) conj = "<" + ctx_->format(e.conjugate_word) + ">";
    else conj = symbol_string(e.id) + (e.hermitian ? "" : "*");
    std::string type = e.id == 0 ? "zero" : e.hermitian ? "R" : e.antihermitian ? "I" : "RI";
    os << std::setw(6) << e.id << std::setw(28) << symbol_string(e.id) << std::setw(28) << conj << type << "\n";
  }
  return os.str();
}

}  // namespace ncr
