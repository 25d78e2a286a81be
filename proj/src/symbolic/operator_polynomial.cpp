// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/operator_polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ncr {

namespace {

std::optional<double> as_number(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

OpPolynomial OpPolynomial::identity(cplx c) { return of(OperatorWord::identity(), c); }

OpPolynomial OpPolynomial::of(const OperatorWord& w, cplx c) {
  OpPolynomial p;
  if (w.zero || c == cplx{}) return p;
  p.terms.push_back(OpTerm{c * w.phase.value(), w.unsigned_word()});
  return p;
}

OpPolynomial simplify(const Context& ctx, const OpPolynomial& p, double tol) {
  std::vector<OpTerm> work;
  work.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    OperatorWord w = ctx.simplify(t.word);
    if (w.zero) continue;
    work.push_back(OpTerm{t.coefficient * w.phase.value(), w.unsigned_word()});
  }
  std::stable_sort(work.begin(), work.end(),
                   [](const OpTerm& a, const OpTerm& b) { return shortlex_less(a.word, b.word); });
  OpPolynomial out;
  for (auto& t : work) {
    if (!out.terms.empty() && out.terms.back().word == t.word) {
      out.terms.back().coefficient += t.coefficient;
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  std::erase_if(out.terms, [tol](const OpTerm& t) { return std::abs(t.coefficient) <= tol; });
  return out;
}

OpPolynomial add(const Context& ctx, const OpPolynomial& a, const OpPolynomial& b) {
  OpPolynomial s = a;
  s.terms.insert(s.terms.end(), b.terms.begin(), b.terms.end());
  return simplify(ctx, s);
}

OpPolynomial scale(const Context& ctx, const OpPolynomial& a, cplx c) {
  OpPolynomial s = a;
  for (auto& t : s.terms) t.coefficient *= c;
  return simplify(ctx, s);
}

OpPolynomial multiply(const Context& ctx, const OpPolynomial& a, const OpPolynomial& b) {
  OpPolynomial out;
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      OperatorWord w = ctx.multiply(x.word, y.word);
      if (w.zero) continue;
      out.terms.push_back(OpTerm{x.coefficient * y.coefficient * w.phase.value(), w.unsigned_word()});
    }
  }
  return simplify(ctx, out);
}

OpPolynomial adjoint(const Context& ctx, const OpPolynomial& p) {
  OpPolynomial out;
  for (const auto& t : p.terms) {
    OperatorWord w = ctx.conjugate(t.word);
    if (w.zero) continue;
    out.terms.push_back(OpTerm{std::conj(t.coefficient) * w.phase.value(), w.unsigned_word()});
  }
  return simplify(ctx, out);
}

bool is_hermitian(const Context& ctx, const OpPolynomial& p, double tol) {
  OpPolynomial a = simplify(ctx, p);
  OpPolynomial b = adjoint(ctx, a);
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!(a.terms[i].word == b.terms[i].word)) return false;
    if (std::abs(a.terms[i].coefficient - b.terms[i].coefficient) > tol) return false;
  }
  return true;
}

OpPolynomial parse_op_polynomial(const Context& ctx, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  OpPolynomial out;
  double sign = 1.0;
  double coef = 1.0;
  std::vector<std::string> names;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    std::string joined;
    for (const auto& n : names) joined += n + " ";
    OperatorWord w = ctx.parse_word(joined);
    if (!w.zero) out.terms.push_back(OpTerm{sign * coef * w.phase.value(), w.unsigned_word()});
    sign = 1.0;
    coef = 1.0;
    names.clear();
    open = false;
  };
  while (in >> tok) {
    if (tok == "+" || tok == "-") {
      flush();
      if (tok == "-") sign = -sign;
      continue;
    }
    if (tok == "*") continue;
    if (auto v = as_number(tok)) {
      if (*v == 1.0 && tok == "1") {
        open = true;
        continue;
      }
      coef *= *v;
      open = true;
      continue;
    }
    names.push_back(tok);
    open = true;
  }
  flush();
  return simplify(ctx, out);
}

std::string format(const Context& ctx, const OpPolynomial& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& t = p.terms[i];
    cplx c = t.coefficient;
    std::string word = t.word.ops.empty() ? "" : ctx.format(t.word);
    if (c.imag() == 0.0) {
      double v = c.real();
      if (i) out += v < 0 ? " - " : " + ";
      else if (v < 0) out += "-";
      double a = std::abs(v);
      if (word.empty()) out += number(a);
      else if (a != 1.0) out += number(a) + " " + word;
      else out += word;
    } else {
      if (i) out += " + ";
      out += "(" + number(c.real()) + (c.imag() < 0 ? "-" : "+") + number(std::abs(c.imag())) + "i)";
      if (!word.empty()) out += " " + word;
    }
  }
  return out;
}

std::string fingerprint(const OpPolynomial& p) {
  std::string out;
  char buf[64];
  for (const auto& t : p.terms) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g:", t.coefficient.real(), t.coefficient.imag());
    out += buf;
    for (oper_t op : t.word.ops) out += std::to_string(op) + ".";
    out += ";";
  }
  return out;
}

Polynomial expectation(SymbolRegistry& registry, const OpPolynomial& p) {
  std::vector<Monomial> terms;
  terms.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    Monomial m = registry.register_word(t.word);
    m.coefficient *= t.coefficient;
    terms.push_back(m);
  }
  return registry.normalize(std::move(terms));
}

}  // namespace ncr
