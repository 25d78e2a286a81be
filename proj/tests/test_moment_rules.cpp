// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>

#include <map>
#include <random>

#include "ncrelax/moment_rules.hpp"
#include "ncrelax/operator_rules.hpp"

using namespace ncr;

namespace {

// One non-Hermitian operator x (operators x, x*).
std::shared_ptr<AlgebraicContext> non_hermitian() {
  AlgebraicAlphabet names({"x"}, false);
  return std::make_shared<AlgebraicContext>(names, OperatorRulebook(names.size()));
}

Monomial mono(std::size_t id, cplx c, bool conj = false) { return Monomial{id, conj, c}; }

cplx evaluate(const Polynomial& p, const std::map<std::size_t, cplx>& values) {
  cplx out = 0.0;
  for (const auto& t : p.terms) {
    const cplx v = values.at(t.id);
    out += t.coefficient * (t.conjugated ? std::conj(v) : v);
  }
  return out;
}

}  // namespace

TEST_CASE("plain orientation") {
  Context free(3);
  SymbolRegistry reg(&free);
  const auto xy = reg.register_word(OperatorWord{0, 1}).id;
  const auto z = reg.register_word(OperatorWord{2}).id;
  const Polynomial p = reg.normalize(std::vector<Monomial>{mono(xy, 1.0), mono(z, cplx(0, -1))});
  const Orientation o = orient(reg, p);
  CHECK(o.rule.kind == MomentRuleKind::oriented);
  CHECK(o.rule.lhs == xy);
  CHECK(approx_equal(o.rule.rhs, Polynomial(mono(z, cplx(0, 1)))));
  CHECK_FALSE(o.split);

  const auto yx = reg.register_word(OperatorWord{1, 0});
  CHECK(approx_equal(apply_rule(reg, o.rule, Polynomial(yx)), Polynomial(mono(z, cplx(0, -1)))));
}

TEST_CASE("phase-constrained pair gives an idempotent partial rule") {
  auto ctx = non_hermitian();
  SymbolRegistry reg(ctx.get());
  const auto x = reg.register_word(OperatorWord{0}).id;
  REQUIRE_FALSE(reg[x].hermitian);
  const Polynomial p = reg.normalize(std::vector<Monomial>{mono(x, 0.5), mono(x, 0.5, true), mono(1, -1.0)});
  const Orientation o = orient(reg, p);
  CHECK(o.rule.kind == MomentRuleKind::partial);
  CHECK(o.rule.lhs == x);
  const Polynomial expect = reg.normalize(std::vector<Monomial>{mono(x, 0.5), mono(x, -0.5, true), mono(1, 1.0)});
  CHECK(approx_equal(o.rule.rhs, expect));
  CHECK_FALSE(o.split);

  const Polynomial once = apply_rule(reg, o.rule, Polynomial(mono(x, 1.0, true)));
  CHECK(approx_equal(apply_rule(reg, o.rule, once), once));
  CHECK(approx_equal(apply_rule(reg, o.rule, o.rule.rhs), o.rule.rhs));
}

TEST_CASE("unequal conjugate pair is reoriented") {
  auto ctx = non_hermitian();
  SymbolRegistry reg(ctx.get());
  const auto x = reg.register_word(OperatorWord{0}).id;
  // <x*> = 2 <x> + 1.
  const Polynomial p = reg.normalize(std::vector<Monomial>{mono(x, 1.0, true), mono(x, -2.0), mono(1, -1.0)});
  const Orientation o = orient(reg, p);
  CHECK(o.rule.kind == MomentRuleKind::reoriented);

  // Independent solution of {v = 2u + 1, u = 2v + 1} for u = <x>, v = <x*>.
  Eigen::Matrix2d A;
  A << 2, -1, -1, 2;
  const Eigen::Vector2d sol = A.fullPivLu().solve(Eigen::Vector2d(-1, -1));
  const Polynomial rhs = o.rule.rhs;
  REQUIRE(reg.is_scalar(rhs));
  CHECK(evaluate(rhs, {{1, 1.0}}).real() == doctest::Approx(sol(0)));
  CHECK(evaluate(rhs, {{1, 1.0}}).imag() == doctest::Approx(0.0));
}

TEST_CASE("rulebook completion") {
  Context free(3);
  SymbolRegistry reg(&free);
  const auto x = reg.register_word(OperatorWord{0}).id;
  const auto y = reg.register_word(OperatorWord{1}).id;
  const auto z = reg.register_word(OperatorWord{2}).id;

  MomentRulebook book(reg);
  book.add_constraint(reg.normalize(std::vector<Monomial>{mono(z, 1.0), mono(x, -1.0)}));
  book.add_constraint(reg.normalize(std::vector<Monomial>{mono(z, 1.0), mono(y, -1.0)}));
  book.complete();
  REQUIRE(book.size() == 2);
  CHECK(approx_equal(book.rules().at(z).rhs, Polynomial(mono(x, 1.0))));
  CHECK(approx_equal(book.rules().at(y).rhs, Polynomial(mono(x, 1.0))));
  CHECK(book.is_reduced());
  CHECK(approx_equal(book.reduce(reg.normalize(std::vector<Monomial>{mono(x, 1.0), mono(y, 1.0)})),
                     Polynomial(mono(x, 2.0))));

  MomentRulebook bad(reg);
  bad.add_constraint(reg.normalize(std::vector<Monomial>{mono(x, 1.0), mono(1, -1.0)}));
  bad.add_constraint(reg.normalize(std::vector<Monomial>{mono(x, 1.0), mono(1, -2.0)}));
  CHECK_THROWS_AS(bad.complete(), InconsistentConstraints);

  MomentRulebook empty(reg);
  empty.complete();
  CHECK(empty.empty());
  const Polynomial p = reg.normalize(std::vector<Monomial>{mono(x, 3.0), mono(z, 1.0)});
  CHECK(empty.reduce(p) == p);
}

TEST_CASE("sorted constant rules need no right-hand side rewrites") {
  Context free(4);
  SymbolRegistry reg(&free);
  std::vector<std::size_t> ids;
  for (oper_t k = 0; k < 4; ++k) ids.push_back(reg.register_word(OperatorWord{k}).id);
  MomentRulebook book(reg);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    book.add_constraint(reg.normalize(std::vector<Monomial>{mono(ids[k], 1.0), mono(1, -double(k))}));
  }
  book.complete();
  CHECK(book.size() == 4);
  CHECK(book.rhs_rewrites() == 0);
}

TEST_CASE("random consistent constraints preserve values") {
  auto ctx = std::make_shared<Context>(2);
  MatrixSystem sys(ctx);
  sys.moment_matrix(2);
  SymbolRegistry& reg = sys.registry();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<std::size_t> pick(2, reg.size() - 1);

  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::size_t, cplx> values = {{0, 0.0}, {1, 1.0}};
    for (std::size_t id = 2; id < reg.size(); ++id) {
      values[id] = reg[id].hermitian ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
    }
    MomentRulebook book(reg);
    for (int k = 0; k < 6; ++k) {
      std::vector<Monomial> terms;
      for (int t = 0; t < 3; ++t) terms.push_back(mono(pick(rng), g(rng), rng() % 2 == 0));
      Polynomial p = reg.normalize(terms);
      p = reg.add(p, reg.constant(-evaluate(p, values)));
      if (p.is_zero() || reg.is_scalar(p)) continue;
      book.add_constraint(p);
    }
    book.complete();
    CHECK(book.is_reduced());
    for (int t = 0; t < 10; ++t) {
      std::vector<Monomial> terms;
      for (int s = 0; s < 4; ++s) terms.push_back(mono(pick(rng), cplx(g(rng), g(rng)), rng() % 2 == 0));
      const Polynomial p = reg.normalize(terms);
      const Polynomial r = book.reduce(p);
      CHECK(approx_equal(book.reduce(r), r, 1e-10));
      CHECK(std::abs(evaluate(r, values) - evaluate(p, values)) < 1e-9);
    }
  }
}
