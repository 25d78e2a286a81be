// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ncrelax/matrix.hpp"
#include "ncrelax/operator_polynomial.hpp"
#include "ncrelax/pauli.hpp"
#include "ncrelax/registry.hpp"

using namespace ncr;

TEST_CASE("a word and its adjoint share one symbol") {
  Context free(2);
  SymbolRegistry reg(&free);
  const Monomial xy = reg.register_word(OperatorWord{0, 1});
  const Monomial yx = reg.register_word(OperatorWord{1, 0});
  CHECK(xy.id == yx.id);
  CHECK_FALSE(xy.conjugated);
  CHECK(yx.conjugated);
  CHECK_FALSE(reg[xy.id].hermitian);

  const Monomial x = reg.register_word(OperatorWord{0});
  CHECK(reg[x.id].hermitian);
  CHECK(reg.register_word(OperatorWord{0}) == x);
  CHECK(reg.register_word(OperatorWord{}).id == 1);
  CHECK(reg.register_word(OperatorWord::make_zero()).id == 0);
}

TEST_CASE("Pauli products register with their phase") {
  PauliContext ctx(PauliSpec::chain(2));
  SymbolRegistry reg(&ctx);
  const OperatorWord w = ctx.simplify({PauliContext::op(0, PauliContext::X), PauliContext::op(0, PauliContext::Y)});
  const Monomial m = reg.register_word(w);
  CHECK(reg[m.id].word == OperatorWord{PauliContext::op(0, PauliContext::Z)});
  CHECK(m.coefficient == cplx(0.0, 1.0));
}

TEST_CASE("symbol order") {
  Context free(2);
  SymbolRegistry reg(&free);
  const Monomial x = reg.register_word(OperatorWord{0});
  const Monomial xy = reg.register_word(OperatorWord{0, 1});
  const Monomial yx = reg.register_word(OperatorWord{1, 0});
  CHECK(reg.compare(x, xy) < 0);
  CHECK(reg.compare(xy, yx) < 0);
  CHECK(reg.compare(Polynomial{}, reg.constant(1.0)) < 0);
}

TEST_CASE("normalization gathers like terms") {
  Context free(2);
  SymbolRegistry reg(&free);
  const Monomial x = reg.register_word(OperatorWord{0});
  CHECK(reg.normalize(std::vector<Monomial>{x, x}) == Polynomial(Monomial{x.id, false, 2.0}));
  CHECK(reg.normalize(std::vector<Monomial>{x, Monomial{x.id, false, -1.0}}).is_zero());

  OpPolynomial px = OpPolynomial::of(OperatorWord{0}, 20.0);
  OpPolynomial sum = add(free, OpPolynomial::of(OperatorWord{0}), OpPolynomial::of(OperatorWord{1}, 3.0));
  const Polynomial p = expectation(reg, multiply(free, px, sum));
  CHECK(reg.format(p) == "60<x1 x2> + 20<x1 x1>");

  const Polynomial q = reg.normalize(p);
  CHECK(reg.normalize(q) == q);
}

TEST_CASE("basis slots follow Hermiticity") {
  auto ctx = std::make_shared<Context>(2);
  MatrixSystem sys(ctx);
  sys.moment_matrix(1);
  auto [re, im] = sys.registry().assign_basis_slots();
  CHECK(re == 6);
  CHECK(im == 1);
  for (const auto& e : sys.registry().entries()) {
    if (e.id == 0) continue;
    const int kinds = int(e.hermitian) + int(e.antihermitian) + int(e.real_slot && e.imag_slot);
    CHECK(kinds == 1);
  }
  CHECK(*sys.registry()[1].real_slot == 0);

  SymbolRegistry named(nullptr);
  named.register_named(2, "a", false, true);
  named.assign_basis_slots();
  CHECK_FALSE(named[2].real_slot);
  CHECK(named[2].imag_slot);
}

TEST_CASE("commuting registries have no imaginary slots") {
  auto ctx = std::make_shared<PauliContext>(PauliSpec::chain(2));
  MatrixSystem sys(ctx);
  sys.moment_matrix(1);
  CHECK(sys.registry().assign_basis_slots().second == 0);
}

TEST_CASE("composite symbols are sorted products") {
  Context free(2);
  SymbolRegistry reg(&free);
  const auto x = reg.register_word(OperatorWord{0}).id;
  const auto y = reg.register_word(OperatorWord{1}).id;
  const auto xy = reg.register_composite({y, x});
  CHECK(reg.register_composite({x, y}) == xy);
  CHECK(reg[xy].factors == std::vector<std::size_t>{x, y});
  CHECK(reg.register_composite({x}) == x);
}
