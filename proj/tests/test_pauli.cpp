// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "ncrelax/matrix.hpp"
#include "ncrelax/moment_rules.hpp"
#include "ncrelax/pauli.hpp"
#include "oracles.hpp"

using namespace ncr;

namespace {

constexpr auto X = PauliContext::X;
constexpr auto Y = PauliContext::Y;
constexpr auto Z = PauliContext::Z;

oper_t op(std::size_t q, PauliContext::Axis a) { return PauliContext::op(q, a); }

Eigen::MatrixXcd word_matrix(std::size_t n, const OperatorWord& w) {
  std::vector<unsigned> ops(w.ops.begin(), w.ops.end());
  return w.phase.value() * oracle::pauli_product(n, ops);
}

}  // namespace

TEST_CASE("Pauli product table") {
  PauliContext ctx(PauliSpec::chain(2));
  const OperatorWord xy = ctx.simplify({op(0, X), op(0, Y)});
  CHECK(xy.ops == std::vector<oper_t>{op(0, Z)});
  CHECK(xy.phase == Phase::imag());
  CHECK(ctx.simplify({op(0, X), op(0, X)}).is_identity());
  const OperatorWord swapped = ctx.simplify({op(1, X), op(0, X)});
  CHECK(swapped.ops == std::vector<oper_t>{op(0, X), op(1, X)});
  CHECK(swapped.phase == Phase::one());
  CHECK(ctx.format(swapped) == "X1 X2");
}

TEST_CASE("Pauli simplification agrees with Kronecker matrices") {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 1; n <= 3; ++n) {
    PauliContext ctx(PauliSpec::chain(n));
    std::uniform_int_distribution<oper_t> pick(0, static_cast<oper_t>(3 * n - 1));
    std::uniform_int_distribution<std::size_t> len(0, 8);
    for (int t = 0; t < 3400; ++t) {
      std::vector<oper_t> raw(len(rng));
      for (auto& o : raw) o = pick(rng);
      const OperatorWord w = ctx.simplify(raw);
      std::vector<unsigned> ops(raw.begin(), raw.end());
      CHECK((word_matrix(n, w) - oracle::pauli_product(n, ops)).norm() < 1e-12);
      for (std::size_t i = 1; i < w.ops.size(); ++i) CHECK(PauliContext::qubit_of(w.ops[i - 1]) < PauliContext::qubit_of(w.ops[i]));
    }
  }
}

TEST_CASE("registered Pauli moments classify like their matrices") {
  auto ctx = std::make_shared<PauliContext>(PauliSpec::chain(3));
  MatrixSystem sys(ctx);
  auto m = sys.moment_matrix(2);
  for (const auto& e : sys.registry().entries()) {
    if (!e.has_word) continue;
    const Eigen::MatrixXcd P = word_matrix(3, e.word);
    CHECK(e.hermitian == (P - P.adjoint()).isZero(1e-12));
    CHECK(e.antihermitian == (P + P.adjoint()).isZero(1e-12));
  }
}

TEST_CASE("neighbour filters") {
  PauliContext chain(PauliSpec::chain(5));
  const auto f2 = chain.neighbour_filter(2);
  CHECK(f2.admit(OperatorWord{op(0, X), op(2, Z)}));
  CHECK_FALSE(f2.admit(OperatorWord{op(0, X), op(3, Z)}));

  PauliContext ring(PauliSpec::chain(6, true));
  CHECK(ring.neighbour_filter(1).admit(OperatorWord{op(0, Z), op(5, X)}));
  CHECK_FALSE(chain.neighbour_filter(1).admit(OperatorWord{op(0, Z), op(4, X)}));

  PauliContext small(PauliSpec::chain(3));
  CHECK(generate_dictionary(small, 3, small.neighbour_filter(2)).words == generate_dictionary(small, 3).words);
  CHECK(generate_dictionary(small, 2, small.neighbour_filter(1)).size() < generate_dictionary(small, 2).size());

  PauliContext lattice(PauliSpec::lattice(3, 3));
  CHECK_THROWS_AS(lattice.neighbour_filter(2), std::invalid_argument);
  // Column-major: qubit 0 neighbours 1 (same column) and 3 (next column).
  CHECK(lattice.neighbours(0, 1, 1));
  CHECK(lattice.neighbours(0, 3, 1));
  CHECK_FALSE(lattice.neighbours(0, 4, 1));
}

TEST_CASE("translational symmetrization") {
  PauliContext ring(PauliSpec::chain(4, true, true));
  const OpPolynomial h = ring.symmetrize(OpPolynomial::of(OperatorWord{op(0, X), op(1, X)}, 0.5));
  REQUIRE(h.size() == 4);
  for (const auto& t : h.terms) CHECK(t.coefficient == cplx(0.125, 0.0));
  const OpPolynomial one = ring.symmetrize(OpPolynomial::identity());
  REQUIRE(one.size() == 1);
  CHECK(one.terms.front().word.is_identity());

  CHECK(ring.canonical_moment(OperatorWord{op(1, X)}) == OperatorWord{op(0, X)});
  CHECK(ring.canonical_moment(OperatorWord{op(1, X), op(2, Z)}) == OperatorWord{op(0, X), op(1, Z)});
  CHECK(ring.canonical_moment(OperatorWord{}).is_identity());

  PauliContext plain(PauliSpec::chain(4));
  CHECK_THROWS_AS(plain.symmetrize(OpPolynomial::identity()), std::logic_error);
}

TEST_CASE("wrapping decides whether translated moments coincide") {
  for (bool wrap : {true, false}) {
    auto ctx = std::make_shared<PauliContext>(PauliSpec::chain(2, wrap, true));
    MatrixSystem sys(ctx);
    const Polynomial a = sys.moment(OperatorWord{op(0, X), op(1, Z)});
    const Polynomial b = sys.moment(OperatorWord{op(0, Z), op(1, X)});
    CHECK((a == b) == wrap);
  }
}

TEST_CASE("symmetrize is a projection on moments") {
  auto ctx = std::make_shared<PauliContext>(PauliSpec::chain(5, true, true));
  MatrixSystem sys(ctx);
  const OpPolynomial p = parse_op_polynomial(*ctx, "X1 Z2 + 2 Y3 - Z1 Z4 + 0.5");
  const OpPolynomial s = ctx->symmetrize(p);
  CHECK(approx_equal(sys.expectation(s), sys.expectation(ctx->symmetrize(s)), 1e-12));
  CHECK(approx_equal(sys.expectation(s), sys.expectation(p), 1e-12));
}

TEST_CASE("state-optimality matrix has a vanishing first row under commutator rules") {
  auto ctx = std::make_shared<PauliContext>(PauliSpec::chain(6, true, true));
  MatrixSystem sys(ctx);
  OpPolynomial base;
  for (auto axis : {X, Y, Z}) base.terms.push_back(OpTerm{0.25, OperatorWord{op(0, axis), op(1, axis)}});
  const OpPolynomial H = ctx->symmetrize(simplify(*ctx, base));
  const WordFilter nn = ctx->neighbour_filter(1);
  const SymbolicMatrix gamma = add(*sys.localizing_matrix(H, 1, nn),
                                   *sys.anticommutator_matrix(scale(*ctx, H, -0.5), 1, nn), sys.registry());
  MomentRulebook rules(sys.registry());
  for (const auto& r : sys.dictionary(1, nn).words) {
    const OpPolynomial rp = OpPolynomial::of(r);
    rules.add_constraint(sys.expectation(add(*ctx, multiply(*ctx, H, rp), scale(*ctx, multiply(*ctx, rp, H), -1.0))));
  }
  rules.complete();
  const SymbolicMatrix g = rules.reduce(gamma);
  for (std::size_t j = 0; j < g.dim(); ++j) {
    CHECK(g.at(0, j).is_zero());
    CHECK(g.at(j, 0).is_zero());
  }
}

TEST_CASE("exact Heisenberg energy oracle") {
  // Two-site periodic chain counts the single bond twice: 2 * 0.25 * (-3) / 2.
  CHECK(oracle::heisenberg_ground_energy_per_site(2, 0.25) == doctest::Approx(-0.75));
  CHECK(oracle::heisenberg_ground_energy_per_site(6, 0.25) == doctest::Approx(-0.4671).epsilon(1e-3));
}
