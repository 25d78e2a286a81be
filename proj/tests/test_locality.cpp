// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ncrelax/locality.hpp"
#include "ncrelax/matrix.hpp"

using namespace ncr;

namespace {

bool same(const Context& ctx, const OpPolynomial& a, const OpPolynomial& b) {
  return add(ctx, a, scale(ctx, b, -1.0)).empty();
}

const char* kChsh = "2 - 4 a0 - 4 b0 + 4 a0 b0 + 4 a0 b1 + 4 a1 b0 - 4 a1 b1";

}  // namespace

TEST_CASE("locality simplification") {
  LocalityContext chsh(LocalitySpec::uniform(2, 2, 2));
  CHECK(chsh.operator_count() == 4);
  CHECK(chsh.format(chsh.parse_word("a0 b0 a0")) == "a0 b0");
  CHECK(chsh.format(chsh.parse_word("a0 a1")) == "a0 a1");
  CHECK(chsh.format(chsh.parse_word("b1 a0")) == "a0 b1");

  LocalityContext three(LocalitySpec::uniform(2, 1, 3));
  CHECK(three.operator_count() == 4);
  CHECK(three.simplify({three.op(0, 0, 0), three.op(0, 0, 1)}).zero);
  CHECK_THROWS_AS(three.op(0, 0, 2), std::out_of_range);

  LocalitySpec bad = LocalitySpec::uniform(2, 2, 2);
  bad.parties[0].measurements[0].outcomes = 1;
  CHECK_THROWS_AS(LocalityContext{bad}, std::invalid_argument);
}

TEST_CASE("full-correlator and Collins-Gisin tensors") {
  LocalityContext chsh(LocalitySpec::uniform(2, 2, 2));
  const OpPolynomial expect = parse_op_polynomial(chsh, kChsh);
  const OpPolynomial fc = fc_polynomial(chsh, Tensor::matrix({{0, 0, 0}, {0, 1, 1}, {0, 1, -1}}));
  const OpPolynomial cg = cg_polynomial(chsh, Tensor::matrix({{2, -4, 0}, {-4, 4, 4}, {0, 4, -4}}));
  CHECK(same(chsh, fc, expect));
  CHECK(same(chsh, cg, expect));
  CHECK(cg_polynomial(chsh, Tensor::matrix({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})).empty());
  CHECK_THROWS_AS(cg_polynomial(chsh, Tensor::matrix({{0, 0}, {0, 0}})), std::invalid_argument);

  LocalityContext ternary(LocalitySpec::uniform(2, 2, 3));
  CHECK_THROWS_AS(fc_polynomial(ternary, Tensor::matrix({{0, 0, 0}, {0, 1, 1}, {0, 1, -1}})), std::invalid_argument);
}

TEST_CASE("correlators") {
  LocalityContext chsh(LocalitySpec::uniform(2, 2, 2));
  // (2 a - 1)(2 b - 1) expanded by hand.
  CHECK(same(chsh, correlator(chsh, 0, 0, 1, 0), parse_op_polynomial(chsh, "1 - 2 a0 - 2 b0 + 4 a0 b0")));
  OpPolynomial sum = add(chsh, correlator(chsh, 0, 0, 1, 0), correlator(chsh, 0, 0, 1, 1));
  sum = add(chsh, sum, correlator(chsh, 0, 1, 1, 0));
  sum = add(chsh, sum, scale(chsh, correlator(chsh, 0, 1, 1, 1), -1.0));
  CHECK(same(chsh, sum, parse_op_polynomial(chsh, kChsh)));
  CHECK_THROWS_AS(correlator(chsh, 0, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("probability polynomials") {
  LocalityContext single(LocalitySpec::uniform(1, 1, 2));
  auto ps = probability_polynomials(single, {{0, 0}}, {0.3, 0.7});
  REQUIRE(ps.size() == 2);
  CHECK(same(single, ps[0], parse_op_polynomial(single, "a0 - 0.3")));
  CHECK(same(single, ps[1], parse_op_polynomial(single, "1 - a0 - 0.7")));

  LocalityContext tri(LocalitySpec::uniform(3, 1, 2));
  auto p8 = probability_polynomials(tri, {{0, 0}, {1, 0}, {2, 0}}, {0.5, 0, 0, 0, 0, 0, 0, 0.5});
  CHECK(p8.size() == 8);
  CHECK(same(tri, p8[0], parse_op_polynomial(tri, "a0 b0 c0 - 0.5")));

  LocalityContext four(LocalitySpec::uniform(1, 1, 4));
  auto pu = probability_polynomials(four, {{0, 0}}, {0.25, 0.25, 0.25, 0.25});
  REQUIRE(pu.size() == 4);
  OpPolynomial total;
  for (const auto& p : pu) total = add(four, total, p);
  CHECK(total.empty());

  CHECK_THROWS_AS(probability_polynomials(single, {{0, 0}}, {0.3}), std::invalid_argument);
  CHECK_THROWS_AS(probability_polynomials(single, {{0, 0}}, {0.3, 0.3}), std::invalid_argument);
}

TEST_CASE("locality dictionary sizes") {
  LocalityContext chsh(LocalitySpec::uniform(2, 2, 2));
  CHECK(generate_dictionary(chsh, 1).size() == 5);
  CHECK(generate_dictionary(chsh, 5).size() == 61);
  LocalityContext i3322(LocalitySpec::uniform(2, 3, 2));
  const std::size_t expect[] = {7, 28, 88, 244};
  for (std::size_t L = 1; L <= 4; ++L) CHECK(generate_dictionary(i3322, L).size() == expect[L - 1]);
}

TEST_CASE("single-operator locality moments are real") {
  auto ctx = std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2));
  MatrixSystem sys(ctx);
  auto m = sys.moment_matrix(2);
  CHECK(m->structurally_hermitian(sys.registry()));
  for (oper_t op = 0; op < ctx->operator_count(); ++op) {
    const auto id = sys.moment(OperatorWord{op}).terms.front().id;
    CHECK(sys.registry()[id].hermitian);
  }
  const auto a0a1 = sys.moment(ctx->parse_word("a0 a1")).terms.front().id;
  CHECK_FALSE(sys.registry()[a0a1].hermitian);
}
