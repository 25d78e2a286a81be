// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "../src/sdp/kernels.hpp"
#include "golden.hpp"
#include "ncrelax/locality.hpp"
#include "ncrelax/sdp.hpp"
#include "oracles.hpp"

using namespace ncr;

namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);

SymmetricSparse one_by_one(double v) {
  SymmetricSparse s;
  s.dim = 1;
  s.entries.push_back({0, 0, v});
  return s;
}

struct Chsh {
  std::shared_ptr<LocalityContext> ctx = std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2));
  MatrixSystem sys{ctx};
  MatrixSystem::MatrixHandle mm = sys.moment_matrix(1);
  Polynomial objective = sys.expectation(fc_polynomial(*ctx, Tensor::matrix({{0, 0, 0}, {0, 1, 1}, {0, 1, -1}})));
};

Eigen::MatrixXd dense(const SymmetricSparse& s, std::size_t dim) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& e : s.entries) out(e.row, e.col) = e.value;
  return out;
}

}  // namespace

TEST_CASE("trivial problems") {
  SdpProblem p;
  p.sense = Sense::maximize;
  p.variables = {{0, false, "a1"}};
  p.objective = {1.0};
  SdpBlock b;
  b.dim = 1;
  b.terms.push_back({0, one_by_one(1.0)});
  p.blocks.push_back(b);
  p.equalities.push_back({{{0, 1.0}}, 1.0});
  p.normalization = 0;
  const SdpSolution s = solve(p);
  CHECK(s.status == SolveStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0));

  SdpProblem empty;
  empty.sense = Sense::feasibility;
  CHECK(solve(empty).feasible);

  auto ctx = std::make_shared<Context>(2);
  MatrixSystem sys(ctx);
  auto m0 = sys.moment_matrix(0);
  CHECK(solve_simple(sys.registry(), {m0.get()}, std::nullopt).feasible);
}

TEST_CASE("CHSH assembly and solution") {
  Chsh c;
  AssemblyOptions ao;
  ao.sense = Sense::maximize;
  const SdpProblem p = assemble(c.sys.registry(), c.objective, {c.mm.get()}, {}, ao);
  CHECK(p.real_variable_count() == 11);
  CHECK(p.imaginary_variable_count() == 2);
  CHECK(p.normalization);

  const SdpSolution s = solve(p);
  REQUIRE(s.status == SolveStatus::optimal);
  CHECK(s.objective == doctest::Approx(kTsirelson).epsilon(1e-6));
  CHECK(evaluate(c.sys.registry(), c.objective, s).real() == doctest::Approx(kTsirelson).epsilon(1e-6));
  CHECK(std::abs(evaluate(c.sys.registry(), c.sys.registry().constant(1.0), s) - cplx(1.0)) < 1e-9);
  const Eigen::MatrixXcd M = evaluate(c.sys.registry(), *c.mm, s);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(M).eigenvalues().minCoeff() > -1e-6);

  const auto low = solve_simple(c.sys.registry(), {c.mm.get()}, c.objective, Sense::minimize);
  CHECK(low.value == doctest::Approx(-kTsirelson).epsilon(1e-6));
  for (const auto& e : {s.relative_gap, s.primal_residual, s.dual_residual}) CHECK(e < 1e-6);
}

TEST_CASE("real-only assembly agrees on conjugation-symmetric problems") {
  Chsh c;
  const auto full = solve_simple(c.sys.registry(), {c.mm.get()}, c.objective, Sense::maximize, false);
  const auto real = solve_simple(c.sys.registry(), {c.mm.get()}, c.objective, Sense::maximize, true);
  CHECK(full.value == doctest::Approx(real.value).epsilon(1e-5));

  auto ctx = golden::projector_pair();
  MatrixSystem sys(ctx);
  auto mm = sys.moment_matrix(2);
  auto lm = sys.localizing_matrix(parse_op_polynomial(*ctx, "- x2 x2 + x2 + 0.5"), 1);
  const Polynomial obj = sys.expectation(parse_op_polynomial(*ctx, "x1 x2 + x2 x1"));
  const auto a = solve_simple(sys.registry(), {mm.get(), lm.get()}, obj, Sense::minimize, false);
  const auto b = solve_simple(sys.registry(), {mm.get(), lm.get()}, obj, Sense::minimize, true);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-5));
  CHECK(a.value == doctest::Approx(-0.75).epsilon(1e-5));
}

TEST_CASE("golden SDPA file") {
  SdpProblem p;
  p.sense = Sense::minimize;
  p.variables = {{0, false, "a1"}};
  p.objective = {1.0};
  SdpBlock b;
  b.dim = 1;
  b.terms.push_back({0, one_by_one(1.0)});
  p.blocks.push_back(b);
  CHECK(to_sdpa(p) == "* ncrelax minimize, 1 variables\n1\n1\n1\n1\n1 1 1 1 1\n");
}

TEST_CASE("SDPA export reads back to the same matrices") {
  Chsh c;
  AssemblyOptions ao;
  ao.sense = Sense::maximize;
  ao.real_only = true;
  const SdpProblem p = assemble(c.sys.registry(), c.objective, {c.mm.get()}, {}, ao);
  std::istringstream in(to_sdpa(p));
  const oracle::SdpaFile f = oracle::read_sdpa(in);
  REQUIRE(f.m == p.variables.size());
  REQUIRE(f.dims.size() == p.blocks.size() + 1);
  for (std::size_t v = 0; v < f.m; ++v) CHECK(f.c[v] == -p.objective[v]);
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const SdpBlock& blk = p.blocks[k];
    CHECK(f.dims[k] == long(blk.dim));
    CHECK((f.blocks[k][0] + dense(blk.constant, blk.dim)).norm() == 0.0);
    for (const auto& [v, F] : blk.terms) CHECK((f.blocks[k][v + 1] - dense(F, blk.dim)).norm() == 0.0);
  }
  CHECK(f.dims.back() == -long(2 * p.equalities.size()));
}

TEST_CASE("complex blocks are exported as their real embedding") {
  auto ctx = std::make_shared<Context>(2);
  MatrixSystem sys(ctx);
  auto mm = sys.moment_matrix(1);
  AssemblyOptions ao;
  ao.sense = Sense::feasibility;
  const SdpProblem p = assemble(sys.registry(), Polynomial{}, {mm.get()}, {}, ao);
  REQUIRE(p.blocks.size() == 1);
  CHECK(p.blocks[0].embedded);
  CHECK(p.blocks[0].dim == 6);
  std::istringstream in(to_sdpa(p));
  CHECK(oracle::read_sdpa(in).dims.front() == 6);
}

TEST_CASE("planted SDPs are recovered") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 40; ++t) {
    const oracle::Planted pl = oracle::planted_sdp(rng);
    DenseSdp sdp{pl.C, pl.A, pl.b};
    const DenseSdpResult r = solve_dense(sdp);
    REQUIRE(r.status == SolveStatus::optimal);
    CHECK(std::abs(r.dual_objective - pl.optimum) < 1e-6 * std::max(1.0, std::abs(pl.optimum)));
    CHECK(r.dual_objective <= r.primal_objective + 1e-6);
  }
}

TEST_CASE("block dimension cap") {
  Chsh c;
  SolverOptions opts;
  opts.max_block_dimension = 3;
  AssemblyOptions ao;
  const SdpProblem p = assemble(c.sys.registry(), c.objective, {c.mm.get()}, {}, ao);
  CHECK_THROWS_AS(solve(p, opts), SolverError);
}

TEST_CASE("vector kernels agree with the scalar path") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (std::size_t n : {0, 1, 3, 4, 7, 16, 33, 100}) {
    std::vector<double> a(n), b(n), y1(n), y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
      y1[i] = y2[i] = g(rng);
    }
    CHECK(kernels::dot(a.data(), b.data(), n) == doctest::Approx(kernels::scalar::dot(a.data(), b.data(), n)));
    kernels::axpy(0.7, a.data(), y1.data(), n);
    kernels::scalar::axpy(0.7, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]));
  }
}
