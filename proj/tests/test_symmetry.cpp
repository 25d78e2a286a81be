// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "ncrelax/cli.hpp"
#include "ncrelax/locality.hpp"
#include "ncrelax/symmetry.hpp"

using namespace ncr;

namespace {

Eigen::MatrixXd permutation(const std::vector<int>& image) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(image.size(), image.size());
  for (std::size_t j = 0; j < image.size(); ++j) m(image[j], j) = 1.0;
  return m;
}

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(r.size(), r.begin()->size());
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

const Eigen::MatrixXd kSwap = permutation({0, 2, 1});

Eigen::MatrixXd swap_lifted() {
  // Basis 1, x, y, xx, xy, yx, yy.
  return permutation({0, 2, 1, 6, 5, 4, 3});
}

Eigen::MatrixXd swap_average() {
  const double h = 0.5;
  return rows({{1, 0, 0, 0, 0, 0, 0},
               {0, h, h, 0, 0, 0, 0},
               {0, h, h, 0, 0, 0, 0},
               {0, 0, 0, h, 0, 0, h},
               {0, 0, 0, 0, h, h, 0},
               {0, 0, 0, 0, h, h, 0},
               {0, 0, 0, h, 0, 0, h}});
}

}  // namespace

TEST_CASE("group generation") {
  CHECK(dimino({kSwap}).size() == 2);
  CHECK(dimino({Eigen::MatrixXd::Identity(3, 3)}).size() == 1);
  const auto s3 = dimino({permutation({0, 2, 1, 3}), permutation({0, 1, 3, 2})});
  CHECK(s3.size() == 6);
  CHECK(s3.front().isIdentity());
  CHECK_THROWS_AS(dimino({Eigen::MatrixXd::Identity(2, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(dimino({rows({{1, 0}, {0, 2}})}, 100), std::length_error);
}

TEST_CASE("lifting, averaging and factorizing the swap") {
  Context free(2);
  const auto basis = generate_dictionary(free, 2).words;
  CHECK(lift(free, kSwap, basis).isApprox(swap_lifted()));
  CHECK(lift(free, kSwap, generate_dictionary(free, 1).words).isApprox(kSwap));
  CHECK(lift(free, Eigen::MatrixXd::Identity(3, 3), basis).isIdentity());

  const Eigen::MatrixXd G = group_average({Eigen::MatrixXd::Identity(7, 7), swap_lifted()});
  CHECK((G - swap_average()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((G * G - G).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(group_average({Eigen::MatrixXd::Identity(4, 4)}).isIdentity());

  const LUReduction lu = lu_reduce(G);
  const Eigen::MatrixXd L = rows({{1, 0, 0, 0, 0, 0, 0},
                                  {0, 1, 0, 0, 0, 0, 0},
                                  {0, 1, 0, 0, 0, 0, 0},
                                  {0, 0, 0, 1, 0, 0, 0},
                                  {0, 0, 0, 0, 1, 0, 0},
                                  {0, 0, 0, 0, 1, 0, 0},
                                  {0, 0, 0, 1, 0, 0, 0}});
  const double h = 0.5;
  const Eigen::MatrixXd U = rows({{1, 0, 0, 0, 0, 0, 0},
                                  {0, h, h, 0, 0, 0, 0},
                                  {0, 0, 0, 0, 0, 0, 0},
                                  {0, 0, 0, h, 0, 0, h},
                                  {0, 0, 0, 0, h, h, 0},
                                  {0, 0, 0, 0, 0, 0, 0},
                                  {0, 0, 0, 0, 0, 0, 0}});
  CHECK((lu.L - L).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((lu.U - U).cwiseAbs().maxCoeff() < 1e-12);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(lu.row_perm[i] == i);
    CHECK(lu.col_perm[i] == i);
  }
  CHECK(lu.pivots == std::vector<std::size_t>{0, 1, 3, 4});

  const LUReduction full = lu_reduce(Eigen::MatrixXd::Identity(5, 5));
  CHECK(full.pivots.size() == 5);
}

TEST_CASE("reduction of the swap-symmetric pair") {
  auto ctx = std::make_shared<Context>(2);
  MatrixSystem base(ctx);
  base.moment_matrix(1);
  SymmetryReduction red(base, {kSwap}, 2);
  CHECK(red.group().size() == 2);
  CHECK(red.reduced_count() == 4);
  const auto& reg = red.reduced_registry();
  const char* expect[] = {"1", "<Z1>", "<Z1>", "<Z2>", "<Z3>", "<Z3>", "<Z2>"};
  for (std::size_t i = 0; i < 7; ++i) CHECK(reg.format(red.image(i)) == expect[i]);
  CHECK(red.transform(base.registry().constant(3.0)) == reg.constant(3.0));
}

TEST_CASE("reduced CHSH scenario") {
  auto ctx = std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2));
  MatrixSystem base(ctx);
  auto mm = base.moment_matrix(1);
  SymmetryReduction red(base, cli::chsh_symmetry_generators(), 2);
  CHECK(red.group().size() == 16);
  const auto& reg = red.reduced_registry();
  const Polynomial chsh = base.expectation(fc_polynomial(*ctx, Tensor::matrix({{0, 0, 0}, {0, 1, 1}, {0, 1, -1}})));
  CHECK(reg.format(red.transform(chsh)) == "16<Z1> + 2");

  // Marginals 1/2, <a0 a1> = 1/4 and <a_x b_y> = (1 + E_xy) / 4 with
  // E_00 = E_01 = E_10 = -E_11 = 4 Z1 + 1/2.
  const SymbolicMatrix m = red.transform(*mm);
  const char* expect[5][5] = {{"1", "0.5", "0.5", "0.5", "0.5"},
                              {"0.5", "0.5", "0.25", "<Z1> + 0.375", "<Z1> + 0.375"},
                              {"0.5", "0.25", "0.5", "<Z1> + 0.375", "-<Z1> + 0.125"},
                              {"0.5", "<Z1> + 0.375", "<Z1> + 0.375", "0.5", "0.25"},
                              {"0.5", "<Z1> + 0.375", "-<Z1> + 0.125", "0.25", "0.5"}};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) CHECK(reg.format(m.at(i, j)) == expect[i][j]);
  }
}

TEST_CASE("lifting is a homomorphism") {
  LocalityContext ctx(LocalitySpec::uniform(2, 2, 2));
  const auto group = dimino(cli::chsh_symmetry_generators());
  const auto basis = generate_dictionary(ctx, 2).words;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  for (int t = 0; t < 30; ++t) {
    const auto& g = group[pick(rng)];
    const auto& h = group[pick(rng)];
    const Eigen::MatrixXd lhs = lift(ctx, g * h, basis);
    const Eigen::MatrixXd rhs = lift(ctx, g, basis) * lift(ctx, h, basis);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}
