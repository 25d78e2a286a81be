// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "ncrelax/imported.hpp"
#include "ncrelax/sdp.hpp"

using namespace ncr;

namespace {

const std::vector<std::vector<std::string>> kChshGrid = {{"1", "2", "3", "4", "5"},
                                                         {"2", "2", "6", "7", "8"},
                                                         {"3", "6*", "3", "9", "10"},
                                                         {"4", "7", "9", "4", "11"},
                                                         {"5", "8", "10", "11*", "5"}};

}  // namespace

TEST_CASE("moment string grammar") {
  CHECK(parse_moment_string("0.5#2") == MomentToken{0.5, 2, false, false});
  CHECK(parse_moment_string("2.25#3*") == MomentToken{2.25, 3, true, false});
  CHECK(parse_moment_string("0.25") == MomentToken{0.25, 1, false, true});
  CHECK(parse_moment_string("-2") == MomentToken{-1.0, 2, false, false});
  CHECK(parse_moment_string("#4") == MomentToken{1.0, 4, false, false});
  CHECK(parse_moment_string("7*") == MomentToken{1.0, 7, true, false});

  for (const char* bad : {"", "0.5#", "#", "a", "2**", "-", "1.5*"}) {
    CHECK_THROWS_AS(parse_moment_string(bad), MomentParseError);
  }
  try {
    parse_moment_string("0.5#x");
    FAIL("expected a parse error");
  } catch (const MomentParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("rendered tokens parse back") {
  for (const char* s : {"0.5#2", "2.25#3*", "0.25", "-2", "-0.5", "1", "12*", "-3.5#9*", "0.001#2"}) {
    const MomentToken t = parse_moment_string(s);
    CHECK(parse_moment_string(render_token(t)) == t);
  }
}

TEST_CASE("general import keeps symbols complex") {
  ImportedScenario scn;
  const SymbolicMatrix m = scn.import_matrix({{"1", "2"}, {"3", "4"}}, ImportMode::general);
  CHECK(m.dim() == 2);
  for (std::size_t id : {2, 3, 4}) CHECK_FALSE(scn.registry()[id].hermitian);
  CHECK(scn.registry().format(m.at(1, 0)) == "<w3>");
}

TEST_CASE("Hermitian import infers realness") {
  ImportedScenario scn;
  scn.import_matrix({{"1", "2"}, {"2", "3"}}, ImportMode::hermitian);
  CHECK(scn.registry()[2].hermitian);

  ImportedScenario none;
  none.import_matrix({{"1", "2"}, {"2*", "3"}}, ImportMode::hermitian);
  CHECK_FALSE(none.registry()[2].hermitian);

  ImportedScenario bad;
  CHECK_THROWS_AS(bad.import_matrix({{"1", "2"}, {"3", "4"}}, ImportMode::hermitian), std::invalid_argument);

  ImportedScenario sym;
  sym.import_matrix({{"1", "2"}, {"2", "3"}}, ImportMode::symmetric);
  CHECK_FALSE(sym.registry()[2].hermitian);
  CHECK_THROWS_AS(sym.import_matrix({{"1", "2"}, {"3", "4"}}, ImportMode::symmetric), std::invalid_argument);

  ImportedScenario real(true);
  real.import_matrix({{"1", "2"}, {"2", "3"}}, ImportMode::symmetric);
  CHECK(real.registry()[2].hermitian);
}

TEST_CASE("imported CHSH") {
  ImportedScenario scn;
  const SymbolicMatrix m = scn.import_matrix(kChshGrid, ImportMode::hermitian);
  for (std::size_t id = 2; id <= 11; ++id) CHECK(scn.registry()[id].hermitian == (id != 6 && id != 11));
  const Polynomial obj = scn.import_polynomial({"2.0", "-4#2", "-4#4", "4#7", "4#8", "4#9", "-4#10"});
  const auto r = solve_simple(scn.registry(), {&m}, obj, Sense::minimize);
  CHECK(r.value == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("imported polynomials") {
  ImportedScenario scn;
  CHECK(scn.import_polynomial({"0"}).is_zero());
  CHECK(scn.import_polynomial({"1", "1"}) == scn.registry().constant(2.0));
  CHECK_THROWS_AS(scn.multiply(scn.import_polynomial({"2"}), scn.import_polynomial({"3"})), UnsupportedOperation);
}

TEST_CASE("grid reader") {
  std::istringstream in("1, 2, \"3\"\n\n 2 ,4,5\n3,5,6\n");
  const auto g = read_grid(in);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == std::vector<std::string>{"1", "2", "3"});
  CHECK(g[1] == std::vector<std::string>{"2", "4", "5"});
}
