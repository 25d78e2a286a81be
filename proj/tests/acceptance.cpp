// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks: one PASS/FAIL line per criterion. Exits nonzero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "golden.hpp"
#include "ncrelax/cli.hpp"
#include "ncrelax/locality.hpp"
#include "ncrelax/moment_rules.hpp"
#include "ncrelax/operator_rules.hpp"
#include "ncrelax/parallel.hpp"
#include "ncrelax/pauli.hpp"
#include "ncrelax/symmetry.hpp"
#include "oracles.hpp"

using namespace ncr;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Accumulates failed checks of one criterion.
struct Checker {
  std::ostringstream failures;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) failures << "; ";
    failures << what;
    ok = false;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(10);
    s << what << " = " << got << " (want " << want << " +- " << tol << ")";
    expect(std::abs(got - want) <= tol, s.str());
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Eigen::MatrixXd permutation(const std::vector<int>& image) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(image.size()), static_cast<Eigen::Index>(image.size()));
  for (std::size_t j = 0; j < image.size(); ++j) m(image[j], static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Monomial mono(std::size_t id, cplx c, bool conj = false) { return Monomial{id, conj, c}; }

Polynomial chsh_polynomial(MatrixSystem& sys, const LocalityContext& ctx) {
  return sys.expectation(fc_polynomial(ctx, Tensor::matrix({{0, 0, 0}, {0, 1, 1}, {0, 1, -1}})));
}

std::string c1(Checker& c) {
  auto ctx = std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2));
  MatrixSystem sys(ctx);
  auto mm = sys.moment_matrix(1);
  const Polynomial obj = chsh_polynomial(sys, *ctx);
  const double lo = solve_simple(sys.registry(), {mm.get()}, obj, Sense::minimize).value;
  const double hi = solve_simple(sys.registry(), {mm.get()}, obj, Sense::maximize).value;
  c.near(lo, -2.0 * std::sqrt(2.0), 1e-4, "minimum");
  c.near(hi, 2.0 * std::sqrt(2.0), 1e-4, "maximum");
  return "min " + fmt(lo) + ", max " + fmt(hi);
}

std::string c2(Checker& c) {
  std::ostringstream out;
  const auto sizes = [&](const std::shared_ptr<const Context>& ctx, std::size_t from,
                         const std::vector<std::size_t>& want, const std::string& name) {
    MatrixSystem sys(ctx);
    out << name;
    for (std::size_t i = 0; i < want.size(); ++i) {
      const std::size_t got = sys.dictionary(from + i).words.size();
      out << " " << got;
      c.expect(got == want[i], name + " level " + std::to_string(from + i) + " size " + std::to_string(got));
    }
    out << "; ";
  };
  sizes(std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2)), 5, {61, 85, 113, 145}, "CHSH");
  sizes(std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 3, 2)), 1, {7, 28, 88, 244, 628}, "I3322");
  sizes(golden::projector_pair(), 1, {3, 6, 11, 19, 32, 53, 87}, "PNA");

  const auto t0 = Clock::now();
  MatrixSystem fresh(std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2)));
  fresh.dictionary(8);
  const double t = ms_since(t0);
  c.expect(t < 1000.0, "CHSH level 8 dictionary took " + fmt(t) + " ms");
  out << "CHSH level 8 dictionary " << fmt(t) << " ms";
  return out.str();
}

OperatorWord random_reduce(const OperatorRulebook& book, OperatorWord w, std::mt19937_64& rng) {
  while (!w.zero) {
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t r = 0; r < book.size(); ++r) {
      for (std::size_t pos : OperatorRulebook::matches(w, book.rules()[r])) options.emplace_back(r, pos);
    }
    if (options.empty()) break;
    const auto [r, pos] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    w = OperatorRulebook::apply_at(w, book.rules()[r], pos);
  }
  return w;
}

std::string c3(Checker& c) {
  constexpr oper_t a = 0, b = 1, cc = 2;
  OperatorRulebook book(3);
  book.add_rule({{a, b}, OperatorWord{a}});
  book.add_rule({{b, cc}, OperatorWord{b}});
  const auto result = book.complete(128);
  c.expect(result.status == CompletionStatus::convergent, "completion did not converge");
  c.expect(result.rules_added == 1, "added " + std::to_string(result.rules_added) + " rules");
  bool found = false;
  for (const auto& r : book.rules()) found |= (r.lhs == std::vector<oper_t>{a, cc} && r.rhs == OperatorWord{a});
  c.expect(found, "rule ac -> a missing");

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> len(0, 12);
  std::uniform_int_distribution<oper_t> op(0, 2);
  std::size_t mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<oper_t> raw(len(rng));
    for (auto& o : raw) o = op(rng);
    const OperatorWord w(raw);
    if (random_reduce(book, w, rng) != book.reduce(w)) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " order-dependent reductions");
  return std::to_string(book.size()) + " rules, 1000 words reduced consistently";
}

std::string c4(Checker& c) {
  AlgebraicAlphabet names({"x"}, false);
  auto ctx = std::make_shared<AlgebraicContext>(names, OperatorRulebook(names.size()));
  SymbolRegistry reg(ctx.get());
  const auto x = reg.register_word(OperatorWord{0}).id;
  const Polynomial p = reg.normalize(std::vector<Monomial>{mono(x, 0.5), mono(x, 0.5, true), mono(1, -1.0)});
  const Orientation o = orient(reg, p);
  c.expect(o.rule.kind == MomentRuleKind::partial, "rule is not partial");
  const Polynomial expect = reg.normalize(std::vector<Monomial>{mono(x, 0.5), mono(x, -0.5, true), mono(1, 1.0)});
  c.expect(o.rule.lhs == x && approx_equal(o.rule.rhs, expect), "partial rule is " + reg.format(o.rule.rhs));
  const Polynomial once = apply_rule(reg, o.rule, Polynomial(mono(x, 1.0)));
  c.expect(approx_equal(apply_rule(reg, o.rule, once), once), "partial rule not idempotent");

  Context free(3);
  SymbolRegistry reg3(&free);
  const auto X = reg3.register_word(OperatorWord{0}).id;
  const auto Y = reg3.register_word(OperatorWord{1}).id;
  const auto Z = reg3.register_word(OperatorWord{2}).id;
  MomentRulebook book(reg3);
  book.add_constraint(reg3.normalize(std::vector<Monomial>{mono(Z, 1.0), mono(X, -1.0)}));
  book.add_constraint(reg3.normalize(std::vector<Monomial>{mono(Z, 1.0), mono(Y, -1.0)}));
  book.complete();
  const bool pair = book.size() == 2 && book.rules().count(Z) && book.rules().count(Y) &&
                    approx_equal(book.rules().at(Z).rhs, Polynomial(mono(X, 1.0))) &&
                    approx_equal(book.rules().at(Y).rhs, Polynomial(mono(X, 1.0)));
  c.expect(pair, "completion is not {z -> x, y -> x}");

  MomentRulebook bad(reg3);
  bad.add_constraint(reg3.normalize(std::vector<Monomial>{mono(X, 1.0), mono(1, -1.0)}));
  bad.add_constraint(reg3.normalize(std::vector<Monomial>{mono(X, 1.0), mono(1, -2.0)}));
  bool raised = false;
  try {
    bad.complete();
  } catch (const InconsistentConstraints&) {
    raised = true;
  }
  c.expect(raised, "inconsistent constraints accepted");
  return "<x> -> " + reg.format(o.rule.rhs);
}

std::string c5(Checker& c) {
  auto job = cli::build_example("triangle");
  const std::size_t rules = job->rulebooks.at(1)->size();
  c.expect(rules == 74, "level 2 distribution rulebook has " + std::to_string(rules) + " rules, want 74");
  const cli::SolveReport r = cli::solve_job(*job);
  c.expect(r.solutions.size() == 2, "expected two solutions");
  if (r.solutions.size() == 2) {
    c.expect(r.solutions[0].feasible, "level 1 infeasible");
    c.expect(!r.solutions[1].feasible, "level 2 feasible");
  }
  std::ostringstream out;
  out << rules << " rules";
  for (std::size_t i = 0; i < r.solutions.size(); ++i) {
    out << ", level " << i + 1 << (r.solutions[i].feasible ? " feasible" : " infeasible") << " (t* "
        << fmt(r.solutions[i].objective) << ")";
  }
  return out.str();
}

std::string c6(Checker& c) {
  const Eigen::MatrixXd swap = permutation({0, 2, 1});
  Context free(2);
  const auto basis = generate_dictionary(free, 2).words;
  const Eigen::MatrixXd lifted = lift(free, swap, basis);
  c.expect((lifted - permutation({0, 2, 1, 6, 5, 4, 3})).cwiseAbs().maxCoeff() < 1e-12, "lifted swap");

  const double h = 0.5;
  const Eigen::MatrixXd G = group_average({Eigen::MatrixXd::Identity(7, 7), lifted});
  const Eigen::MatrixXd G_want = rows({{1, 0, 0, 0, 0, 0, 0},
                                       {0, h, h, 0, 0, 0, 0},
                                       {0, h, h, 0, 0, 0, 0},
                                       {0, 0, 0, h, 0, 0, h},
                                       {0, 0, 0, 0, h, h, 0},
                                       {0, 0, 0, 0, h, h, 0},
                                       {0, 0, 0, h, 0, 0, h}});
  c.expect((G - G_want).cwiseAbs().maxCoeff() < 1e-12, "group average");

  const LUReduction lu = lu_reduce(G);
  const Eigen::MatrixXd L = rows({{1, 0, 0, 0, 0, 0, 0},
                                  {0, 1, 0, 0, 0, 0, 0},
                                  {0, 1, 0, 0, 0, 0, 0},
                                  {0, 0, 0, 1, 0, 0, 0},
                                  {0, 0, 0, 0, 1, 0, 0},
                                  {0, 0, 0, 0, 1, 0, 0},
                                  {0, 0, 0, 1, 0, 0, 0}});
  const Eigen::MatrixXd U = rows({{1, 0, 0, 0, 0, 0, 0},
                                  {0, h, h, 0, 0, 0, 0},
                                  {0, 0, 0, 0, 0, 0, 0},
                                  {0, 0, 0, h, 0, 0, h},
                                  {0, 0, 0, 0, h, h, 0},
                                  {0, 0, 0, 0, 0, 0, 0},
                                  {0, 0, 0, 0, 0, 0, 0}});
  c.expect((lu.L - L).cwiseAbs().maxCoeff() < 1e-12, "L factor");
  c.expect((lu.U - U).cwiseAbs().maxCoeff() < 1e-12, "U factor");
  bool identity_perm = true;
  for (std::size_t i = 0; i < 7; ++i) identity_perm &= lu.row_perm[i] == i && lu.col_perm[i] == i;
  c.expect(identity_perm, "P and Q are not the identity");

  auto pair_ctx = std::make_shared<Context>(2);
  MatrixSystem base(pair_ctx);
  base.moment_matrix(1);
  SymmetryReduction red(base, {swap}, 2);
  c.expect(red.reduced_count() == 4, "reduced symbols: " + std::to_string(red.reduced_count()));
  const char* images[] = {"1", "<Z1>", "<Z1>", "<Z2>", "<Z3>", "<Z3>", "<Z2>"};
  for (std::size_t i = 0; i < 7; ++i) {
    const std::string got = red.reduced_registry().format(red.image(i));
    c.expect(got == images[i], "image of basis word " + std::to_string(i) + " is " + got);
  }

  auto ctx = std::make_shared<LocalityContext>(LocalitySpec::uniform(2, 2, 2));
  MatrixSystem chsh(ctx);
  auto mm = chsh.moment_matrix(1);
  SymmetryReduction sym(chsh, cli::chsh_symmetry_generators(), 2);
  const SymbolicMatrix m = sym.transform(*mm);
  const Polynomial obj = sym.transform(chsh_polynomial(chsh, *ctx));
  const double v = solve_simple(sym.reduced().registry(), {&m}, obj, Sense::maximize).value;
  c.near(v, 2.0 * std::sqrt(2.0), 1e-4, "reduced CHSH");
  return std::to_string(sym.reduced_count()) + " reduced CHSH symbols, optimum " + fmt(v);
}

std::string c7(Checker& c) {
  const std::vector<std::vector<std::string>> grid = {{"1", "2", "3", "4", "5"},
                                                      {"2", "2", "6", "7", "8"},
                                                      {"3", "6*", "3", "9", "10"},
                                                      {"4", "7", "9", "4", "11"},
                                                      {"5", "8", "10", "11*", "5"}};
  ImportedScenario scn;
  const SymbolicMatrix m = scn.import_matrix(grid, ImportMode::hermitian);
  for (std::size_t id = 2; id <= 11; ++id) {
    const bool real = scn.registry()[id].hermitian;
    c.expect(real == (id != 6 && id != 11), "symbol " + std::to_string(id) + (real ? " real" : " complex"));
  }
  const Polynomial obj = scn.import_polynomial({"2.0", "-4#2", "-4#4", "4#7", "4#8", "4#9", "-4#10"});
  const double v = solve_simple(scn.registry(), {&m}, obj, Sense::minimize).value;
  c.near(v, -2.0 * std::sqrt(2.0), 1e-4, "imported CHSH");
  return "symbols 6 and 11 complex, minimum " + fmt(v);
}

std::string c8(Checker& c) {
  std::vector<double> v;
  for (std::size_t L = 1; L <= 3; ++L) {
    const auto r = cli::solve_job(*cli::build_example("i3322", L));
    v.push_back(r.solutions.at(0).objective);
  }
  c.near(v[0], 5.5, 0.05, "level 1");
  c.expect(v[1] <= v[0] + 1e-6 && v[2] <= v[1] + 1e-6, "bounds increase with the level");
  return "levels 1-3: " + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]);
}

std::string c9(Checker& c) {
  auto ctx = golden::projector_pair();
  MatrixSystem sys(ctx);
  std::string why;
  c.expect(golden::matches(sys, *sys.moment_matrix(1), golden::pna_moment_matrix(), &why), "moment matrix: " + why);
  const OpPolynomial v = parse_op_polynomial(*ctx, "- x2 x2 + x2 + 0.5");
  c.expect(golden::matches(sys, *sys.localizing_matrix(v, 1), golden::pna_localizing_matrix(), &why),
           "localizing matrix: " + why);

  const auto t0 = Clock::now();
  std::vector<double> vals;
  for (std::size_t L = 1; L <= 4; ++L) vals.push_back(cli::solve_job(*cli::build_example("pna", L)).solutions.at(0).objective);
  const double t = ms_since(t0);
  for (std::size_t i = 1; i < vals.size(); ++i) c.expect(vals[i] >= vals[i - 1] - 1e-6, "bounds decrease with the level");
  c.expect(t < 5000.0, "levels 1-4 took " + fmt(t) + " ms");
  return "levels 1-4: " + fmt(vals[0]) + ", " + fmt(vals[1]) + ", " + fmt(vals[2]) + ", " + fmt(vals[3]);
}

std::string c10(Checker& c) {
  std::mt19937_64 rng(77);
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    PauliContext ctx(PauliSpec::chain(n));
    std::uniform_int_distribution<oper_t> pick(0, static_cast<oper_t>(3 * n - 1));
    std::uniform_int_distribution<std::size_t> len(0, 8);
    const int count = n == 3 ? 3334 : 3333;
    for (int t = 0; t < count; ++t) {
      std::vector<oper_t> raw(len(rng));
      for (auto& o : raw) o = pick(rng);
      const OperatorWord w = ctx.simplify(raw);
      const Eigen::MatrixXcd got =
          w.phase.value() * oracle::pauli_product(n, std::vector<unsigned>(w.ops.begin(), w.ops.end()));
      if ((got - oracle::pauli_product(n, std::vector<unsigned>(raw.begin(), raw.end()))).norm() > 1e-12) ++bad;
    }
  }
  c.expect(bad == 0, std::to_string(bad) + " of 10000 products disagree");

  const double exact = oracle::heisenberg_ground_energy_per_site(6, 0.25);
  const auto r = cli::solve_job(*cli::build_example("heisenberg"));
  c.expect(r.solutions.size() == 2, "expected lower and upper bounds");
  if (r.solutions.size() != 2) return "";
  const double lower = r.solutions[0].objective, upper = r.solutions[1].objective;
  c.expect(lower <= exact + 1e-6 && exact <= upper + 1e-6, "bounds do not bracket the exact energy");
  return "10000 products; " + fmt(lower) + " <= " + fmt(exact) + " <= " + fmt(upper);
}

std::string c11(Checker& c) {
  std::mt19937_64 rng(2026);
  std::size_t recovered = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const oracle::Planted pl = oracle::planted_sdp(rng);
    const DenseSdpResult r = solve_dense(DenseSdp{pl.C, pl.A, pl.b});
    const double err = std::abs(r.dual_objective - pl.optimum) / std::max(1.0, std::abs(pl.optimum));
    worst = std::max(worst, err);
    if (r.status == SolveStatus::optimal && err <= 1e-6) ++recovered;
  }
  c.expect(recovered == 100, std::to_string(recovered) + " of 100 recovered");
  std::ostringstream out;
  out << recovered << "/100 recovered, worst relative error " << worst;
  return out.str();
}

std::string c12(Checker& c) {
  std::size_t compared = 0;
  for (const auto& name : cli::example_names()) {
    for (const char* format : {"sdpa", "json"}) {
      std::string reference;
      for (std::size_t threads : {1, 2, 8}) {
        set_thread_count(threads);
        const std::string text = cli::generate_text(*cli::build_example(name), format);
        if (threads == 1) {
          reference = text;
        } else {
          c.expect(text == reference, name + " " + format + " differs at " + std::to_string(threads) + " threads");
        }
      }
      ++compared;
    }
  }
  set_thread_count(1);
  return std::to_string(compared) + " outputs identical across 1, 2 and 8 threads";
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::function<std::string(Checker&)> run;
    double time_limit_ms;  // zero for none
  };
  const std::vector<Criterion> criteria = {
      {1, c1, 2000.0}, {2, c2, 0.0}, {3, c3, 0.0},  {4, c4, 0.0},   {5, c5, 60000.0}, {6, c6, 0.0},
      {7, c7, 0.0},    {8, c8, 0.0}, {9, c9, 0.0},  {10, c10, 0.0}, {11, c11, 0.0},   {12, c12, 0.0},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checker c;
    std::string detail;
    const auto t0 = Clock::now();
    try {
      detail = cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double t = ms_since(t0);
    if (cr.time_limit_ms > 0.0) c.expect(t < cr.time_limit_ms, "took " + fmt(t) + " ms, limit " + fmt(cr.time_limit_ms));
    if (!c.ok) ++failed;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.number << ": " << detail;
    if (!c.ok) std::cout << " [" << c.failures.str() << "]";
    std::printf(" (%.0f ms)\n", t);
    std::cout.flush();
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
