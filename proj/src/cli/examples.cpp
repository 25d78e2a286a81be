// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <stdexcept>

#include "ncrelax/cli.hpp"
#include "ncrelax/pauli.hpp"

namespace ncr::cli {

namespace {

ScenarioConfig locality(std::size_t parties, std::size_t mmts, std::size_t outcomes, std::size_t level) {
  ScenarioConfig c;
  c.kind = "locality";
  c.level = level;
  c.parties = LocalitySpec::uniform(parties, mmts, outcomes).parties;
  return c;
}

void grid_objective(ScenarioConfig& c, const std::string& type, const std::vector<std::vector<double>>& rows,
                    Sense sense) {
  c.objective.type = type;
  c.objective.sense = sense;
  c.objective.shape = {rows.size(), rows.front().size()};
  c.objective.data.clear();
  for (const auto& r : rows) c.objective.data.insert(c.objective.data.end(), r.begin(), r.end());
}

const std::vector<std::vector<double>> kChshFc = {{0, 0, 0}, {0, 1, 1}, {0, 1, -1}};

std::unique_ptr<Job> heisenberg(std::size_t level) {
  const std::size_t mm_level = level ? level : 2;
  auto job = std::make_unique<Job>();
  job->title = "heisenberg";
  auto ctx = std::make_shared<PauliContext>(PauliSpec::chain(6, true, true));
  job->contexts.push_back(ctx);
  job->systems.push_back(std::make_unique<MatrixSystem>(ctx));
  MatrixSystem& sys = *job->systems.back();

  OpPolynomial base;
  for (auto axis : {PauliContext::X, PauliContext::Y, PauliContext::Z}) {
    base.terms.push_back(OpTerm{0.25, OperatorWord{PauliContext::op(0, axis), PauliContext::op(1, axis)}});
  }
  const OpPolynomial H = ctx->symmetrize(simplify(*ctx, base));
  const WordFilter nn = ctx->neighbour_filter(1);
  job->notes.push_back("H = " + format(*ctx, H));

  auto mm = sys.moment_matrix(mm_level, nn);
  const Polynomial energy = sys.expectation(H);

  ProblemSpec lower;
  lower.name = "lower bound (moment matrix level " + std::to_string(mm_level) + ", nn1)";
  lower.registry = &sys.registry();
  lower.psd = {*mm};
  lower.psd.front().set_label("moment matrix, level " + std::to_string(mm_level));
  lower.objective = energy;
  lower.sense = Sense::minimize;
  lower.real_only = true;

  // State optimality: p H q - 1/2 {pq, H} >= 0 and <[H, r]> = 0.
  auto lm = sys.localizing_matrix(H, 2, nn);
  auto am = sys.anticommutator_matrix(scale(*ctx, H, -0.5), 2, nn);
  SymbolicMatrix gamma = add(*lm, *am, sys.registry());
  job->rulebooks.push_back(std::make_unique<MomentRulebook>(sys.registry()));
  MomentRulebook& rules = *job->rulebooks.back();
  for (const auto& r : sys.dictionary(2, nn).words) {
    OpPolynomial rp;
    rp.terms.push_back(OpTerm{1.0, r});
    const OpPolynomial comm = add(*ctx, multiply(*ctx, H, rp), scale(*ctx, multiply(*ctx, rp, H), -1.0));
    rules.add_constraint(sys.expectation(comm));
  }
  rules.complete();
  SymbolicMatrix g = rules.reduce(gamma);
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i < g.dim(); ++i) keep.push_back(i);
  SymbolicMatrix g_inner = submatrix(g, keep);
  g_inner.set_label("state-optimality matrix");
  SymbolicMatrix mm_r = rules.reduce(*mm);
  mm_r.set_label("moment matrix, level " + std::to_string(mm_level));

  ProblemSpec upper;
  upper.name = "upper bound (state optimality level 2, commutator rules to length 2)";
  upper.registry = &sys.registry();
  upper.psd = {mm_r, g_inner};
  upper.objective = rules.reduce(energy);
  upper.sense = Sense::maximize;
  upper.real_only = true;

  job->notes.push_back(std::to_string(rules.size()) + " commutator rules");
  job->problems.push_back(std::move(lower));
  job->problems.push_back(std::move(upper));
  return job;
}

std::unique_ptr<Job> triangle(std::size_t level) {
  const std::size_t max_level = level ? level : 2;
  auto job = std::make_unique<Job>();
  job->title = "triangle";
  const std::vector<double> probs = {0.5, 0, 0, 0, 0, 0, 0, 0.5};
  for (std::size_t L = 1; L <= max_level; ++L) {
    NetworkSpec spec;
    spec.observables = {{"A", 2}, {"B", 2}, {"C", 2}};
    spec.sources = {{0, 1}, {1, 2}, {0, 2}};
    spec.level = L;
    auto ctx = std::make_shared<InflationContext>(spec);
    job->contexts.push_back(ctx);
    job->systems.push_back(std::make_unique<MatrixSystem>(ctx));
    MatrixSystem& sys = *job->systems.back();
    auto mm = sys.moment_matrix(2);
    job->rulebooks.push_back(std::make_unique<MomentRulebook>(distribution_rulebook(sys, probs)));
    const MomentRulebook& rules = *job->rulebooks.back();
    SymbolicMatrix m = rules.reduce(*mm);
    m.set_label("moment matrix, level 2");
    job->notes.push_back("inflation level " + std::to_string(L) + ": " + std::to_string(rules.size()) +
                         " distribution rules");
    ProblemSpec p;
    p.name = "inflation level " + std::to_string(L);
    p.registry = &sys.registry();
    p.psd = {m};
    p.sense = Sense::feasibility;
    p.real_only = true;
    job->problems.push_back(std::move(p));
  }
  return job;
}

}  // namespace

std::vector<Eigen::MatrixXd> chsh_symmetry_generators() {
  // Basis (1, a0, a1, b0, b1); operator k = 2 * party + input.
  std::vector<Eigen::MatrixXd> out;
  const std::array<std::array<double, 2>, 2> C = {{{1, 1}, {1, -1}}};
  for (int swap = 0; swap < 2; ++swap) {
    for (int in_a = 0; in_a < 2; ++in_a) {
      for (int in_b = 0; in_b < 2; ++in_b) {
        for (int flips = 0; flips < 16; ++flips) {
          // Image of operator k: sign and target operator.
          std::array<int, 4> target{};
          std::array<int, 4> flip{};
          for (int k = 0; k < 4; ++k) {
            const int party = k / 2;
            const int input = k % 2;
            const int np = swap ? 1 - party : party;
            const int ni = input ^ (np == 0 ? in_a : in_b);
            target[k] = 2 * np + ni;
            flip[k] = (flips >> k) & 1;
          }
          // Correlator A_x B_y -> (+-)(+-) on the images.
          std::array<std::array<double, 2>, 2> D{};
          for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
              const int ta = target[x], tb = target[2 + y];
              const double s = (flip[x] ? -1.0 : 1.0) * (flip[2 + y] ? -1.0 : 1.0);
              const int ax = ta < 2 ? ta : tb;
              const int by = ta < 2 ? tb - 2 : ta - 2;
              D[ax][by] += s * C[x][y];
            }
          }
          if (D != C) continue;
          Eigen::MatrixXd g = Eigen::MatrixXd::Zero(5, 5);
          g(0, 0) = 1.0;
          for (int k = 0; k < 4; ++k) {
            if (flip[k]) {
              g(0, k + 1) = 1.0;
              g(target[k] + 1, k + 1) = -1.0;
            } else {
              g(target[k] + 1, k + 1) = 1.0;
            }
          }
          if (!g.isIdentity()) out.push_back(g);
        }
      }
    }
  }
  return out;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"chsh",      "i3322",    "cglmp",          "pna",
                                                 "heisenberg", "triangle", "chsh_symmetric", "chsh_imported"};
  return names;
}

std::optional<ScenarioConfig> example_config(const std::string& name) {
  if (name == "chsh") {
    ScenarioConfig c = locality(2, 2, 2, 1);
    grid_objective(c, "fc", kChshFc, Sense::minimize);
    return c;
  }
  if (name == "i3322") {
    ScenarioConfig c = locality(2, 3, 2, 1);
    grid_objective(c, "fc", {{0, -1, -1, 0}, {-1, -1, -1, -1}, {-1, -1, -1, 1}, {0, -1, 1, 0}}, Sense::maximize);
    c.solve.real_only = true;
    return c;
  }
  if (name == "cglmp") {
    ScenarioConfig c = locality(2, 2, 3, 2);
    grid_objective(c, "cg",
                   {{0, -1, -1, 0, 0}, {-1, 1, 1, 0, 1}, {-1, 1, 0, 1, 1}, {0, 0, 1, 0, -1}, {0, 1, 1, -1, -1}},
                   Sense::maximize);
    c.solve.real_only = true;
    return c;
  }
  if (name == "pna") {
    ScenarioConfig c;
    c.kind = "algebraic";
    c.level = 1;
    c.operators = {"x1", "x2"};
    c.projectors = {"x1"};
    c.localizing = {{"- x2 x2 + x2 + 0.5", 0}};
    c.objective.type = "polynomial";
    c.objective.polynomial = "x1 x2 + x2 x1";
    c.objective.sense = Sense::minimize;
    return c;
  }
  if (name == "chsh_symmetric") {
    ScenarioConfig c = locality(2, 2, 2, 1);
    grid_objective(c, "fc", kChshFc, Sense::maximize);
    SymmetryConfig s;
    for (const auto& g : chsh_symmetry_generators()) {
      std::vector<std::vector<double>> rows(g.rows(), std::vector<double>(g.cols()));
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) rows[i][j] = g(i, j);
      }
      s.generators.push_back(std::move(rows));
    }
    s.max_word_length = 2;
    c.symmetry = std::move(s);
    return c;
  }
  if (name == "chsh_imported") {
    ScenarioConfig c;
    c.kind = "imported";
    c.level = 1;
    c.matrix = {{"1", "2", "3", "4", "5"},
                {"2", "2", "6", "7", "8"},
                {"3", "6*", "3", "9", "10"},
                {"4", "7", "9", "4", "11"},
                {"5", "8", "10", "11*", "5"}};
    c.objective.type = "imported";
    c.objective.tokens = {"2.0", "-4#2", "-4#4", "4#7", "4#8", "4#9", "-4#10"};
    c.objective.sense = Sense::minimize;
    return c;
  }
  return std::nullopt;
}

std::unique_ptr<Job> build_example(const std::string& name, std::size_t level) {
  if (name == "heisenberg") return heisenberg(level);
  if (name == "triangle") return triangle(level);
  auto cfg = example_config(name);
  if (!cfg) throw std::invalid_argument("unknown example '" + name + "'");
  if (level) {
    cfg->level = level;
    if (name == "pna") cfg->localizing.front().level = level - 1;
  }
  auto job = build_job(*cfg);
  job->title = name;
  return job;
}

}  // namespace ncr::cli
