// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "ncrelax/cli.hpp"
#include "ncrelax/operator_rules.hpp"
#include "ncrelax/pauli.hpp"

namespace ncr::cli {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

OperatorWord parse_alphabet_word(const AlgebraicAlphabet& alphabet, const std::string& text,
                                 const std::string& path) {
  std::istringstream in(text);
  std::string tok;
  std::vector<oper_t> ops;
  Phase phase;
  bool any = false;
  while (in >> tok) {
    any = true;
    if (tok == "1") continue;
    if (tok == "-") {
      phase = phase * Phase::minus_one();
      continue;
    }
    if (tok == "0") return OperatorWord::make_zero();
    try {
      ops.push_back(alphabet.index_of(tok));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }
  if (!any) throw ConfigError(path, "empty word");
  return OperatorWord(std::move(ops), phase);
}

std::shared_ptr<const Context> make_context(const ScenarioConfig& c, Job& job) {
  if (c.kind == "locality") return std::make_shared<LocalityContext>(LocalitySpec{c.parties});
  if (c.kind == "algebraic") {
    AlgebraicAlphabet alphabet(c.operators, c.hermitian);
    OperatorRulebook rules(alphabet.size());
    for (std::size_t i = 0; i < c.projectors.size(); ++i) {
      try {
        rules.add_rule(make_projector(alphabet, c.projectors[i]));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/projectors/" + std::to_string(i), e.what());
      }
    }
    for (std::size_t i = 0; i < c.commuting.size(); ++i) {
      try {
        rules.add_rule(add_commutator(alphabet, c.commuting[i].first, c.commuting[i].second));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/commuting/" + std::to_string(i), e.what());
      }
    }
    for (std::size_t i = 0; i < c.rules.size(); ++i) {
      const std::string p = "/rules/" + std::to_string(i);
      const OperatorWord a = parse_alphabet_word(alphabet, c.rules[i].first, p + "/0");
      const OperatorWord b = parse_alphabet_word(alphabet, c.rules[i].second, p + "/1");
      try {
        rules.add_equation(a, b);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(p, e.what());
      }
    }
    auto ctx = std::make_shared<AlgebraicContext>(alphabet, rules);
    const CompletionResult r = ctx->complete(c.max_new_rules, c.log_completion);
    for (const auto& line : r.log) job.notes.push_back(line);
    if (r.status == CompletionStatus::failed) {
      throw ConfigError("/max_new_rules", "rewrite rules did not complete within " + std::to_string(c.max_new_rules) +
                                              " new rules");
    }
    return ctx;
  }
  if (c.kind == "pauli") {
    PauliSpec spec;
    if (c.topology == "lattice") {
      spec = PauliSpec::lattice(c.rows, c.cols, c.wrap, c.symmetrized);
    } else if (c.topology == "chain") {
      spec = PauliSpec::chain(c.qubits, c.wrap, c.symmetrized);
    } else {
      spec.topology = PauliTopology::unstructured;
      spec.qubits = c.qubits;
      spec.symmetrized = c.symmetrized;
    }
    try {
      return std::make_shared<PauliContext>(spec);
    } catch (const std::exception& e) {
      throw ConfigError("/topology", e.what());
    }
  }
  if (c.kind == "inflation") {
    NetworkSpec spec{c.observables, c.sources, c.inflation_level};
    try {
      return std::make_shared<InflationContext>(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/sources", e.what());
    }
  }
  throw ConfigError("/kind", "unsupported kind");
}

OpPolynomial parse_poly(const Context& ctx, const std::string& text, const std::string& path) {
  try {
    return parse_op_polynomial(ctx, text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

std::string block_dims(const SdpProblem& p) {
  std::string s;
  for (const auto& b : p.blocks) s += (s.empty() ? "" : ", ") + std::to_string(b.dim) + (b.embedded ? "*" : "");
  return s;
}

}  // namespace

SdpProblem ProblemSpec::assemble() const {
  AssemblyOptions ao;
  ao.sense = objective ? sense : Sense::feasibility;
  ao.real_only = real_only;
  std::vector<const SymbolicMatrix*> ptrs;
  for (const auto& m : psd) ptrs.push_back(&m);
  return ncr::assemble(*registry, objective.value_or(Polynomial{}), ptrs, equalities, ao);
}

std::unique_ptr<Job> build_job(const ScenarioConfig& c) {
  auto job = std::make_unique<Job>();
  job->title = c.kind;
  job->configs.push_back(c);
  job->solver.gap_tolerance = c.solve.tolerance;
  job->solver.feasibility_tolerance = c.solve.tolerance;
  job->solver.max_block_dimension = c.solve.max_block_dimension;

  ProblemSpec prob;
  prob.name = c.kind + " level " + std::to_string(c.level);
  prob.real_only = c.solve.real_only;
  prob.sense = c.objective.type == "none" ? Sense::feasibility : c.objective.sense;
  std::optional<Polynomial> objective;
  std::vector<SymbolicMatrix> mats;
  MatrixSystem* sys = nullptr;

  if (c.kind == "imported") {
    if (c.neighbours) throw ConfigError("/neighbours", "only Pauli scenarios take a neighbour filter");
    job->imported.push_back(std::make_unique<ImportedScenario>(c.real));
    ImportedScenario& imp = *job->imported.back();
    const ImportMode mode = c.import_mode == "general"     ? ImportMode::general
                            : c.import_mode == "symmetric" ? ImportMode::symmetric
                                                           : ImportMode::hermitian;
    try {
      SymbolicMatrix m = imp.import_matrix(c.matrix, mode);
      m.set_label("imported matrix");
      mats.push_back(std::move(m));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/matrix", e.what());
    }
    if (c.objective.type == "imported") {
      try {
        objective = imp.import_polynomial(c.objective.tokens);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/objective/tokens", e.what());
      }
    }
    sys = &imp.system();
  } else {
    auto ctx = make_context(c, *job);
    job->contexts.push_back(ctx);
    job->systems.push_back(std::make_unique<MatrixSystem>(ctx));
    sys = job->systems.back().get();

    WordFilter filter;
    if (c.neighbours) {
      const auto* pc = dynamic_cast<const PauliContext*>(ctx.get());
      if (!pc) throw ConfigError("/neighbours", "only Pauli scenarios take a neighbour filter");
      filter = pc->neighbour_filter(c.neighbours);
    }
    auto mm = sys->moment_matrix(c.level, filter);
    mats.push_back(*mm);
    mats.back().set_label("moment matrix, level " + std::to_string(c.level));
    for (std::size_t i = 0; i < c.localizing.size(); ++i) {
      const std::string p = "/localizing/" + std::to_string(i);
      const OpPolynomial v = parse_poly(*ctx, c.localizing[i].polynomial, p + "/polynomial");
      mats.push_back(*sys->localizing_matrix(v, c.localizing[i].level, filter));
      mats.back().set_label("localizing matrix of " + format(*ctx, v) + ", level " +
                            std::to_string(c.localizing[i].level));
    }

    if (c.objective.type == "polynomial") {
      objective = sys->expectation(parse_poly(*ctx, c.objective.polynomial, "/objective/polynomial"));
    } else if (c.objective.type == "cg" || c.objective.type == "fc") {
      const auto& loc = static_cast<const LocalityContext&>(*ctx);
      Tensor t{c.objective.shape, c.objective.data};
      try {
        objective = sys->expectation(c.objective.type == "cg" ? cg_polynomial(loc, t) : fc_polynomial(loc, t));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/objective/tensor", e.what());
      }
    }

    MomentRulebook* rules = nullptr;
    if (c.kind == "inflation" && !c.distribution.empty()) {
      try {
        job->rulebooks.push_back(std::make_unique<MomentRulebook>(distribution_rulebook(*sys, c.distribution)));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/distribution", e.what());
      }
      rules = job->rulebooks.back().get();
    }
    if (!c.constraints.empty()) {
      if (!rules) {
        job->rulebooks.push_back(std::make_unique<MomentRulebook>(sys->registry()));
        rules = job->rulebooks.back().get();
      }
      for (std::size_t i = 0; i < c.constraints.size(); ++i) {
        const std::string p = "/constraints/" + std::to_string(i);
        rules->add_constraint(sys->expectation(parse_poly(*ctx, c.constraints[i], p)));
      }
      rules->complete();
    }
    if (rules) {
      for (auto& m : mats) {
        std::string label = m.label();
        m = rules->reduce(m);
        m.set_label(label);
      }
      if (objective) objective = rules->reduce(*objective);
      job->notes.push_back(std::to_string(rules->size()) + " moment rules");
    }
  }

  if (c.symmetry) {
    if (!job->imported.empty()) throw ConfigError("/symmetry", "imported scenarios have no operators to act on");
    std::vector<Eigen::MatrixXd> gens;
    for (std::size_t g = 0; g < c.symmetry->generators.size(); ++g) {
      const auto& rows = c.symmetry->generators[g];
      Eigen::MatrixXd m(rows.size(), rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
      }
      gens.push_back(std::move(m));
    }
    try {
      job->reductions.push_back(
          std::make_unique<SymmetryReduction>(*sys, gens, c.symmetry->max_word_length));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/symmetry/generators", e.what());
    } catch (const std::domain_error& e) {
      throw ConfigError("/symmetry/generators", e.what());
    }
    SymmetryReduction& red = *job->reductions.back();
    for (auto& m : mats) {
      std::string label = m.label();
      m = red.transform(m);
      m.set_label(label + " (symmetrized)");
    }
    if (objective) objective = red.transform(*objective);
    job->notes.push_back("group of " + std::to_string(red.group().size()) + " elements, " +
                         std::to_string(red.reduced_count()) + " reduced symbols");
    sys = &red.reduced();
  }

  prob.registry = &sys->registry();
  prob.psd = std::move(mats);
  prob.objective = objective;
  if (!objective) prob.sense = Sense::feasibility;
  job->problems.push_back(std::move(prob));
  return job;
}

std::string generate_text(const Job& job, const std::string& format) {
  if (format == "sdpa") {
    std::string out;
    for (const auto& p : job.problems) out += "* problem: " + p.name + "\n" + to_sdpa(p.assemble());
    return out;
  }
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : job.problems) {
      arr.push_back({{"name", p.name}, {"sdp", nlohmann::ordered_json::parse(to_json(p.assemble()))}});
    }
    return arr.dump(2) + "\n";
  }
  throw std::invalid_argument("unknown format '" + format + "' (expected sdpa or json)");
}

std::string generate_summary(const Job& job) {
  std::ostringstream os;
  for (const auto& p : job.problems) {
    const SdpProblem sdp = p.assemble();
    os << p.name << ": ";
    for (std::size_t k = 0; k < p.psd.size(); ++k) {
      os << (k ? ", " : "") << (p.psd[k].label().empty() ? "matrix" : p.psd[k].label()) << " size "
         << p.psd[k].dim();
    }
    os << "; " << sdp.real_variable_count() << " real + " << sdp.imaginary_variable_count()
       << " imaginary variables, blocks [" << block_dims(sdp) << "], " << sdp.equalities.size()
       << " equality constraints\n";
  }
  return os.str();
}

std::string describe(Job& job) {
  std::ostringstream os;
  os << "job: " << job.title << "\n";
  for (std::size_t s = 0; s < job.contexts.size(); ++s) {
    const Context& ctx = *job.contexts[s];
    os << "scenario " << s << ": " << ctx.kind() << ", " << ctx.operator_count() << " operators:";
    for (oper_t op = 0; op < ctx.operator_count(); ++op) os << " " << ctx.operator_name(op);
    os << "\n";
    if (const auto* alg = dynamic_cast<const AlgebraicContext*>(&ctx)) {
      os << "rewrite rules (" << alg->rulebook().size() << "):\n";
      for (const auto& r : alg->rulebook().rules()) os << "  " << alg->rulebook().format_rule(r, alg) << "\n";
    }
    if (s < job.configs.size()) {
      const ScenarioConfig& c = job.configs[s];
      WordFilter filter;
      if (c.neighbours) {
        if (const auto* pc = dynamic_cast<const PauliContext*>(&ctx)) filter = pc->neighbour_filter(c.neighbours);
      }
      const Dictionary& d = job.systems[s]->dictionary(c.level, filter);
      os << "dictionary, level " << c.level << " (" << d.size() << " words):";
      for (const auto& w : d.words) os << " " << (w.ops.empty() ? std::string("1") : ctx.format(w));
      os << "\n";
    }
  }
  for (const auto& n : job.notes) os << n << "\n";
  for (const auto& rb : job.rulebooks) {
    if (!rb->empty()) os << "moment rules (" << rb->size() << "):\n" << rb->listing();
  }
  std::vector<const SymbolRegistry*> shown;
  for (const auto& p : job.problems) {
    os << "\nproblem: " << p.name << " (" << to_string(p.objective ? p.sense : Sense::feasibility) << ")\n";
    if (std::find(shown.begin(), shown.end(), p.registry) == shown.end()) {
      os << "symbols:\n" << p.registry->table();
      shown.push_back(p.registry);
    }
    if (p.objective) os << "objective: " << p.registry->format(*p.objective) << "\n";
    for (const auto& m : p.psd) {
      os << (m.label().empty() ? "matrix" : m.label()) << " (" << m.dim() << "x" << m.dim() << "):\n"
         << m.render(*p.registry);
    }
  }
  return os.str();
}

SolveReport solve_job(const Job& job) {
  SolveReport rep;
  std::ostringstream os;
  auto worse = [&](int code) { rep.exit_code = std::max(rep.exit_code, code); };
  for (const auto& p : job.problems) {
    os << p.name << ": ";
    SdpSolution s;
    try {
      s = solve(p.assemble(), job.solver);
    } catch (const SolverError& e) {
      os << "solver error: " << e.what() << "\n";
      worse(3);
      rep.solutions.emplace_back();
      continue;
    }
    if (!p.objective) {
      if (s.status == SolveStatus::optimal) {
        os << (s.feasible ? "feasible" : "infeasible") << " (t* = " << fixed(s.objective, 9) << ")\n";
        worse(s.feasible ? 0 : 1);
      } else {
        os << "undecided (" << to_string(s.status) << ")\n";
        worse(3);
      }
    } else if (s.status == SolveStatus::optimal) {
      os << to_string(p.sense) << " = " << fixed(s.objective) << "  (gap " << s.relative_gap << ", "
         << s.iterations << " iterations)\n";
    } else if (s.status == SolveStatus::infeasible) {
      os << "infeasible\n";
      worse(1);
    } else {
      os << to_string(s.status) << ": " << s.message << "\n";
      worse(3);
    }
    rep.solutions.push_back(std::move(s));
  }
  rep.text = os.str();
  return rep;
}

std::vector<BenchRow> bench(const std::function<std::unique_ptr<Job>()>& build, std::size_t repeats, bool solve) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  std::vector<std::string> phases = {"build", "assemble"};
  if (solve) phases.push_back("solve");
  phases.push_back("total");
  std::vector<std::vector<double>> t(phases.size());
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    const auto t0 = clock::now();
    auto job = build();
    const auto t1 = clock::now();
    std::vector<SdpProblem> sdps;
    for (const auto& p : job->problems) sdps.push_back(p.assemble());
    const auto t2 = clock::now();
    std::size_t k = 0;
    t[k++].push_back(ms(t1 - t0));
    t[k++].push_back(ms(t2 - t1));
    if (solve) {
      for (const auto& s : sdps) (void)ncr::solve(s, job->solver);
      t[k++].push_back(ms(clock::now() - t2));
    }
    t[k].push_back(ms(clock::now() - t0));
  }
  std::vector<BenchRow> rows;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    auto v = t[k];
    std::sort(v.begin(), v.end());
    BenchRow row;
    row.phase = phases[k];
    row.min_ms = v.front();
    row.max_ms = v.back();
    const std::size_t lo = v.size() >= 3 ? 1 : 0;
    const std::size_t hi = v.size() >= 3 ? v.size() - 1 : v.size();
    row.trimmed_mean_ms = std::accumulate(v.begin() + lo, v.begin() + hi, 0.0) / static_cast<double>(hi - lo);
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s %14s %12s %12s\n", "phase", "mean (ms)", "min (ms)", "max (ms)");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %14.3f %12.3f %12.3f\n", r.phase.c_str(), r.trimmed_mean_ms, r.min_ms,
                  r.max_ms);
    os << buf;
  }
  return os.str();
}

}  // namespace ncr::cli
