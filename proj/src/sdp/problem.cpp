// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ncrelax/sdp.hpp"

namespace ncr {

std::string to_string(Sense s) {
  switch (s) {
    case Sense::minimize:
      return "minimize";
    case Sense::maximize:
      return "maximize";
    case Sense::feasibility:
      return "feasibility";
  }
  return "?";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::infeasible:
      return "infeasible";
    case SolveStatus::unbounded:
      return "unbounded";
    case SolveStatus::iteration_limit:
      return "iteration_limit";
    case SolveStatus::numerical_failure:
      return "numerical_failure";
  }
  return "?";
}

std::size_t SdpProblem::real_variable_count() const {
  return static_cast<std::size_t>(
      std::count_if(variables.begin(), variables.end(), [](const SdpVariable& v) { return !v.imaginary; }));
}

std::size_t SdpProblem::imaginary_variable_count() const { return variables.size() - real_variable_count(); }

namespace {

// Real symmetric image of a Hermitian coordinate matrix: itself when real,
// otherwise [[Re, -Im], [Im, Re]].
SymmetricSparse embed(const SparseMatrix& m, bool embedded) {
  SymmetricSparse out;
  const std::size_t d = m.dim;
  out.dim = embedded ? 2 * d : d;
  for (const auto& e : m.entries) {
    const double re = e.value.real();
    const double im = e.value.imag();
    if (re != 0.0) {
      out.entries.push_back({e.row, e.col, re});
      if (embedded) out.entries.push_back({e.row + d, e.col + d, re});
    }
    if (embedded && im != 0.0) {
      out.entries.push_back({e.row, e.col + d, -im});
      out.entries.push_back({e.row + d, e.col, im});
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

struct SlotUse {
  std::set<std::size_t> real;
  std::set<std::size_t> imag;
};

}  // namespace

SdpProblem assemble(SymbolRegistry& registry, const Polynomial& objective,
                    const std::vector<const SymbolicMatrix*>& psd, const std::vector<Polynomial>& equalities,
                    const AssemblyOptions& options) {
  registry.assign_basis_slots();

  std::vector<BasisDecomposition> decs;
  decs.reserve(psd.size());
  for (const SymbolicMatrix* m : psd) {
    if (!m->hermitian() && !m->structurally_hermitian(registry)) {
      throw std::invalid_argument("matrix '" + m->label() + "' is not Hermitian and cannot be constrained PSD");
    }
    decs.push_back(decompose(*m, registry));
  }

  SlotUse used;
  auto use_poly = [&](const Polynomial& p) {
    for (const auto& t : p.terms) {
      if (t.id == 0) continue;
      const SymbolEntry& e = registry[t.id];
      if (!e.real_slot && !e.imag_slot) throw std::invalid_argument("symbol without basis slot");
      if (e.real_slot) used.real.insert(*e.real_slot);
      if (e.imag_slot && !options.real_only) used.imag.insert(*e.imag_slot);
    }
  };
  for (const auto& d : decs) {
    for (const auto& [s, _] : d.real_parts) used.real.insert(s);
    if (!options.real_only) {
      for (const auto& [s, _] : d.imag_parts) used.imag.insert(s);
    }
  }
  use_poly(objective);
  for (const auto& p : equalities) use_poly(p);

  // Slot -> symbol id, for labels.
  std::map<std::size_t, std::size_t> real_owner, imag_owner;
  for (const auto& e : registry.entries()) {
    if (e.real_slot) real_owner[*e.real_slot] = e.id;
    if (e.imag_slot) imag_owner[*e.imag_slot] = e.id;
  }

  SdpProblem prob;
  prob.sense = options.sense;
  std::map<std::size_t, std::size_t> real_var, imag_var;
  for (std::size_t s : used.real) {
    real_var[s] = prob.variables.size();
    const std::size_t id = real_owner.at(s);
    std::string label = registry.symbol_string(id);
    if (!registry[id].hermitian) label = "Re" + label;
    prob.variables.push_back({s, false, label});
  }
  for (std::size_t s : used.imag) {
    imag_var[s] = prob.variables.size();
    prob.variables.push_back({s, true, "Im" + registry.symbol_string(imag_owner.at(s))});
  }
  const std::size_t nv = prob.variables.size();

  // Real linear form of a polynomial: (real row, imaginary row).
  auto linear = [&](const Polynomial& p) {
    std::vector<double> re(nv, 0.0), im(nv, 0.0);
    for (const auto& t : p.terms) {
      if (t.id == 0) continue;
      const SymbolEntry& e = registry[t.id];
      const cplx c = t.coefficient;
      const double sign = t.conjugated ? -1.0 : 1.0;
      // c (a + i sign b) = (Re c a - sign Im c b) + i (Im c a + sign Re c b)
      if (e.real_slot) {
        const std::size_t v = real_var.at(*e.real_slot);
        re[v] += c.real();
        im[v] += c.imag();
      }
      if (e.imag_slot && !options.real_only) {
        const std::size_t v = imag_var.at(*e.imag_slot);
        re[v] -= sign * c.imag();
        im[v] += sign * c.real();
      }
    }
    return std::make_pair(re, im);
  };

  prob.objective = linear(objective).first;

  for (const auto& p : equalities) {
    auto [re, im] = linear(p);
    for (const auto* row : {&re, &im}) {
      LinearConstraint lc;
      for (std::size_t v = 0; v < nv; ++v) {
        if (std::abs((*row)[v]) > 1e3 * registry.tolerance()) lc.coefficients.emplace_back(v, (*row)[v]);
      }
      if (!lc.coefficients.empty()) prob.equalities.push_back(std::move(lc));
    }
  }

  if (options.normalize && registry.size() > 1 && registry[1].real_slot) {
    auto it = real_var.find(*registry[1].real_slot);
    if (it != real_var.end()) {
      prob.normalization = it->second;
      prob.equalities.insert(prob.equalities.begin(), LinearConstraint{{{it->second, 1.0}}, 1.0});
    }
  }

  for (std::size_t k = 0; k < decs.size(); ++k) {
    const BasisDecomposition& d = decs[k];
    bool complex = false;
    for (const auto& [s, m] : d.real_parts) complex = complex || !m.is_real();
    if (!options.real_only) {
      for (const auto& [s, m] : d.imag_parts) complex = complex || !m.is_real();
    }
    SdpBlock blk;
    blk.label = psd[k]->label().empty() ? "M" + std::to_string(k) : psd[k]->label();
    blk.embedded = complex;
    blk.dim = complex ? 2 * d.dim : d.dim;
    blk.constant.dim = blk.dim;
    for (const auto& [s, m] : d.real_parts) blk.terms.emplace_back(real_var.at(s), embed(m, complex));
    if (!options.real_only) {
      for (const auto& [s, m] : d.imag_parts) blk.terms.emplace_back(imag_var.at(s), embed(m, complex));
    }
    std::erase_if(blk.terms, [](const auto& t) { return t.second.empty(); });
    std::sort(blk.terms.begin(), blk.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    prob.blocks.push_back(std::move(blk));
  }
  return prob;
}

cplx evaluate(const SymbolRegistry& registry, const Polynomial& p, const SdpSolution& s) {
  cplx out{};
  for (const auto& t : p.terms) {
    if (t.id == 0) continue;
    const SymbolEntry& e = registry[t.id];
    double a = 0.0, b = 0.0;
    if (e.real_slot && *e.real_slot < s.real_slots.size()) a = s.real_slots[*e.real_slot];
    if (e.imag_slot && *e.imag_slot < s.imag_slots.size()) b = s.imag_slots[*e.imag_slot];
    out += t.coefficient * cplx{a, t.conjugated ? -b : b};
  }
  return out;
}

Eigen::MatrixXcd evaluate(const SymbolRegistry& registry, const SymbolicMatrix& m, const SdpSolution& s) {
  Eigen::MatrixXcd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = evaluate(registry, m.at(i, j), s);
  }
  return out;
}

SimpleResult solve_simple(SymbolRegistry& registry, const std::vector<const SymbolicMatrix*>& psd,
                          const std::optional<Polynomial>& objective, Sense sense, bool real_only,
                          const SolverOptions& options) {
  AssemblyOptions ao;
  ao.sense = objective ? sense : Sense::feasibility;
  ao.real_only = real_only;
  SdpProblem prob = assemble(registry, objective.value_or(Polynomial{}), psd, {}, ao);
  SimpleResult r;
  r.solution = solve(prob, options);
  r.value = r.solution.objective;
  r.feasible = r.solution.feasible;
  return r;
}

}  // namespace ncr
