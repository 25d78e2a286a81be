// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <tuple>

#include "ncrelax/sdp.hpp"

namespace ncr {

namespace {

std::string num(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Line {
  std::size_t mat, blk, i, j;
  double v;
  bool operator<(const Line& o) const { return std::tie(mat, blk, i, j) < std::tie(o.mat, o.blk, o.i, o.j); }
};

nlohmann::json upper(const SymmetricSparse& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : s.entries) {
    if (e.row <= e.col) out.push_back({e.row, e.col, e.value});
  }
  return out;
}

}  // namespace

void write_sdpa(const SdpProblem& problem, std::ostream& out) {
  const std::size_t m = problem.variables.size();
  const bool has_lp = !problem.equalities.empty();
  const std::size_t nblock = problem.blocks.size() + (has_lp ? 1 : 0);
  const double sign = problem.sense == Sense::maximize ? -1.0 : 1.0;

  out << "* ncrelax " << to_string(problem.sense) << ", " << m << " variables";
  if (problem.objective_constant != 0.0) out << ", objective constant " << num(problem.objective_constant);
  if (problem.sense == Sense::maximize) out << ", objective negated";
  out << "\n";
  out << m << "\n" << nblock << "\n";
  for (std::size_t k = 0; k < problem.blocks.size(); ++k) {
    if (k) out << " ";
    out << problem.blocks[k].dim;
  }
  if (has_lp) out << (problem.blocks.empty() ? "" : " ") << "-" << 2 * problem.equalities.size();
  out << "\n";
  for (std::size_t v = 0; v < m; ++v) {
    if (v) out << " ";
    const double c = problem.sense == Sense::feasibility ? 0.0 : sign * problem.objective[v];
    out << num(c);
  }
  out << "\n";

  std::vector<Line> lines;
  for (std::size_t k = 0; k < problem.blocks.size(); ++k) {
    const SdpBlock& b = problem.blocks[k];
    for (const auto& e : b.constant.entries) {
      if (e.row <= e.col) lines.push_back({0, k + 1, e.row + 1, e.col + 1, -e.value});
    }
    for (const auto& [v, F] : b.terms) {
      for (const auto& e : F.entries) {
        if (e.row <= e.col) lines.push_back({v + 1, k + 1, e.row + 1, e.col + 1, e.value});
      }
    }
  }
  if (has_lp) {
    const std::size_t blk = problem.blocks.size() + 1;
    for (std::size_t q = 0; q < problem.equalities.size(); ++q) {
      const auto& eq = problem.equalities[q];
      const std::size_t lo = 2 * q + 1, hi = 2 * q + 2;
      if (eq.rhs != 0.0) {
        lines.push_back({0, blk, lo, lo, eq.rhs});
        lines.push_back({0, blk, hi, hi, -eq.rhs});
      }
      for (const auto& [v, a] : eq.coefficients) {
        lines.push_back({v + 1, blk, lo, lo, a});
        lines.push_back({v + 1, blk, hi, hi, -a});
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) {
    if (l.v == 0.0) continue;
    out << l.mat << " " << l.blk << " " << l.i << " " << l.j << " " << num(l.v) << "\n";
  }
}

std::string to_sdpa(const SdpProblem& problem) {
  std::ostringstream os;
  write_sdpa(problem, os);
  return os.str();
}

namespace {

nlohmann::json problem_json(const SdpProblem& p) {
  nlohmann::json j;
  j["sense"] = to_string(p.sense);
  j["variables"] = nlohmann::json::array();
  for (const auto& v : p.variables) {
    j["variables"].push_back({{"slot", v.slot}, {"imaginary", v.imaginary}, {"label", v.label}});
  }
  j["objective"] = p.objective;
  j["objective_constant"] = p.objective_constant;
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : p.blocks) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [v, F] : b.terms) terms.push_back({{"variable", v}, {"entries", upper(F)}});
    j["blocks"].push_back({{"label", b.label},
                           {"dim", b.dim},
                           {"embedded", b.embedded},
                           {"constant", upper(b.constant)},
                           {"terms", terms}});
  }
  j["equalities"] = nlohmann::json::array();
  for (const auto& e : p.equalities) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& [v, a] : e.coefficients) c.push_back({v, a});
    j["equalities"].push_back({{"coefficients", c}, {"rhs", e.rhs}});
  }
  j["normalization"] = p.normalization ? nlohmann::json(*p.normalization) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

std::string to_json(const SdpProblem& problem) { return problem_json(problem).dump(2) + "\n"; }

std::string to_json(const SdpProblem& problem, const SdpSolution& s) {
  nlohmann::json j = problem_json(problem);
  j["solution"] = {{"status", to_string(s.status)},
                   {"objective", s.objective},
                   {"feasible", s.feasible},
                   {"values", s.values},
                   {"relative_gap", s.relative_gap},
                   {"primal_residual", s.primal_residual},
                   {"dual_residual", s.dual_residual},
                   {"block_min_eigenvalues", s.block_min_eigenvalues},
                   {"iterations", s.iterations},
                   {"message", s.message}};
  return j.dump(2) + "\n";
}

}  // namespace ncr
