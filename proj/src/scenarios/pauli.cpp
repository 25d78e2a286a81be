// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/pauli.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ncr {

namespace {

std::size_t qubit_count(const PauliSpec& s) {
  std::size_t n = s.topology == PauliTopology::lattice ? s.rows * s.cols : s.qubits;
  if (n == 0) throw std::invalid_argument("Pauli scenario needs at least one qubit");
  return 3 * n;
}

std::size_t ring_distance(std::size_t a, std::size_t b, std::size_t n, bool wrap) {
  std::size_t d = a > b ? a - b : b - a;
  return wrap ? std::min(d, n - d) : d;
}

}  // namespace

PauliSpec PauliSpec::chain(std::size_t n, bool wrap, bool symmetrized) {
  PauliSpec s;
  s.topology = PauliTopology::chain;
  s.qubits = n;
  s.wrap = wrap;
  s.symmetrized = symmetrized;
  return s;
}

PauliSpec PauliSpec::lattice(std::size_t rows, std::size_t cols, bool wrap, bool symmetrized) {
  PauliSpec s;
  s.topology = PauliTopology::lattice;
  s.rows = rows;
  s.cols = cols;
  s.qubits = rows * cols;
  s.wrap = wrap;
  s.symmetrized = symmetrized;
  return s;
}

PauliContext::PauliContext(PauliSpec spec) : Context(qubit_count(spec)), spec_(std::move(spec)) {
  if (spec_.topology == PauliTopology::lattice) spec_.qubits = spec_.rows * spec_.cols;
}

std::string PauliContext::operator_name(oper_t op) const {
  static const char* axes = "XYZ";
  return std::string(1, axes[axis_of(op)]) + std::to_string(qubit_of(op) + 1);
}

void PauliContext::simplify_in_place(std::vector<oper_t>& ops, Phase& phase, bool&) const {
  std::stable_sort(ops.begin(), ops.end(), [](oper_t a, oper_t b) { return qubit_of(a) < qubit_of(b); });
  std::vector<oper_t> out;
  out.reserve(ops.size());
  for (oper_t op : ops) {
    if (out.empty() || qubit_of(out.back()) != qubit_of(op)) {
      out.push_back(op);
      continue;
    }
    const oper_t a = axis_of(out.back());
    const oper_t b = axis_of(op);
    out.pop_back();
    if (a == b) continue;
    // XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign.
    const oper_t c = 3 - a - b;
    phase = phase * ((b + 3 - a) % 3 == 1 ? Phase::imag() : Phase::minus_imag());
    out.push_back(op - b + c);
  }
  ops = std::move(out);
}

bool PauliContext::neighbours(std::size_t a, std::size_t b, std::size_t m) const {
  if (spec_.topology != PauliTopology::lattice) return ring_distance(a, b, spec_.qubits, spec_.wrap) <= m;
  const std::size_t dr = ring_distance(row_of(a), row_of(b), spec_.rows, spec_.wrap);
  const std::size_t dc = ring_distance(col_of(a), col_of(b), spec_.cols, spec_.wrap);
  return dr + dc == 1;
}

WordFilter PauliContext::neighbour_filter(std::size_t m) const {
  if (m == 0) return {};
  if (spec_.topology == PauliTopology::lattice && m != 1) {
    throw std::invalid_argument("lattices support nearest-neighbour filtering with m = 1 only");
  }
  WordFilter f;
  f.tag = "nn" + std::to_string(m);
  f.admit = [this, m](const OperatorWord& w) {
    std::vector<std::size_t> qs;
    for (oper_t op : w.ops) qs.push_back(qubit_of(op));
    if (qs.size() <= 1) return true;
    // Connected under the neighbour relation (flood fill from the first qubit).
    std::vector<bool> seen(qs.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < qs.size(); ++j) {
        if (!seen[j] && neighbours(qs[i], qs[j], m)) {
          seen[j] = true;
          ++reached;
          stack.push_back(j);
        }
      }
    }
    return reached == qs.size();
  };
  return f;
}

std::vector<OperatorWord> PauliContext::translations(const OperatorWord& w) const {
  if (w.zero || w.ops.empty()) return {w};
  const bool lattice = spec_.topology == PauliTopology::lattice;
  const std::size_t rows = lattice ? spec_.rows : 1;
  const std::size_t cols = lattice ? spec_.cols : spec_.qubits;
  // Treat a chain as a 1 x N lattice: shifts act on the column index.
  auto row = [&](std::size_t q) { return lattice ? q % rows : 0; };
  auto col = [&](std::size_t q) { return lattice ? q / rows : q; };

  std::size_t rmin = rows, rmax = 0, cmin = cols, cmax = 0;
  for (oper_t op : w.ops) {
    const std::size_t q = qubit_of(op);
    rmin = std::min(rmin, row(q));
    rmax = std::max(rmax, row(q));
    cmin = std::min(cmin, col(q));
    cmax = std::max(cmax, col(q));
  }

  std::vector<OperatorWord> out;
  auto emit = [&](long dr, long dc) {
    OperatorWord img = w;
    for (auto& op : img.ops) {
      const std::size_t q = qubit_of(op);
      const std::size_t r = static_cast<std::size_t>((static_cast<long>(row(q)) + dr + static_cast<long>(rows)) %
                                                     static_cast<long>(rows));
      const std::size_t c = static_cast<std::size_t>((static_cast<long>(col(q)) + dc + static_cast<long>(cols)) %
                                                     static_cast<long>(cols));
      const std::size_t nq = lattice ? c * rows + r : c;
      op = op - static_cast<oper_t>(3 * q) + static_cast<oper_t>(3 * nq);
    }
    std::stable_sort(img.ops.begin(), img.ops.end(), [](oper_t a, oper_t b) { return qubit_of(a) < qubit_of(b); });
    out.push_back(std::move(img));
  };
  if (spec_.wrap) {
    for (std::size_t dr = 0; dr < rows; ++dr) {
      for (std::size_t dc = 0; dc < cols; ++dc) emit(static_cast<long>(dr), static_cast<long>(dc));
    }
  } else {
    for (long dr = -static_cast<long>(rmin); dr + static_cast<long>(rmax) < static_cast<long>(rows); ++dr) {
      for (long dc = -static_cast<long>(cmin); dc + static_cast<long>(cmax) < static_cast<long>(cols); ++dc) {
        emit(dr, dc);
      }
    }
  }
  return out;
}

OperatorWord PauliContext::canonical_moment(const OperatorWord& w) const {
  if (!spec_.symmetrized || w.zero || w.ops.empty()) return w;
  OperatorWord best = w;
  for (auto& img : translations(w)) {
    if (shortlex_compare(img, best) < 0) best = std::move(img);
  }
  return best;
}

OpPolynomial PauliContext::symmetrize(const OpPolynomial& p) const {
  if (!spec_.symmetrized) throw std::logic_error("symmetrize needs a symmetrized Pauli scenario");
  OpPolynomial out;
  for (const auto& t : ncr::simplify(*this, p).terms) {
    auto images = translations(t.word);
    const double weight = 1.0 / static_cast<double>(images.size());
    for (auto& img : images) out.terms.push_back({t.coefficient * weight, std::move(img)});
  }
  return ncr::simplify(*this, out);
}

}  // namespace ncr
