// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ncrelax/matrix.hpp"

namespace ncr {

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::moment: return "moment";
    case MatrixKind::localizing: return "localizing";
    case MatrixKind::commutator: return "commutator";
    case MatrixKind::anticommutator: return "anticommutator";
    case MatrixKind::extended: return "extended";
    case MatrixKind::derived: return "derived";
    case MatrixKind::imported: return "imported";
  }
  return "unknown";
}

bool SparseMatrix::is_real(double tol) const {
  return std::all_of(entries.begin(), entries.end(),
                     [tol](const SparseEntry& e) { return std::abs(e.value.imag()) <= tol; });
}

bool BasisDecomposition::complex_valued() const {
  for (const auto& [slot, m] : real_parts) {
    if (!m.is_real()) return true;
  }
  for (const auto& [slot, m] : imag_parts) {
    if (!m.is_real()) return true;
  }
  return false;
}

bool SymbolicMatrix::structurally_hermitian(const SymbolRegistry& reg) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (!approx_equal(at(j, i), reg.conjugate(at(i, j)), 1e3 * reg.tolerance())) return false;
    }
  }
  return true;
}

std::string SymbolicMatrix::render(const SymbolRegistry& reg) const {
  std::vector<std::string> cells(dim_ * dim_);
  std::vector<std::size_t> width(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      cells[i * dim_ + j] = reg.format(at(i, j));
      width[j] = std::max(width[j], cells[i * dim_ + j].size());
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < dim_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < dim_; ++j) {
      const std::string& c = cells[i * dim_ + j];
      os << (j ? "  " : "") << c << std::string(width[j] - c.size(), ' ');
    }
    os << "]\n";
  }
  return os.str();
}

namespace {

void accumulate(std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, cplx>>& acc, std::size_t slot,
                std::size_t i, std::size_t j, cplx v) {
  acc[slot][{i, j}] += v;
}

std::map<std::size_t, SparseMatrix> flatten(
    std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, cplx>>& acc, std::size_t dim, double tol) {
  std::map<std::size_t, SparseMatrix> out;
  for (auto& [slot, cells] : acc) {
    SparseMatrix m;
    m.dim = dim;
    for (auto& [pos, v] : cells) {
      cplx c = v;
      if (std::abs(c.real()) <= tol) c.real(0.0);
      if (std::abs(c.imag()) <= tol) c.imag(0.0);
      if (c == cplx{}) continue;
      m.entries.push_back(SparseEntry{pos.first, pos.second, c});
    }
    if (!m.entries.empty()) out.emplace(slot, std::move(m));
  }
  return out;
}

}  // namespace

BasisDecomposition decompose(const SymbolicMatrix& m, const SymbolRegistry& reg) {
  std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, cplx>> re;
  std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, cplx>> im;
  const cplx I{0.0, 1.0};
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      for (const auto& t : m.at(i, j).terms) {
        if (t.id == 0) continue;
        if (t.id >= reg.size()) throw std::logic_error("matrix references an unregistered symbol");
        const SymbolEntry& e = reg[t.id];
        if (!e.real_slot && !e.imag_slot) {
          throw std::logic_error("symbol " + reg.symbol_string(t.id) + " has no basis slot");
        }
        if (e.real_slot) accumulate(re, *e.real_slot, i, j, t.coefficient);
        if (e.imag_slot) accumulate(im, *e.imag_slot, i, j, (t.conjugated ? -I : I) * t.coefficient);
      }
    }
  }
  BasisDecomposition d;
  d.dim = m.dim();
  d.real_parts = flatten(re, m.dim(), 1e3 * reg.tolerance());
  d.imag_parts = flatten(im, m.dim(), 1e3 * reg.tolerance());
  return d;
}

SymbolicMatrix add(const SymbolicMatrix& a, const SymbolicMatrix& b, const SymbolRegistry& reg) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimensions differ");
  SymbolicMatrix out(a.dim(), MatrixKind::derived);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out.at(i, j) = reg.add(a.at(i, j), b.at(i, j));
  }
  out.set_level(std::max(a.level(), b.level()));
  out.set_hermitian(out.structurally_hermitian(reg));
  return out;
}

SymbolicMatrix scale(const SymbolicMatrix& a, cplx c, const SymbolRegistry& reg) {
  SymbolicMatrix out(a.dim(), MatrixKind::derived);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out.at(i, j) = reg.scale(a.at(i, j), c);
  }
  out.set_level(a.level());
  out.set_hermitian(a.hermitian() && c.imag() == 0.0);
  return out;
}

SymbolicMatrix submatrix(const SymbolicMatrix& a, const std::vector<std::size_t>& indices) {
  SymbolicMatrix out(indices.size(), MatrixKind::derived);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) out.at(i, j) = a.at(indices.at(i), indices.at(j));
  }
  out.set_level(a.level());
  out.set_hermitian(a.hermitian());
  return out;
}

}  // namespace ncr
