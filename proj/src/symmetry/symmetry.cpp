// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/symmetry.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ncrelax/operator_polynomial.hpp"
#include "ncrelax/parallel.hpp"

namespace ncr {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (long long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

std::vector<long long> key_of(const Eigen::MatrixXd& m) {
  // Entries of elements of a finite group stay bounded; large ones would
  // overflow the rounded key.
  if (m.size() > 0 && (!m.allFinite() || m.cwiseAbs().maxCoeff() > 1e6)) {
    throw std::length_error("generators do not generate a finite group");
  }
  std::vector<long long> k(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i) k[static_cast<std::size_t>(i)] = std::llround(m.data()[i] * 1e9);
  return k;
}

class ElementSet {
 public:
  explicit ElementSet(std::size_t cap) : cap_(cap) {}

  bool contains(const Eigen::MatrixXd& m) const { return keys_.count(key_of(m)) > 0; }
  void add(Eigen::MatrixXd m) {
    if (!keys_.insert(key_of(m)).second) return;
    if (list_.size() >= cap_) throw std::length_error("group has more than " + std::to_string(cap_) + " elements");
    list_.push_back(std::move(m));
  }
  std::vector<Eigen::MatrixXd>& list() { return list_; }

 private:
  std::size_t cap_;
  std::unordered_set<std::vector<long long>, KeyHash> keys_;
  std::vector<Eigen::MatrixXd> list_;
};

}  // namespace

std::vector<Eigen::MatrixXd> dimino(const std::vector<Eigen::MatrixXd>& gens, std::size_t cap) {
  Eigen::Index n = -1;
  for (const auto& g : gens) {
    if (g.rows() != g.cols()) throw std::invalid_argument("group generators must be square");
    if (n >= 0 && g.rows() != n) throw std::invalid_argument("group generators differ in size");
    n = g.rows();
  }
  if (n < 0) throw std::invalid_argument("no group generators");
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);

  ElementSet G(cap);
  G.add(e);
  std::vector<Eigen::MatrixXd> used;
  for (const auto& s : gens) {
    if (G.contains(s)) continue;
    used.push_back(s);
    if (G.list().size() == 1) {
      // Cyclic subgroup of the first generator.
      Eigen::MatrixXd x = s;
      while (!G.contains(x)) {
        G.add(x);
        x = x * s;
      }
      continue;
    }
    // Extend the current subgroup H by s through coset enumeration.
    const std::vector<Eigen::MatrixXd> H = G.list();
    const std::size_t order = H.size();
    for (const auto& h : H) G.add(h * s);
    std::size_t rep = order;
    while (rep < G.list().size()) {
      const Eigen::MatrixXd r = G.list()[rep];
      for (const auto& t : used) {
        Eigen::MatrixXd x = r * t;
        if (G.contains(x)) continue;
        for (const auto& h : H) G.add(h * x);
      }
      rep += order;
    }
  }
  return std::move(G.list());
}

Eigen::MatrixXd lift(const Context& ctx, const Eigen::MatrixXd& element, const std::vector<OperatorWord>& basis) {
  const std::size_t N = ctx.operator_count();
  if (element.rows() != static_cast<Eigen::Index>(N + 1) || element.cols() != element.rows()) {
    throw std::invalid_argument("group element must be " + std::to_string(N + 1) + "x" + std::to_string(N + 1));
  }
  std::unordered_map<std::vector<oper_t>, std::size_t, IndexVectorHash> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i].ops, i);

  std::vector<OpPolynomial> letter(N);
  for (std::size_t j = 0; j < N; ++j) {
    OpPolynomial img;
    for (std::size_t i = 0; i <= N; ++i) {
      const double c = element(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1));
      if (c == 0.0) continue;
      img.terms.push_back({c, i == 0 ? OperatorWord{} : OperatorWord({static_cast<oper_t>(i - 1)})});
    }
    letter[j] = simplify(ctx, img);
  }

  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    OpPolynomial img = OpPolynomial::identity();
    for (oper_t op : basis[static_cast<std::size_t>(col)].ops) img = multiply(ctx, img, letter[op]);
    for (const auto& t : img.terms) {
      auto it = index.find(t.word.ops);
      if (it == index.end()) {
        throw std::domain_error("image of " + ctx.format(basis[static_cast<std::size_t>(col)]) +
                                " leaves the word basis (" + ctx.format(t.word) + ")");
      }
      if (std::abs(t.coefficient.imag()) > 1e-12) throw std::domain_error("group element has a complex image");
      out(static_cast<Eigen::Index>(it->second), col) += t.coefficient.real();
    }
  }
  return out;
}

Eigen::MatrixXd group_average(const std::vector<Eigen::MatrixXd>& elements) {
  if (elements.empty()) throw std::invalid_argument("empty group");
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(elements.front().rows(), elements.front().cols());
  for (const auto& g : elements) sum += g;
  return sum / static_cast<double>(elements.size());
}

LUReduction lu_reduce(const Eigen::MatrixXd& A, double relative_threshold) {
  if (A.rows() != A.cols()) throw std::invalid_argument("lu_reduce needs a square matrix");
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd W = A;
  LUReduction out;
  out.row_perm.resize(static_cast<std::size_t>(n));
  out.col_perm.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.row_perm[static_cast<std::size_t>(i)] = out.col_perm[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);

  const double tol = relative_threshold * (n > 0 ? A.cwiseAbs().maxCoeff() : 0.0);
  std::vector<bool> pivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = k, pc = k;
    const double mx = W.bottomRightCorner(n - k, n - k).cwiseAbs().maxCoeff(&pr, &pc);
    pr += k;
    pc += k;
    if (mx <= tol) {
      W.bottomRightCorner(n - k, n - k).setZero();
      break;
    }
    const bool row_zero = W.row(k).tail(n - k).cwiseAbs().maxCoeff() <= tol;
    const bool col_zero = W.col(k).tail(n - k).cwiseAbs().maxCoeff() <= tol;
    if (row_zero && col_zero) {
      W.row(k).tail(n - k).setZero();
      W.col(k).tail(n - k).setZero();
      continue;
    }
    if (std::abs(W(k, k)) < mx * (1.0 - 1e-12)) {
      W.row(k).swap(W.row(pr));
      W.col(k).swap(W.col(pc));
      std::swap(out.row_perm[static_cast<std::size_t>(k)], out.row_perm[static_cast<std::size_t>(pr)]);
      std::swap(out.col_perm[static_cast<std::size_t>(k)], out.col_perm[static_cast<std::size_t>(pc)]);
    }
    const double p = W(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      W(i, k) /= p;
      if (W(i, k) == 0.0) continue;
      W.row(i).tail(n - k - 1) -= W(i, k) * W.row(k).tail(n - k - 1);
    }
    pivot[static_cast<std::size_t>(k)] = true;
    out.pivots.push_back(static_cast<std::size_t>(k));
  }

  out.L = Eigen::MatrixXd::Zero(n, n);
  out.U = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) out.L(i, j) = W(i, j);
    if (pivot[static_cast<std::size_t>(i)]) {
      out.L(i, i) = 1.0;
      out.U.row(i).tail(n - i) = W.row(i).tail(n - i);
    }
  }
  return out;
}

SymmetryReduction::SymmetryReduction(MatrixSystem& base, const std::vector<Eigen::MatrixXd>& generators,
                                     std::size_t max_word_length, std::size_t cap)
    : base_(&base), reduced_(nullptr, base.registry().tolerance()) {
  if (max_word_length == 0) throw std::invalid_argument("maximum word length must be at least 1");
  const Context& ctx = base.context();
  basis_ = generate_dictionary(ctx, max_word_length).words;
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i].ops, i);

  group_ = dimino(generators, cap);
  std::vector<Eigen::MatrixXd> lifted(group_.size());
  parallel_for(group_.size(), [&](std::size_t g) { lifted[g] = lift(ctx, group_[g], basis_); });
  average_ = group_average(lifted);
  lu_ = lu_reduce(average_.transpose());

  const auto n = static_cast<Eigen::Index>(basis_.size());
  const double tol = 1e-9;

  // Reduced symbol per nonzero U row; rows equal to the conjugate of an
  // earlier row reuse that symbol.
  struct RowSymbol {
    std::size_t id;
    bool conjugated;
    double scale;  // identity rows: Z = scale * <1>
  };
  std::vector<RowSymbol> row_symbol(static_cast<std::size_t>(n), RowSymbol{0, false, 0.0});
  std::vector<std::pair<Eigen::VectorXcd, std::size_t>> seen;  // definition over basis order, symbol id
  std::size_t next_name = 1;

  for (std::size_t k : lu_.pivots) {
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::VectorXcd def = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) def(static_cast<Eigen::Index>(lu_.col_perm[static_cast<std::size_t>(j)])) = lu_.U(kk, j);

    Definition d;
    {
      std::vector<Monomial> terms;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (def(j) == cplx{}) continue;
        Polynomial m = base.moment(basis_[static_cast<std::size_t>(j)]);
        for (auto t : m.terms) {
          t.coefficient *= def(j);
          terms.push_back(t);
        }
      }
      d.base = base.registry().normalize(std::move(terms));
    }

    const bool identity_only = std::abs(def(0)) > tol && (def.tail(n - 1).cwiseAbs().maxCoeff() <= tol || n == 1);
    if (identity_only) {
      row_symbol[k] = {1, false, def(0).real()};
      d.id = 1;
      definitions_.push_back(std::move(d));
      continue;
    }

    // Conjugate definition: sum conj(d_j) <w_j^dagger>.
    Eigen::VectorXcd conj_def = Eigen::VectorXcd::Zero(n);
    bool closed = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (def(j) == cplx{}) continue;
      OperatorWord c = ctx.conjugate(basis_[static_cast<std::size_t>(j)]);
      auto it = index_.find(c.ops);
      if (it == index_.end()) {
        closed = false;
        break;
      }
      conj_def(static_cast<Eigen::Index>(it->second)) += std::conj(def(j)) * c.phase.value();
    }
    const double scale = def.cwiseAbs().maxCoeff();
    const bool hermitian = closed && (conj_def - def).cwiseAbs().maxCoeff() <= tol * scale;

    bool aliased = false;
    if (closed && !hermitian) {
      for (const auto& [prev, id] : seen) {
        if ((prev - conj_def).cwiseAbs().maxCoeff() <= tol * scale) {
          row_symbol[k] = {id, true, 1.0};
          aliased = true;
          break;
        }
      }
    }
    if (aliased) continue;

    const std::size_t id = reduced_.registry().size();
    reduced_.registry().register_named(id, "Z" + std::to_string(next_name++), hermitian);
    row_symbol[k] = {id, false, 1.0};
    seen.emplace_back(def, id);
    d.id = id;
    definitions_.push_back(std::move(d));
  }

  // Row i of L U gives the averaged moment of basis word row_perm[i].
  const SymbolRegistry& rreg = reduced_.registry();
  forward_.assign(basis_.size(), Polynomial{});
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Monomial> terms;
    for (std::size_t k : lu_.pivots) {
      const auto kk = static_cast<Eigen::Index>(k);
      if (kk > i) break;
      const double l = lu_.L(i, kk);
      if (l == 0.0) continue;
      const RowSymbol& rs = row_symbol[k];
      terms.push_back(Monomial{rs.id, rs.conjugated, l * rs.scale});
    }
    forward_[lu_.row_perm[static_cast<std::size_t>(i)]] = rreg.normalize(std::move(terms));
  }
}

Polynomial SymmetryReduction::transform(const Polynomial& p) const {
  const SymbolRegistry& breg = base_->registry();
  const SymbolRegistry& rreg = reduced_.registry();
  std::vector<Monomial> terms;
  for (const auto& t : p.terms) {
    if (t.id == 0) continue;
    if (t.id == 1) {
      terms.push_back(Monomial{1, false, t.coefficient});
      continue;
    }
    const SymbolEntry& e = breg[t.id];
    if (!e.has_word || e.is_composite()) {
      throw std::out_of_range("moment " + breg.symbol_string(t.id) + " is not a word moment");
    }
    const OperatorWord& w = t.conjugated ? e.conjugate_word : e.word;
    auto it = index_.find(w.ops);
    if (it == index_.end()) {
      throw std::out_of_range("moment " + breg.symbol_string(t.id) + " is longer than the lifted word length");
    }
    const cplx c = t.coefficient * w.phase.value();
    for (auto m : forward_[it->second].terms) {
      m.coefficient *= c;
      terms.push_back(m);
    }
  }
  return rreg.normalize(std::move(terms));
}

SymbolicMatrix SymmetryReduction::transform(const SymbolicMatrix& m) const {
  SymbolicMatrix out(m.dim(), MatrixKind::derived);
  out.set_level(m.level());
  out.set_label(m.label());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out.at(i, j) = transform(m.at(i, j));
  }
  out.set_hermitian(out.structurally_hermitian(reduced_.registry()));
  return out;
}

}  // namespace ncr
