// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0
//
// Primal-dual path-following solver (HKM direction, Mehrotra
// predictor-corrector) for
//   (P) min <C, X>  s.t. <A_i, X> = b_i,  X >= 0
//   (D) max b.y     s.t. S = C - sum_i y_i A_i >= 0
// with block-diagonal data and sparse A_i.

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <deque>
#include <map>

#include "kernels.hpp"
#include "ncrelax/parallel.hpp"
#include "ncrelax/sdp.hpp"

namespace ncr {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Term {
  std::size_t var;
  const SymmetricSparse* mat;
};

struct Core {
  std::vector<std::size_t> dims;
  std::vector<RowMat> C;
  std::vector<std::vector<Term>> by_block;  // block -> (variable, A_i)
  Eigen::VectorXd b;
  std::deque<SymmetricSparse> storage;
};

double inner(const SymmetricSparse& a, const RowMat& R) {
  double s = 0.0;
  for (const auto& e : a.entries) s += e.value * R(e.row, e.col);
  return s;
}

double frob_inner(const RowMat& a, const RowMat& b) {
  return kernels::dot(a.data(), b.data(), static_cast<std::size_t>(a.size()));
}

// A(X) per variable.
Eigen::VectorXd apply_A(const Core& p, const std::vector<RowMat>& X) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p.b.size());
  for (std::size_t k = 0; k < p.dims.size(); ++k) {
    for (const Term& t : p.by_block[k]) out[t.var] += inner(*t.mat, X[k]);
  }
  return out;
}

// sum_i y_i A_i, per block.
std::vector<RowMat> apply_At(const Core& p, const Eigen::VectorXd& y) {
  std::vector<RowMat> out(p.dims.size());
  for (std::size_t k = 0; k < p.dims.size(); ++k) {
    out[k] = RowMat::Zero(p.dims[k], p.dims[k]);
    for (const Term& t : p.by_block[k]) {
      const double v = y[t.var];
      if (v == 0.0) continue;
      for (const auto& e : t.mat->entries) out[k](e.row, e.col) += v * e.value;
    }
  }
  return out;
}

double frob_norm(const std::vector<RowMat>& m) {
  double s = 0.0;
  for (const auto& b : m) s += b.squaredNorm();
  return std::sqrt(s);
}

// Largest step in (0, 1] keeping L L^T + a D positive semidefinite.
double max_step(const Eigen::LLT<RowMat>& chol, const RowMat& D) {
  const RowMat Linv = chol.matrixL().solve(RowMat::Identity(D.rows(), D.cols()));
  RowMat T = Linv * D * Linv.transpose();
  T = 0.5 * (T + T.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RowMat> es(T, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

class Ipm {
 public:
  Ipm(const Core& p, const SolverOptions& o) : p_(p), o_(o), nb_(p.dims.size()), m_(p.b.size()) {}

  DenseSdpResult run();

 private:
  void initial_point();
  // Schur complement M_ij = tr(A_i X A_j S^-1).
  Eigen::MatrixXd schur() const;
  // Direction for a given rhs matrix R (per block): solves M dy = rp + A(R).
  Eigen::VectorXd direction(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::VectorXd& rp,
                            const std::vector<RowMat>& R) const;

  const Core& p_;
  const SolverOptions& o_;
  std::size_t nb_;
  std::size_t m_;
  std::vector<RowMat> X_, S_, Sinv_;
  Eigen::VectorXd y_;
};

void Ipm::initial_point() {
  X_.resize(nb_);
  S_.resize(nb_);
  y_ = Eigen::VectorXd::Zero(m_);
  std::vector<double> normA(m_, 0.0);
  for (std::size_t k = 0; k < nb_; ++k) {
    const double n = static_cast<double>(p_.dims[k]);
    double xi = std::max(10.0, std::sqrt(n));
    double eta = std::max({10.0, std::sqrt(n), p_.C[k].norm()});
    for (const Term& t : p_.by_block[k]) {
      double f = 0.0;
      for (const auto& e : t.mat->entries) f += e.value * e.value;
      f = std::sqrt(f);
      xi = std::max(xi, std::sqrt(n) * (1.0 + std::abs(p_.b[t.var])) / (1.0 + f));
      eta = std::max(eta, f);
    }
    X_[k] = xi * RowMat::Identity(p_.dims[k], p_.dims[k]);
    S_[k] = eta * RowMat::Identity(p_.dims[k], p_.dims[k]);
  }
}

Eigen::MatrixXd Ipm::schur() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m_, m_);
  for (std::size_t k = 0; k < nb_; ++k) {
    const auto& terms = p_.by_block[k];
    const std::size_t d = p_.dims[k];
    const RowMat& X = X_[k];
    const RowMat& Si = Sinv_[k];
    // Column j of M (rows i >= j) is written by task j only.
    parallel_for(terms.size(), [&](std::size_t jt) {
      const Term& tj = terms[jt];
      // T = A_j S^-1 (rows of A_j only), G = X T.
      std::map<std::size_t, std::vector<double>> Trows;
      for (const auto& e : tj.mat->entries) {
        auto& row = Trows[e.row];
        if (row.empty()) row.assign(d, 0.0);
        kernels::axpy(e.value, Si.data() + e.col * d, row.data(), d);
      }
      RowMat G = RowMat::Zero(d, d);
      for (const auto& [prow, trow] : Trows) {
        for (std::size_t s = 0; s < d; ++s) {
          const double xs = X(s, prow);
          if (xs != 0.0) kernels::axpy(xs, trow.data(), G.data() + s * d, d);
        }
      }
      for (std::size_t it = jt; it < terms.size(); ++it) {
        const Term& ti = terms[it];
        double v = 0.0;
        for (const auto& e : ti.mat->entries) v += e.value * G(e.col, e.row);
        M(ti.var, tj.var) += v;
      }
    });
  }
  // Terms within a block are sorted by variable, so entries sit in the
  // lower triangle.
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = i + 1; j < m_; ++j) {
      const double v = M(i, j) + M(j, i);
      M(i, j) = v;
      M(j, i) = v;
    }
  }
  return M;
}

Eigen::VectorXd Ipm::direction(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::VectorXd& rp,
                               const std::vector<RowMat>& R) const {
  Eigen::VectorXd rhs = rp + apply_A(p_, R);
  return chol.solve(rhs);
}

DenseSdpResult Ipm::run() {
  DenseSdpResult res;
  res.X.clear();
  initial_point();
  Sinv_.resize(nb_);

  double n_total = 0.0;
  for (auto d : p_.dims) n_total += static_cast<double>(d);
  double normC = 0.0;
  for (const auto& c : p_.C) normC += c.squaredNorm();
  normC = std::sqrt(normC);
  const double normb = p_.b.norm();
  const double gamma = 0.98;
  std::size_t stalls = 0;

  auto finish = [&](SolveStatus st, std::size_t it) {
    res.status = st;
    res.iterations = it;
    res.y = y_;
    res.X.assign(X_.begin(), X_.end());
    return res;
  };

  for (std::size_t it = 0;; ++it) {
    const Eigen::VectorXd rp = p_.b - apply_A(p_, X_);
    std::vector<RowMat> Rd = apply_At(p_, y_);
    for (std::size_t k = 0; k < nb_; ++k) Rd[k] = p_.C[k] - S_[k] - Rd[k];

    double pobj = 0.0, xs = 0.0, trX = 0.0;
    for (std::size_t k = 0; k < nb_; ++k) {
      pobj += frob_inner(p_.C[k], X_[k]);
      xs += frob_inner(X_[k], S_[k]);
      trX += X_[k].trace();
    }
    const double dobj = p_.b.dot(y_);
    res.primal_objective = pobj;
    res.dual_objective = dobj;
    res.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    res.primal_residual = rp.norm() / (1.0 + normb);
    res.dual_residual = frob_norm(Rd) / (1.0 + normC);
    const double mu = xs / n_total;

    if (o_.verbose) {
      std::fprintf(stderr, "%3zu  p=% .9e  d=% .9e  gap=%.2e  pinf=%.2e  dinf=%.2e  mu=%.2e\n", it, pobj, dobj,
                   res.relative_gap, res.primal_residual, res.dual_residual, mu);
    }
    const bool loose = res.relative_gap <= 1e-6 && res.primal_residual <= 1e-6 && res.dual_residual <= 1e-6;
    if (res.relative_gap <= o_.gap_tolerance && res.primal_residual <= o_.feasibility_tolerance &&
        res.dual_residual <= o_.feasibility_tolerance) {
      return finish(SolveStatus::optimal, it);
    }
    // Divergence: a huge X with small residual certifies (D) infeasible, a
    // huge y certifies (D) unbounded.
    if (trX > 1e10 && pobj < 0.0 && res.primal_residual < 1e-3) return finish(SolveStatus::infeasible, it);
    if (y_.lpNorm<Eigen::Infinity>() > 1e10 && dobj > 0.0 && res.dual_residual < 1e-3) {
      return finish(SolveStatus::unbounded, it);
    }
    if (it >= o_.max_iterations) {
      return finish(loose ? SolveStatus::optimal : SolveStatus::iteration_limit, it);
    }

    std::vector<Eigen::LLT<RowMat>> cx(nb_), cs(nb_);
    bool ok = true;
    for (std::size_t k = 0; k < nb_ && ok; ++k) {
      cx[k].compute(X_[k]);
      cs[k].compute(S_[k]);
      ok = cx[k].info() == Eigen::Success && cs[k].info() == Eigen::Success;
      if (ok) {
        Sinv_[k] = cs[k].solve(RowMat::Identity(p_.dims[k], p_.dims[k]));
        Sinv_[k] = 0.5 * (Sinv_[k] + Sinv_[k].transpose()).eval();
      }
    }
    if (!ok) return finish(loose ? SolveStatus::optimal : SolveStatus::numerical_failure, it);

    Eigen::MatrixXd M = schur();
    Eigen::LLT<Eigen::MatrixXd> chol(M);
    if (chol.info() != Eigen::Success) {
      const double scale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
      for (double ridge = 1e-14; ridge <= 1e-6; ridge *= 100.0) {
        Eigen::MatrixXd Mr = M;
        Mr.diagonal().array() += ridge * scale;
        chol.compute(Mr);
        if (chol.info() == Eigen::Success) break;
      }
      if (chol.info() != Eigen::Success) {
        return finish(loose ? SolveStatus::optimal : SolveStatus::numerical_failure, it);
      }
    }

    // X Rd S^-1 + X, shared by both passes.
    std::vector<RowMat> base(nb_);
    for (std::size_t k = 0; k < nb_; ++k) base[k] = X_[k] * Rd[k] * Sinv_[k] + X_[k];

    auto build = [&](const Eigen::VectorXd& dy, const std::vector<RowMat>& extra, double target,
                     std::vector<RowMat>& dX, std::vector<RowMat>& dS) {
      std::vector<RowMat> Ady = apply_At(p_, dy);
      dX.resize(nb_);
      dS.resize(nb_);
      for (std::size_t k = 0; k < nb_; ++k) {
        dS[k] = Rd[k] - Ady[k];
        RowMat T = X_[k] * dS[k] * Sinv_[k];
        if (!extra.empty()) T += extra[k];
        dX[k] = target * Sinv_[k] - X_[k] - 0.5 * (T + T.transpose());
      }
    };
    auto steps = [&](const std::vector<RowMat>& dX, const std::vector<RowMat>& dS) {
      double ap = std::numeric_limits<double>::infinity(), ad = ap;
      for (std::size_t k = 0; k < nb_; ++k) {
        ap = std::min(ap, max_step(cx[k], dX[k]));
        ad = std::min(ad, max_step(cs[k], dS[k]));
      }
      return std::make_pair(ap, ad);
    };

    // Predictor.
    const Eigen::VectorXd dy_p = direction(chol, rp, base);
    std::vector<RowMat> dXp, dSp;
    build(dy_p, {}, 0.0, dXp, dSp);
    auto [ap_max, ad_max] = steps(dXp, dSp);
    const double ap = std::min(1.0, ap_max), ad = std::min(1.0, ad_max);
    double xs_aff = 0.0;
    for (std::size_t k = 0; k < nb_; ++k) xs_aff += frob_inner(X_[k] + ap * dXp[k], S_[k] + ad * dSp[k]);
    const double sigma = std::clamp(std::pow(std::max(xs_aff, 0.0) / xs, 3.0), 0.0, 1.0);

    // Corrector.
    std::vector<RowMat> second(nb_), R(nb_);
    for (std::size_t k = 0; k < nb_; ++k) {
      second[k] = dXp[k] * dSp[k] * Sinv_[k];
      R[k] = base[k] + second[k] - sigma * mu * Sinv_[k];
    }
    const Eigen::VectorXd dy = direction(chol, rp, R);
    std::vector<RowMat> dX, dS;
    build(dy, second, sigma * mu, dX, dS);
    auto [cp_max, cd_max] = steps(dX, dS);
    const double alpha_p = std::min(1.0, gamma * cp_max);
    const double alpha_d = std::min(1.0, gamma * cd_max);

    for (std::size_t k = 0; k < nb_; ++k) {
      X_[k] += alpha_p * dX[k];
      S_[k] += alpha_d * dS[k];
      X_[k] = 0.5 * (X_[k] + X_[k].transpose()).eval();
      S_[k] = 0.5 * (S_[k] + S_[k].transpose()).eval();
    }
    y_ += alpha_d * dy;

    if (alpha_p < 1e-8 && alpha_d < 1e-8) {
      if (++stalls >= 3) return finish(loose ? SolveStatus::optimal : SolveStatus::numerical_failure, it + 1);
    } else {
      stalls = 0;
    }
  }
}

DenseSdpResult solve_core(const Core& core, const SolverOptions& options) {
  if (core.b.size() == 0) {
    // Nothing to optimize: feasible iff C >= 0.
    DenseSdpResult r;
    r.y = Eigen::VectorXd(0);
    bool psd = true;
    for (const auto& c : core.C) {
      if (c.rows() == 0) continue;
      Eigen::SelfAdjointEigenSolver<RowMat> es(c, Eigen::EigenvaluesOnly);
      psd = psd && es.eigenvalues().minCoeff() >= -1e-9;
      r.X.push_back(Eigen::MatrixXd::Zero(c.rows(), c.cols()));
    }
    r.status = psd ? SolveStatus::optimal : SolveStatus::infeasible;
    return r;
  }
  Ipm ipm(core, options);
  return ipm.run();
}

SymmetricSparse from_dense(const Eigen::MatrixXd& m) {
  SymmetricSparse s;
  s.dim = static_cast<std::size_t>(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      if (v != 0.0) s.entries.push_back({std::size_t(i), std::size_t(j), v});
    }
  }
  return s;
}

RowMat dense_of(const SymmetricSparse& s, std::size_t dim) {
  RowMat m = RowMat::Zero(dim, dim);
  for (const auto& e : s.entries) m(e.row, e.col) += e.value;
  return m;
}

}  // namespace

DenseSdpResult solve_dense(const DenseSdp& sdp, const SolverOptions& options) {
  Core core;
  for (const auto& c : sdp.C) {
    core.dims.push_back(static_cast<std::size_t>(c.rows()));
    core.C.push_back(RowMat(0.5 * (c + c.transpose())));
  }
  core.by_block.resize(core.dims.size());
  core.b = sdp.b;
  for (std::size_t i = 0; i < sdp.A.size(); ++i) {
    for (std::size_t k = 0; k < sdp.A[i].size(); ++k) {
      core.storage.push_back(from_dense(sdp.A[i][k]));
      if (!core.storage.back().empty()) core.by_block[k].push_back({i, &core.storage.back()});
    }
  }
  return solve_core(core, options);
}

namespace {

struct Reduced {
  Eigen::VectorXd y0;
  // y = y0 + N z; selection[k] gives the single variable of column k when
  // the map is a pure selection.
  Eigen::MatrixXd N;
  std::vector<std::size_t> selection;
  bool is_selection = false;
  bool consistent = true;
  std::size_t free_count() const { return is_selection ? selection.size() : std::size_t(N.cols()); }
};

Reduced eliminate(const SdpProblem& prob) {
  const std::size_t nv = prob.variables.size();
  Reduced r;
  r.y0 = Eigen::VectorXd::Zero(nv);
  const bool pins = std::all_of(prob.equalities.begin(), prob.equalities.end(),
                                [](const LinearConstraint& c) { return c.coefficients.size() == 1; });
  if (pins) {
    r.is_selection = true;
    std::vector<bool> pinned(nv, false);
    for (const auto& c : prob.equalities) {
      const auto [v, a] = c.coefficients.front();
      const double val = c.rhs / a;
      if (pinned[v] && std::abs(r.y0[v] - val) > 1e-9 * (1.0 + std::abs(val))) r.consistent = false;
      pinned[v] = true;
      r.y0[v] = val;
    }
    for (std::size_t v = 0; v < nv; ++v) {
      if (!pinned[v]) r.selection.push_back(v);
    }
    return r;
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(prob.equalities.size(), nv);
  Eigen::VectorXd rhs(prob.equalities.size());
  for (std::size_t i = 0; i < prob.equalities.size(); ++i) {
    for (const auto& [v, a] : prob.equalities[i].coefficients) A(i, v) += a;
    rhs[i] = prob.equalities[i].rhs;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-12);
  r.y0 = lu.solve(rhs);
  r.consistent = (A * r.y0 - rhs).norm() <= 1e-9 * (1.0 + rhs.norm());
  if (static_cast<std::size_t>(lu.rank()) == nv) {
    r.N = Eigen::MatrixXd::Zero(nv, 0);
  } else {
    r.N = lu.kernel();
  }
  return r;
}

// Evaluate F(y) for one block.
RowMat block_value(const SdpBlock& blk, const std::vector<double>& y) {
  RowMat m = dense_of(blk.constant, blk.dim);
  for (const auto& [v, F] : blk.terms) {
    if (y[v] == 0.0) continue;
    for (const auto& e : F.entries) m(e.row, e.col) += y[v] * e.value;
  }
  return m;
}

SdpSolution run(const SdpProblem& prob, const SolverOptions& options, bool feasibility) {
  const std::size_t nv = prob.variables.size();
  Reduced red = eliminate(prob);
  SdpSolution sol;
  if (!red.consistent) {
    sol.status = SolveStatus::infeasible;
    sol.message = "inconsistent equality constraints";
    sol.values.assign(nv, 0.0);
    return sol;
  }
  const std::size_t nz = red.free_count();

  // Column k of N as a sparse list of (variable, weight).
  auto column = [&](std::size_t k) {
    std::vector<std::pair<std::size_t, double>> c;
    if (red.is_selection) {
      c.emplace_back(red.selection[k], 1.0);
    } else {
      for (std::size_t v = 0; v < nv; ++v) {
        if (std::abs(red.N(v, k)) > 1e-14) c.emplace_back(v, red.N(v, k));
      }
    }
    return c;
  };

  const double sign = prob.sense == Sense::minimize ? -1.0 : 1.0;
  Core core;
  const std::size_t nblocks = prob.blocks.size() + (feasibility ? 1 : 0);
  core.dims.resize(nblocks);
  core.C.resize(nblocks);
  core.by_block.resize(nblocks);

  // Per-block lookup of F_v.
  std::vector<std::map<std::size_t, const SymmetricSparse*>> F(prob.blocks.size());
  for (std::size_t k = 0; k < prob.blocks.size(); ++k) {
    const SdpBlock& blk = prob.blocks[k];
    core.dims[k] = blk.dim;
    std::vector<double> y0(red.y0.data(), red.y0.data() + nv);
    core.C[k] = block_value(blk, y0);
    for (const auto& [v, m] : blk.terms) F[k][v] = &m;
  }

  // Free variables that reach some block; others must not be rewarded by the
  // objective.
  std::vector<std::size_t> kept;
  std::vector<double> bvec;
  bool unbounded = false;
  for (std::size_t z = 0; z < nz; ++z) {
    const auto col = column(z);
    double bz = 0.0;
    if (!feasibility) {
      for (const auto& [v, w] : col) bz += sign * prob.objective[v] * w;
    }
    std::vector<std::pair<std::size_t, SymmetricSparse>> mats;
    for (std::size_t k = 0; k < prob.blocks.size(); ++k) {
      std::map<std::pair<std::size_t, std::size_t>, double> acc;
      for (const auto& [v, w] : col) {
        auto it = F[k].find(v);
        if (it == F[k].end()) continue;
        for (const auto& e : it->second->entries) acc[{e.row, e.col}] -= w * e.value;
      }
      SymmetricSparse s;
      s.dim = prob.blocks[k].dim;
      for (const auto& [rc, val] : acc) {
        if (std::abs(val) > 1e-14) s.entries.push_back({rc.first, rc.second, val});
      }
      if (!s.empty()) mats.emplace_back(k, std::move(s));
    }
    if (mats.empty()) {
      if (std::abs(bz) > 1e-12) unbounded = true;
      continue;
    }
    const std::size_t var = kept.size();
    kept.push_back(z);
    bvec.push_back(bz);
    for (auto& [k, s] : mats) {
      core.storage.push_back(std::move(s));
      core.by_block[k].push_back({var, &core.storage.back()});
    }
  }
  if (feasibility) {
    // t with C - sum A >= t I and t <= 1.
    const std::size_t var = kept.size();
    bvec.push_back(1.0);
    for (std::size_t k = 0; k < prob.blocks.size(); ++k) {
      SymmetricSparse id;
      id.dim = prob.blocks[k].dim;
      for (std::size_t i = 0; i < id.dim; ++i) id.entries.push_back({i, i, 1.0});
      core.storage.push_back(std::move(id));
      core.by_block[k].push_back({var, &core.storage.back()});
    }
    const std::size_t last = prob.blocks.size();
    core.dims[last] = 1;
    core.C[last] = RowMat::Ones(1, 1);
    SymmetricSparse one;
    one.dim = 1;
    one.entries.push_back({0, 0, 1.0});
    core.storage.push_back(std::move(one));
    core.by_block[last].push_back({var, &core.storage.back()});
  }
  core.b = Eigen::Map<Eigen::VectorXd>(bvec.data(), static_cast<Eigen::Index>(bvec.size()));

  if (unbounded) {
    sol.status = SolveStatus::unbounded;
    sol.message = "objective depends on a variable no constraint bounds";
    sol.values.assign(nv, 0.0);
    return sol;
  }

  const DenseSdpResult r = solve_core(core, options);
  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.relative_gap = r.relative_gap;
  sol.primal_residual = r.primal_residual;
  sol.dual_residual = r.dual_residual;

  Eigen::VectorXd zfull = Eigen::VectorXd::Zero(nz);
  for (std::size_t i = 0; i < kept.size(); ++i) zfull[kept[i]] = r.y.size() > Eigen::Index(i) ? r.y[i] : 0.0;
  Eigen::VectorXd y = red.y0;
  if (red.is_selection) {
    for (std::size_t k = 0; k < nz; ++k) y[red.selection[k]] += zfull[k];
  } else if (nz > 0) {
    y += red.N * zfull;
  }
  sol.values.assign(y.data(), y.data() + nv);

  if (feasibility) {
    const double t = r.y.size() > 0 ? r.y[r.y.size() - 1] : 0.0;
    sol.objective = t;
    sol.feasible = r.status == SolveStatus::optimal && t >= options.feasibility_threshold;
  } else {
    double obj = prob.objective_constant;
    for (std::size_t v = 0; v < nv; ++v) obj += prob.objective[v] * sol.values[v];
    sol.objective = obj;
    sol.feasible = r.status == SolveStatus::optimal;
  }
  for (const auto& blk : prob.blocks) {
    const RowMat m = block_value(blk, sol.values);
    if (m.rows() == 0) {
      sol.block_min_eigenvalues.push_back(0.0);
      continue;
    }
    Eigen::SelfAdjointEigenSolver<RowMat> es(m, Eigen::EigenvaluesOnly);
    sol.block_min_eigenvalues.push_back(es.eigenvalues().minCoeff());
  }
  return sol;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  for (const auto& blk : problem.blocks) {
    if (blk.dim > options.max_block_dimension) {
      throw SolverError("block '" + blk.label + "' has dimension " + std::to_string(blk.dim) +
                        ", above the embedded solver limit of " + std::to_string(options.max_block_dimension) +
                        "; export it with 'generate --format sdpa' for an external solver");
    }
  }
  SdpSolution sol;
  if (problem.sense == Sense::feasibility) {
    sol = run(problem, options, true);
  } else {
    sol = run(problem, options, false);
    if (sol.status == SolveStatus::iteration_limit || sol.status == SolveStatus::numerical_failure ||
        sol.status == SolveStatus::infeasible) {
      // Settle feasibility separately; the slack problem is always strictly
      // feasible.
      const SdpSolution feas = run(problem, options, true);
      if (feas.status == SolveStatus::optimal && feas.objective < options.feasibility_threshold) {
        sol.status = SolveStatus::infeasible;
        sol.message = "relaxation infeasible (min eigenvalue bound " + std::to_string(feas.objective) + ")";
      } else if (sol.status == SolveStatus::infeasible) {
        sol.status = SolveStatus::numerical_failure;
        sol.message = "infeasibility not confirmed";
      }
      sol.feasible = false;
    }
  }

  std::size_t nr = 0, ni = 0;
  for (const auto& v : problem.variables) {
    (v.imaginary ? ni : nr) = std::max(v.imaginary ? ni : nr, v.slot + 1);
  }
  sol.real_slots.assign(nr, 0.0);
  sol.imag_slots.assign(ni, 0.0);
  for (std::size_t v = 0; v < problem.variables.size() && v < sol.values.size(); ++v) {
    const auto& var = problem.variables[v];
    (var.imaginary ? sol.imag_slots : sol.real_slots)[var.slot] = sol.values[v];
  }
  if (sol.message.empty()) sol.message = to_string(sol.status);
  return sol;
}

}  // namespace ncr
