// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "ncrelax/matrix.hpp"
#include "ncrelax/parallel.hpp"

namespace ncr {

namespace {

std::string dict_key(std::size_t L, const WordFilter& filter) {
  return std::to_string(L) + "|" + filter.tag;
}

}  // namespace

MatrixSystem::MatrixSystem(std::shared_ptr<const Context> ctx, double zero_tolerance)
    : ctx_(std::move(ctx)), registry_(ctx_.get(), zero_tolerance) {}

const Context& MatrixSystem::context() const {
  if (!ctx_) throw std::logic_error("scenario has no operator context");
  return *ctx_;
}

const Dictionary& MatrixSystem::dictionary(std::size_t L, const WordFilter& filter) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return dictionary_locked(L, filter);
}

const Dictionary& MatrixSystem::dictionary_locked(std::size_t L, const WordFilter& filter) {
  const std::string key = dict_key(L, filter);
  auto it = dictionaries_.find(key);
  if (it != dictionaries_.end()) return it->second;
  Dictionary d = generate_dictionary(context(), L, filter);
  conjugates_[key] = conjugate_dictionary(context(), d);
  return dictionaries_.emplace(key, std::move(d)).first->second;
}

MatrixSystem::MatrixHandle MatrixSystem::generate(const std::string& key, MatrixKind kind, std::size_t L,
                                                  const WordFilter& filter, const Generator& gen) {
  auto cached = cache_.find(key);
  if (cached != cache_.end()) return cached->second;

  const Dictionary& dict = dictionary_locked(L, filter);
  const std::size_t d = dict.size();

  // Words are formed concurrently by row; registration below is serial and in
  // row-major order so symbol ids never depend on the worker count.
  std::vector<TermList> raw(d * d);
  parallel_for(d, [&](std::size_t i) {
    for (std::size_t j = 0; j < d; ++j) gen(i, j, raw[i * d + j]);
  });

  auto m = std::make_shared<SymbolicMatrix>(d, kind);
  m->set_level(L);
  for (std::size_t idx = 0; idx < raw.size(); ++idx) {
    std::vector<Monomial> terms;
    terms.reserve(raw[idx].terms.size());
    for (auto& [c, w] : raw[idx].terms) {
      if (w.zero) continue;
      Monomial mono = registry_.register_word(w);
      mono.coefficient *= c;
      terms.push_back(mono);
    }
    m->at(idx / d, idx % d) = registry_.normalize(std::move(terms));
  }
  m->set_hermitian(kind == MatrixKind::moment || m->structurally_hermitian(registry_));
  cache_.emplace(key, m);
  return m;
}

MatrixSystem::MatrixHandle MatrixSystem::moment_matrix(std::size_t L, const WordFilter& filter) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  const Dictionary& dict = dictionary_locked(L, filter);
  const auto& conj = conjugates_.at(dict_key(L, filter));
  const Context& ctx = context();
  auto m = generate("moment|" + dict_key(L, filter), MatrixKind::moment, L, filter,
                    [&](std::size_t i, std::size_t j, TermList& out) {
                      out.terms.emplace_back(1.0, ctx.multiply(conj[i], dict[j]));
                    });
  return m;
}

MatrixSystem::MatrixHandle MatrixSystem::localizing_matrix(const OpPolynomial& v, std::size_t L,
                                                           const WordFilter& filter) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  const Context& ctx = context();
  OpPolynomial poly = simplify(ctx, v);
  const Dictionary& dict = dictionary_locked(L, filter);
  const auto& conj = conjugates_.at(dict_key(L, filter));
  return generate("localizing|" + dict_key(L, filter) + "|" + fingerprint(poly), MatrixKind::localizing, L,
                  filter, [&](std::size_t i, std::size_t j, TermList& out) {
                    for (const auto& t : poly.terms) {
                      OperatorWord left = ctx.multiply(conj[i], t.word);
                      out.terms.emplace_back(t.coefficient, ctx.multiply(left, dict[j]));
                    }
                  });
}

MatrixSystem::MatrixHandle MatrixSystem::commutator_matrix(const OpPolynomial& k, std::size_t L,
                                                           const WordFilter& filter) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  const Context& ctx = context();
  OpPolynomial poly = simplify(ctx, k);
  const Dictionary& dict = dictionary_locked(L, filter);
  const auto& conj = conjugates_.at(dict_key(L, filter));
  return generate("commutator|" + dict_key(L, filter) + "|" + fingerprint(poly), MatrixKind::commutator, L,
                  filter, [&](std::size_t i, std::size_t j, TermList& out) {
                    OperatorWord x = ctx.multiply(conj[i], dict[j]);
                    for (const auto& t : poly.terms) {
                      out.terms.emplace_back(t.coefficient, ctx.multiply(x, t.word));
                      out.terms.emplace_back(-t.coefficient, ctx.multiply(t.word, x));
                    }
                  });
}

MatrixSystem::MatrixHandle MatrixSystem::anticommutator_matrix(const OpPolynomial& k, std::size_t L,
                                                               const WordFilter& filter) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  const Context& ctx = context();
  OpPolynomial poly = simplify(ctx, k);
  const Dictionary& dict = dictionary_locked(L, filter);
  const auto& conj = conjugates_.at(dict_key(L, filter));
  return generate("anticommutator|" + dict_key(L, filter) + "|" + fingerprint(poly), MatrixKind::anticommutator,
                  L, filter, [&](std::size_t i, std::size_t j, TermList& out) {
                    OperatorWord x = ctx.multiply(conj[i], dict[j]);
                    for (const auto& t : poly.terms) {
                      out.terms.emplace_back(t.coefficient, ctx.multiply(x, t.word));
                      out.terms.emplace_back(t.coefficient, ctx.multiply(t.word, x));
                    }
                  });
}

MatrixSystem::MatrixHandle MatrixSystem::extended_matrix(std::size_t L, const std::vector<std::size_t>& extension,
                                                         const WordFilter& filter) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  if (extension.empty()) return moment_matrix(L, filter);
  std::string key = "extended|" + dict_key(L, filter) + "|";
  for (std::size_t s : extension) {
    if (s < 2 || s >= registry_.size() || !registry_[s].defined) {
      throw std::invalid_argument("extension symbol " + std::to_string(s) + " is not registered");
    }
    if (!registry_[s].hermitian) throw std::invalid_argument("extension symbols must be real");
    key += std::to_string(s) + ",";
  }
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  MatrixHandle base = moment_matrix(L, filter);
  const Dictionary& dict = dictionary_locked(L, filter);
  const std::size_t d = dict.size();
  const std::size_t n = d + extension.size();

  auto product = [&](const Monomial& m, std::size_t s) -> Polynomial {
    if (m.id == 0) return {};
    if (m.conjugated || !registry_[m.id].hermitian) {
      throw std::invalid_argument("extended matrices need real border moments");
    }
    std::size_t id = registry_.register_composite({m.id, s});
    return registry_.normalize(std::vector<Monomial>{Monomial{id, false, m.coefficient}});
  };

  auto m = std::make_shared<SymbolicMatrix>(n, MatrixKind::extended);
  m->set_level(L);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m->at(i, j) = base->at(i, j);
  }
  // Border (i, d+k) holds <w_i^dagger><s_k>; registration in row-major order.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < d && j < d) continue;
      if (i >= d && j >= d) {
        std::size_t id = registry_.register_composite({extension[i - d], extension[j - d]});
        m->at(i, j) = registry_.normalize(std::vector<Monomial>{Monomial{id, false, 1.0}});
      } else if (j >= d) {
        const Polynomial& p = base->at(i, 0);
        m->at(i, j) = p.terms.empty() ? Polynomial{} : product(p.terms.front(), extension[j - d]);
      } else {
        const Polynomial& p = base->at(0, j);
        m->at(i, j) = p.terms.empty() ? Polynomial{} : product(p.terms.front(), extension[i - d]);
      }
    }
  }
  m->set_hermitian(true);
  cache_.emplace(key, m);
  return m;
}

Polynomial MatrixSystem::moment(const OperatorWord& w) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return registry_.normalize(std::vector<Monomial>{registry_.register_word(w)});
}

Polynomial MatrixSystem::expectation(const OpPolynomial& p) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return ncr::expectation(registry_, p);
}

std::size_t MatrixSystem::cache_size() const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return cache_.size();
}

}  // namespace ncr
