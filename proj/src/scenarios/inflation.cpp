// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ncrelax/locality.hpp"

namespace ncr {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t ops_per_variant(const Observable& o) { return o.outcomes == 0 ? 1 : o.outcomes - 1; }

std::size_t count_ops(const NetworkSpec& spec) {
  if (spec.observables.empty()) throw std::invalid_argument("network has no observables");
  if (spec.level == 0) throw std::invalid_argument("inflation level must be at least 1");
  std::vector<std::size_t> degree(spec.observables.size(), 0);
  for (const auto& src : spec.sources) {
    if (src.empty()) throw std::invalid_argument("source with no observables");
    for (std::size_t o : src) {
      if (o >= spec.observables.size()) throw std::invalid_argument("source refers to unknown observable");
      ++degree[o];
    }
  }
  std::size_t n = 0;
  for (std::size_t o = 0; o < spec.observables.size(); ++o) {
    if (degree[o] == 0) throw std::invalid_argument("observable " + spec.observables[o].name + " has no source");
    if (spec.observables[o].outcomes == 1) throw std::invalid_argument("observables need at least two outcomes");
    n += ipow(spec.level, degree[o]) * ops_per_variant(spec.observables[o]);
  }
  return n;
}

}  // namespace

InflationContext::InflationContext(NetworkSpec spec) : Context(count_ops(spec)), spec_(std::move(spec)) {
  const std::size_t N = spec_.level;
  attached_.resize(spec_.observables.size());
  for (std::size_t s = 0; s < spec_.sources.size(); ++s) {
    for (std::size_t o : spec_.sources[s]) {
      if (std::find(attached_[o].begin(), attached_[o].end(), s) == attached_[o].end()) attached_[o].push_back(s);
    }
  }

  oper_t next = 0;
  for (std::size_t o = 0; o < spec_.observables.size(); ++o) {
    first_variant_.push_back(variants_.size());
    const std::size_t m = attached_[o].size();
    const std::size_t count = ipow(N, m);
    for (std::size_t flat = 0; flat < count; ++flat) {
      Variant v;
      v.observable = o;
      v.copies.resize(m);
      std::size_t rest = flat;
      for (std::size_t k = m; k-- > 0;) {
        v.copies[k] = rest % N;
        rest /= N;
      }
      v.first_op = next;
      for (std::size_t out = 0; out < ops_per_variant(spec_.observables[o]); ++out) {
        info_.push_back({o, variants_.size(), out});
        ++next;
      }
      variants_.push_back(std::move(v));
    }
  }

  // Every tuple of per-source permutations of the copy labels.
  std::vector<std::size_t> ident(N);
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<std::vector<std::size_t>> sym;
  std::vector<std::size_t> p = ident;
  do {
    sym.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::size_t total = 1;
  for (std::size_t s = 0; s < spec_.sources.size(); ++s) {
    total *= sym.size();
    if (total > 100000) throw std::invalid_argument("inflation symmetry group too large");
  }
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<std::vector<std::size_t>> tuple(spec_.sources.size());
    std::size_t rest = flat;
    for (std::size_t s = spec_.sources.size(); s-- > 0;) {
      tuple[s] = sym[rest % sym.size()];
      rest /= sym.size();
    }
    source_perms_.push_back(std::move(tuple));
  }
}

std::size_t InflationContext::variant_index(std::size_t observable, const std::vector<std::size_t>& copies) const {
  const std::size_t m = attached_.at(observable).size();
  if (!copies.empty() && copies.size() != m) throw std::invalid_argument("copy tuple has the wrong length");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t c = copies.empty() ? 0 : copies[k];
    if (c >= spec_.level) throw std::out_of_range("copy index exceeds the inflation level");
    flat = flat * spec_.level + c;
  }
  return first_variant_[observable] + flat;
}

std::vector<oper_t> InflationContext::variant_ops(std::size_t variant) const {
  const Variant& v = variants_.at(variant);
  std::vector<oper_t> out;
  for (std::size_t k = 0; k < ops_per_variant(spec_.observables[v.observable]); ++k) {
    out.push_back(v.first_op + static_cast<oper_t>(k));
  }
  return out;
}

std::string InflationContext::operator_name(oper_t op) const {
  const OpInfo& i = info_.at(op);
  const Variant& v = variants_[i.variant];
  const Observable& obs = spec_.observables[i.observable];
  std::string name = obs.name;
  if (spec_.level > 1) {
    name += "_";
    for (std::size_t k = 0; k < v.copies.size(); ++k) {
      if (k && spec_.level > 9) name += ",";
      name += std::to_string(v.copies[k] + 1);
    }
  }
  if (obs.outcomes > 2) name += "." + std::to_string(i.outcome);
  return name;
}

void InflationContext::simplify_in_place(std::vector<oper_t>& ops, Phase&, bool& zero) const {
  std::sort(ops.begin(), ops.end());
  std::vector<oper_t> out;
  out.reserve(ops.size());
  for (oper_t op : ops) {
    if (!out.empty()) {
      const OpInfo& prev = info_[out.back()];
      const OpInfo& cur = info_[op];
      const bool projective = spec_.observables[cur.observable].outcomes != 0;
      if (projective && out.back() == op) continue;
      if (projective && prev.variant == cur.variant) {
        zero = true;
        ops.clear();
        return;
      }
    }
    out.push_back(op);
  }
  ops = std::move(out);
}

oper_t InflationContext::relabel(oper_t op, const std::vector<std::vector<std::size_t>>& perms) const {
  const OpInfo& i = info_[op];
  const Variant& v = variants_[i.variant];
  const auto& src = attached_[i.observable];
  std::vector<std::size_t> copies(v.copies.size());
  for (std::size_t k = 0; k < copies.size(); ++k) copies[k] = perms[src[k]][v.copies[k]];
  return variants_[variant_index(i.observable, copies)].first_op + static_cast<oper_t>(i.outcome);
}

OperatorWord InflationContext::canonical_moment(const OperatorWord& w) const {
  if (w.zero || w.ops.empty() || spec_.level == 1) return w;
  OperatorWord best = w;
  for (const auto& perms : source_perms_) {
    std::vector<oper_t> img;
    img.reserve(w.ops.size());
    for (oper_t op : w.ops) img.push_back(relabel(op, perms));
    std::sort(img.begin(), img.end());
    if (shortlex_compare(std::span<const oper_t>(img), std::span<const oper_t>(best.ops)) < 0) best.ops = img;
  }
  return best;
}

bool InflationContext::shares_source(oper_t a, oper_t b) const {
  const Variant& va = variants_[info_[a].variant];
  const Variant& vb = variants_[info_[b].variant];
  const auto& sa = attached_[va.observable];
  const auto& sb = attached_[vb.observable];
  for (std::size_t i = 0; i < sa.size(); ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (sa[i] == sb[j] && va.copies[i] == vb.copies[j]) return true;
    }
  }
  return false;
}

std::vector<OperatorWord> InflationContext::factorize(const OperatorWord& w) const {
  if (w.zero || w.ops.size() <= 1) return {w};
  const std::size_t n = w.ops.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (shares_source(w.ops[i], w.ops[j])) parent[find(i)] = find(j);
    }
  }
  std::vector<std::size_t> roots;
  std::vector<std::vector<oper_t>> parts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      parts.push_back({w.ops[i]});
    } else {
      parts[static_cast<std::size_t>(it - roots.begin())].push_back(w.ops[i]);
    }
  }
  if (parts.size() == 1) return {w};
  std::vector<OperatorWord> out;
  for (auto& p : parts) out.push_back(canonical_moment(OperatorWord(std::move(p))));
  return out;
}

MomentRulebook distribution_rulebook(MatrixSystem& system, const std::vector<double>& probabilities) {
  const auto* ctx = dynamic_cast<const InflationContext*>(&system.context());
  if (!ctx) throw std::invalid_argument("distribution rulebooks need an inflation scenario");
  SymbolRegistry& reg = system.registry();
  MomentRulebook book(reg);
  if (probabilities.empty()) return book;

  std::vector<std::vector<oper_t>> groups;
  for (std::size_t o = 0; o < ctx->spec().observables.size(); ++o) {
    if (ctx->spec().observables[o].outcomes == 0) continue;
    groups.push_back(ctx->variant_ops(ctx->primary_variant(o)));
  }
  for (const auto& p : probability_polynomials(*ctx, groups, probabilities)) {
    book.add_constraint(system.expectation(p));
  }
  book.complete();

  std::map<std::size_t, cplx> known;
  for (const auto& [id, rule] : book.rules()) {
    if (!reg.is_scalar(rule.rhs)) continue;
    known[id] = rule.rhs.empty() ? cplx{} : rule.rhs.terms.front().coefficient;
  }

  // A product with a factor of known value equals that value times the
  // product of the remaining factors.
  const std::size_t registered = reg.size();
  for (std::size_t id = 2; id < registered; ++id) {
    const SymbolEntry& e = reg[id];
    if (!e.defined || !e.is_composite()) continue;
    cplx value{1.0, 0.0};
    std::vector<std::size_t> rest;
    bool hit = false;
    for (std::size_t f : e.factors) {
      auto it = known.find(f);
      if (it == known.end()) {
        rest.push_back(f);
      } else {
        value *= it->second;
        hit = true;
      }
    }
    if (!hit) continue;
    const std::size_t target = reg.register_composite(rest);
    std::vector<Monomial> terms{Monomial{id, false, 1.0}};
    if (value != cplx{}) terms.push_back(Monomial{target, false, -value});
    book.add_constraint(reg.normalize(std::move(terms)));
  }
  book.complete();
  return book;
}

}  // namespace ncr
