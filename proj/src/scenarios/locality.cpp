// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/locality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ncr {

namespace {

std::size_t count_ops(const LocalitySpec& spec) {
  if (spec.parties.empty()) throw std::invalid_argument("locality scenario needs at least one party");
  std::size_t n = 0;
  for (const auto& p : spec.parties) {
    if (p.measurements.empty()) throw std::invalid_argument("party " + p.name + " has no measurements");
    for (const auto& m : p.measurements) {
      if (m.outcomes < 2) throw std::invalid_argument("measurements need at least two outcomes");
      n += m.outcomes - 1;
    }
  }
  return n;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Row-major strides of a tensor shape.
std::vector<std::size_t> strides(const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> s(shape.size(), 1);
  for (std::size_t k = shape.size(); k-- > 1;) s[k - 1] = s[k] * shape[k];
  return s;
}

}  // namespace

LocalitySpec LocalitySpec::uniform(std::size_t parties, std::size_t measurements, std::size_t outcomes) {
  if (parties == 0 || parties > 26) throw std::invalid_argument("party count must be between 1 and 26");
  LocalitySpec spec;
  for (std::size_t p = 0; p < parties; ++p) {
    Party party;
    party.name = std::string(1, static_cast<char>('A' + p));
    for (std::size_t m = 0; m < measurements; ++m) party.measurements.push_back({std::to_string(m), outcomes});
    spec.parties.push_back(std::move(party));
  }
  return spec;
}

Tensor Tensor::matrix(const std::vector<std::vector<double>>& rows) {
  Tensor t;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  t.shape = {rows.size(), cols};
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged tensor rows");
    t.data.insert(t.data.end(), r.begin(), r.end());
  }
  return t;
}

std::size_t Tensor::size() const {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

LocalityContext::LocalityContext(LocalitySpec spec) : Context(count_ops(spec)), spec_(std::move(spec)) {
  first_op_.resize(spec_.parties.size());
  oper_t next = 0;
  for (std::size_t p = 0; p < spec_.parties.size(); ++p) {
    const Party& party = spec_.parties[p];
    for (std::size_t m = 0; m < party.measurements.size(); ++m) {
      first_op_[p].push_back(next);
      const Measurement& mm = party.measurements[m];
      for (std::size_t o = 0; o + 1 < mm.outcomes; ++o) {
        info_.push_back({p, m, o});
        std::string name = lower(party.name) + std::to_string(m);
        if (mm.outcomes > 2) name += "." + std::to_string(o);
        names_.push_back(std::move(name));
        ++next;
      }
    }
  }
}

oper_t LocalityContext::op(std::size_t party, std::size_t measurement, std::size_t outcome) const {
  const Measurement& m = spec_.parties.at(party).measurements.at(measurement);
  if (outcome + 1 >= m.outcomes) throw std::out_of_range("final outcomes have no operator");
  return first_op_[party][measurement] + static_cast<oper_t>(outcome);
}

std::vector<oper_t> LocalityContext::measurement_ops(std::size_t party, std::size_t measurement) const {
  const Measurement& m = spec_.parties.at(party).measurements.at(measurement);
  std::vector<oper_t> out;
  for (std::size_t o = 0; o + 1 < m.outcomes; ++o) out.push_back(first_op_[party][measurement] + static_cast<oper_t>(o));
  return out;
}

std::vector<oper_t> LocalityContext::party_ops(std::size_t party) const {
  std::vector<oper_t> out;
  for (std::size_t m = 0; m < spec_.parties.at(party).measurements.size(); ++m) {
    auto ops = measurement_ops(party, m);
    out.insert(out.end(), ops.begin(), ops.end());
  }
  return out;
}

std::string LocalityContext::operator_name(oper_t op) const { return names_.at(op); }

void LocalityContext::simplify_in_place(std::vector<oper_t>& ops, Phase&, bool& zero) const {
  std::stable_sort(ops.begin(), ops.end(),
                   [this](oper_t a, oper_t b) { return info_[a].party < info_[b].party; });
  std::vector<oper_t> out;
  out.reserve(ops.size());
  for (oper_t op : ops) {
    if (!out.empty()) {
      const OpInfo& top = info_[out.back()];
      const OpInfo& cur = info_[op];
      if (out.back() == op) continue;
      if (top.party == cur.party && top.measurement == cur.measurement) {
        zero = true;
        ops.clear();
        return;
      }
    }
    out.push_back(op);
  }
  ops = std::move(out);
}

OpPolynomial cg_polynomial(const LocalityContext& ctx, const Tensor& grid) {
  const std::size_t n = ctx.party_count();
  if (grid.shape.size() != n) throw std::invalid_argument("Collins-Gisin tensor needs one axis per party");
  std::vector<std::vector<oper_t>> axis(n);
  for (std::size_t p = 0; p < n; ++p) {
    axis[p] = ctx.party_ops(p);
    if (grid.shape[p] != axis[p].size() + 1) {
      throw std::invalid_argument("Collins-Gisin axis " + std::to_string(p) + " should have " +
                                  std::to_string(axis[p].size() + 1) + " entries");
    }
  }
  if (grid.data.size() != grid.size()) throw std::invalid_argument("tensor data does not match its shape");

  const auto st = strides(grid.shape);
  OpPolynomial out;
  for (std::size_t flat = 0; flat < grid.data.size(); ++flat) {
    const double c = grid.data[flat];
    if (c == 0.0) continue;
    std::vector<oper_t> raw;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t idx = (flat / st[p]) % grid.shape[p];
      if (idx > 0) raw.push_back(axis[p][idx - 1]);
    }
    out.terms.push_back({c, OperatorWord(std::move(raw))});
  }
  return simplify(ctx, out);
}

OpPolynomial fc_polynomial(const LocalityContext& ctx, const Tensor& grid) {
  const std::size_t n = ctx.party_count();
  if (grid.shape.size() != n) throw std::invalid_argument("full-correlator tensor needs one axis per party");
  for (std::size_t p = 0; p < n; ++p) {
    const Party& party = ctx.spec().parties[p];
    for (const auto& m : party.measurements) {
      if (m.outcomes != 2) throw std::invalid_argument("full-correlator form needs binary measurements");
    }
    if (grid.shape[p] != party.measurements.size() + 1) {
      throw std::invalid_argument("full-correlator axis " + std::to_string(p) + " should have " +
                                  std::to_string(party.measurements.size() + 1) + " entries");
    }
  }
  if (grid.data.size() != grid.size()) throw std::invalid_argument("tensor data does not match its shape");

  const auto st = strides(grid.shape);
  OpPolynomial out;
  for (std::size_t flat = 0; flat < grid.data.size(); ++flat) {
    const double c = grid.data[flat];
    if (c == 0.0) continue;
    OpPolynomial term = OpPolynomial::identity(c);
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t idx = (flat / st[p]) % grid.shape[p];
      if (idx == 0) continue;
      OpPolynomial obs;
      obs.terms.push_back({2.0, OperatorWord({ctx.op(p, idx - 1, 0)})});
      obs.terms.push_back({-1.0, OperatorWord{}});
      term = multiply(ctx, term, obs);
    }
    out = add(ctx, out, term);
  }
  return simplify(ctx, out);
}

OpPolynomial correlator(const LocalityContext& ctx, std::size_t party_a, std::size_t measurement_a,
                        std::size_t party_b, std::size_t measurement_b) {
  if (party_a == party_b) throw std::invalid_argument("correlator needs measurements of different parties");
  auto observable = [&](std::size_t p, std::size_t m) {
    if (ctx.spec().parties.at(p).measurements.at(m).outcomes != 2) {
      throw std::invalid_argument("correlator needs binary measurements");
    }
    OpPolynomial obs;
    obs.terms.push_back({2.0, OperatorWord({ctx.op(p, m, 0)})});
    obs.terms.push_back({-1.0, OperatorWord{}});
    return obs;
  };
  return multiply(ctx, observable(party_a, measurement_a), observable(party_b, measurement_b));
}

std::vector<OpPolynomial> probability_polynomials(const Context& ctx, const std::vector<std::vector<oper_t>>& groups,
                                                  const std::vector<double>& probabilities) {
  std::size_t total = 1;
  for (const auto& g : groups) total *= g.size() + 1;
  if (probabilities.size() != total) {
    throw std::invalid_argument("expected " + std::to_string(total) + " probabilities, got " +
                                std::to_string(probabilities.size()));
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < -1e-12) throw std::invalid_argument("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("probabilities do not sum to one");

  // Effect of each outcome; the final one is 1 minus the rest.
  std::vector<std::vector<OpPolynomial>> effects(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    OpPolynomial last = OpPolynomial::identity();
    for (oper_t op : groups[k]) {
      effects[k].push_back(OpPolynomial::of(OperatorWord({op})));
      last.terms.push_back({-1.0, OperatorWord({op})});
    }
    effects[k].push_back(simplify(ctx, last));
  }

  std::vector<OpPolynomial> out;
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    OpPolynomial e = OpPolynomial::identity();
    std::size_t rest = flat;
    std::vector<std::size_t> outcome(groups.size());
    for (std::size_t k = groups.size(); k-- > 0;) {
      outcome[k] = rest % (groups[k].size() + 1);
      rest /= groups[k].size() + 1;
    }
    for (std::size_t k = 0; k < groups.size(); ++k) e = multiply(ctx, e, effects[k][outcome[k]]);
    out.push_back(add(ctx, e, OpPolynomial::identity(-probabilities[flat])));
  }
  return out;
}

std::vector<OpPolynomial> probability_polynomials(const LocalityContext& ctx,
                                                  const std::vector<std::pair<std::size_t, std::size_t>>& joint,
                                                  const std::vector<double>& probabilities) {
  std::vector<std::vector<oper_t>> groups;
  for (std::size_t k = 0; k < joint.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (joint[j].first == joint[k].first) throw std::invalid_argument("joint measurements must be on distinct parties");
    }
    groups.push_back(ctx.measurement_ops(joint[k].first, joint[k].second));
  }
  return probability_polynomials(ctx, groups, probabilities);
}

}  // namespace ncr
