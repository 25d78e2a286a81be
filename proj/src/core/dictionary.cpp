// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include "ncrelax/context.hpp"

namespace ncr {

namespace {

struct ShortlexLess {
  bool operator()(const std::vector<oper_t>& a, const std::vector<oper_t>& b) const {
    return shortlex_compare(std::span<const oper_t>(a), std::span<const oper_t>(b)) < 0;
  }
};

}  // namespace

Dictionary generate_dictionary(const Context& ctx, std::size_t L, const WordFilter& filter) {
  Dictionary dict;
  dict.context = &ctx;
  dict.max_length = L;
  dict.filter_tag = filter.tag;

  std::vector<std::vector<oper_t>> all{{}};
  std::vector<std::vector<oper_t>> frontier{{}};
  for (std::size_t len = 1; len <= L; ++len) {
    std::set<std::vector<oper_t>, ShortlexLess> next;
    for (const auto& base : frontier) {
      for (oper_t op = 0; op < ctx.operator_count(); ++op) {
        std::vector<oper_t> raw = base;
        raw.push_back(op);
        OperatorWord w = ctx.simplify(std::move(raw));
        if (w.zero || w.size() != len) continue;
        next.insert(std::move(w.ops));
      }
    }
    frontier.assign(next.begin(), next.end());
    if (frontier.empty()) break;
    all.insert(all.end(), frontier.begin(), frontier.end());
  }

  for (auto& ops : all) {
    OperatorWord w(std::move(ops));
    if (filter.active() && !w.ops.empty() && !filter.admit(w)) continue;
    dict.words.push_back(std::move(w));
  }
  return dict;
}

std::vector<OperatorWord> conjugate_dictionary(const Context& ctx, const Dictionary& dict) {
  std::vector<OperatorWord> out;
  out.reserve(dict.size());
  for (const auto& w : dict.words) out.push_back(ctx.conjugate(w));
  return out;
}

}  // namespace ncr
