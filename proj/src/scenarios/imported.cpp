// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include "ncrelax/imported.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>

namespace ncr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Prefer the shortest text that reproduces v exactly.
  for (int p = 1; p < 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    double back = 0.0;
    if (parse_real(buf, back) && back == v) {
      s = buf;
      break;
    }
  }
  return s;
}

}  // namespace

MomentParseError::MomentParseError(const std::string& text, std::size_t position, const std::string& what)
    : std::invalid_argument("cannot parse moment '" + text + "' at position " + std::to_string(position) + ": " +
                            what),
      position_(position) {}

MomentToken parse_moment_string(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw MomentParseError(raw, 0, "empty string");
  MomentToken t;
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-') {
    negative = true;
    ++pos;
  }
  if (pos == text.size()) throw MomentParseError(text, pos, "missing value after '-'");

  const std::string body = text.substr(pos);
  const auto hash = body.find('#');
  if (hash == std::string::npos && body.find('.') != std::string::npos) {
    double v = 0.0;
    if (body.back() == '*' || !parse_real(body, v)) throw MomentParseError(text, pos, "malformed constant");
    t.constant = true;
    t.id = 1;
    t.coefficient = negative ? -v : v;
    return t;
  }

  std::size_t id_start = 0;
  if (hash != std::string::npos) {
    if (hash > 0) {
      double v = 0.0;
      if (!parse_real(body.substr(0, hash), v)) throw MomentParseError(text, pos, "malformed prefactor");
      t.coefficient = v;
    }
    id_start = hash + 1;
  }
  std::size_t id_end = body.size();
  if (id_end > id_start && body.back() == '*') {
    t.conjugated = true;
    --id_end;
  }
  if (id_end == id_start) throw MomentParseError(text, pos + id_start, "missing symbol number");
  std::size_t id = 0;
  const char* first = body.data() + id_start;
  const char* last = body.data() + id_end;
  auto [ptr, ec] = std::from_chars(first, last, id);
  if (ec != std::errc() || ptr != last) {
    throw MomentParseError(text, pos + id_start + static_cast<std::size_t>(ptr - first), "expected a symbol number");
  }
  t.id = id;
  if (negative) t.coefficient = -t.coefficient;
  return t;
}

std::string render_token(const MomentToken& t) {
  if (t.constant) {
    std::string s = real_text(t.coefficient);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
  }
  std::string s;
  if (t.coefficient == 1.0) {
  } else if (t.coefficient == -1.0) {
    s = "-";
  } else {
    s = real_text(t.coefficient) + "#";
  }
  s += std::to_string(t.id);
  if (t.conjugated) s += "*";
  return s;
}

ImportedScenario::ImportedScenario(bool real, double zero_tolerance)
    : real_(real), system_(nullptr, zero_tolerance) {}

void ImportedScenario::declare(const MomentToken& t) {
  if (t.constant || t.id < 2) return;
  registry().register_named(t.id, "w" + std::to_string(t.id), real_);
}

Polynomial ImportedScenario::to_polynomial(const MomentToken& t) {
  if (!t.constant && t.id == 0) return {};
  const std::size_t id = t.constant ? 1 : t.id;
  return registry().normalize(std::vector<Monomial>{Monomial{id, t.conjugated && id > 1, t.coefficient}});
}

SymbolicMatrix ImportedScenario::import_matrix(const std::vector<std::vector<std::string>>& grid, ImportMode mode) {
  const std::size_t n = grid.size();
  for (const auto& row : grid) {
    if (row.size() != n) throw std::invalid_argument("imported matrix must be square");
  }
  std::vector<MomentToken> tok(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tok[i * n + j] = parse_moment_string(grid[i][j]);
      declare(tok[i * n + j]);
    }
  }

  auto where = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  auto value_key = [](const MomentToken& t) { return t.constant ? std::size_t{1} : t.id; };

  if (mode != ImportMode::general) {
    const bool herm = mode == ImportMode::hermitian || real_;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const MomentToken& a = tok[i * n + j];
        const MomentToken& b = tok[j * n + i];
        const std::size_t ka = value_key(a);
        const std::size_t kb = value_key(b);
        if (ka == 0 && kb == 0) continue;
        if (ka != kb || a.coefficient != b.coefficient) {
          throw std::invalid_argument("entries " + where(i, j) + " and " + where(j, i) + " are not " +
                                      (herm ? "conjugate" : "equal"));
        }
        if (ka <= 1) continue;
        if (!herm) {
          if (a.conjugated != b.conjugated) {
            throw std::invalid_argument("entries " + where(i, j) + " and " + where(j, i) + " are not equal");
          }
          continue;
        }
        // b must equal conj(a): either the starred twin, or the same symbol,
        // which is then its own conjugate.
        if (i == j || a.conjugated == b.conjugated) registry().set_hermitian(ka, true);
      }
    }
  }

  SymbolicMatrix m(n, MatrixKind::imported);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = to_polynomial(tok[i * n + j]);
  }
  m.set_hermitian(m.structurally_hermitian(registry()));
  return m;
}

Polynomial ImportedScenario::import_polynomial(const std::vector<std::string>& tokens) {
  Polynomial out;
  for (const auto& s : tokens) {
    MomentToken t = parse_moment_string(s);
    declare(t);
    out = registry().add(out, to_polynomial(t));
  }
  return out;
}

Polynomial ImportedScenario::multiply(const Polynomial&, const Polynomial&) const {
  throw UnsupportedOperation("imported scenarios have no operator relations; moments cannot be multiplied");
}

std::vector<std::vector<std::string>> read_grid(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      std::string cell = trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = trim(cell.substr(1, cell.size() - 2));
      row.push_back(cell);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ncr
