// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ncrelax/cli.hpp"

namespace ncr::cli {

using json = nlohmann::ordered_json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + message), path_(std::move(path)) {}

namespace {

const std::set<std::string> kKinds = {"locality", "algebraic", "pauli", "inflation", "imported"};

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void allow_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [k, _] : j.items()) {
    if (!allowed.count(k)) throw ConfigError(at(path, k), "unknown field");
  }
}

std::size_t as_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

std::vector<std::string> strings(const json& j, const std::string& path) {
  std::vector<std::string> out;
  const json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_string(a[i], at(path, i)));
  return out;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  std::vector<double> out;
  const json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_double(a[i], at(path, i)));
  return out;
}

std::vector<std::size_t> sizes(const json& j, const std::string& path) {
  std::vector<std::size_t> out;
  const json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_size(a[i], at(path, i)));
  return out;
}

std::vector<std::pair<std::string, std::string>> string_pairs(const json& j, const std::string& path) {
  std::vector<std::pair<std::string, std::string>> out;
  const json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto s = strings(a[i], at(path, i));
    if (s.size() != 2) throw ConfigError(at(path, i), "expected a pair of strings");
    out.emplace_back(s[0], s[1]);
  }
  return out;
}

std::vector<std::vector<double>> number_rows(const json& j, const std::string& path) {
  std::vector<std::vector<double>> out;
  const json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(numbers(a[i], at(path, i)));
  return out;
}

Sense parse_sense(const json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "maximize") return Sense::maximize;
  if (s == "minimize") return Sense::minimize;
  if (s == "feasibility") return Sense::feasibility;
  throw ConfigError(path, "expected maximize, minimize or feasibility");
}

void parse_locality(const json& j, ScenarioConfig& c) {
  if (j.contains("uniform")) {
    const std::string p = "/uniform";
    const json& u = j["uniform"];
    require_object(u, p);
    allow_keys(u, p, {"parties", "measurements", "outcomes"});
    for (const char* k : {"parties", "measurements", "outcomes"}) {
      if (!u.contains(k)) throw ConfigError(at(p, k), "missing field");
    }
    const std::size_t outcomes = as_size(u["outcomes"], at(p, "outcomes"));
    if (outcomes < 2) throw ConfigError(at(p, "outcomes"), "measurements need at least 2 outcomes");
    c.parties = LocalitySpec::uniform(as_size(u["parties"], at(p, "parties")),
                                      as_size(u["measurements"], at(p, "measurements")), outcomes)
                    .parties;
    if (j.contains("parties")) throw ConfigError("/parties", "give either uniform or parties");
    return;
  }
  if (!j.contains("parties")) throw ConfigError("/parties", "missing field");
  const json& ps = as_array(j["parties"], "/parties");
  if (ps.empty()) throw ConfigError("/parties", "at least one party is needed");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string p = at("/parties", i);
    require_object(ps[i], p);
    allow_keys(ps[i], p, {"name", "measurements"});
    Party party;
    party.name = ps[i].contains("name") ? as_string(ps[i]["name"], at(p, "name")) : std::string(1, char('A' + i));
    if (!ps[i].contains("measurements")) throw ConfigError(at(p, "measurements"), "missing field");
    const json& ms = as_array(ps[i]["measurements"], at(p, "measurements"));
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const std::string q = at(at(p, "measurements"), k);
      Measurement m;
      if (ms[k].is_number_integer()) {
        m.outcomes = as_size(ms[k], q);
        m.name = std::to_string(k);
      } else {
        require_object(ms[k], q);
        allow_keys(ms[k], q, {"name", "outcomes"});
        m.name = ms[k].contains("name") ? as_string(ms[k]["name"], at(q, "name")) : std::to_string(k);
        if (ms[k].contains("outcomes")) m.outcomes = as_size(ms[k]["outcomes"], at(q, "outcomes"));
      }
      if (m.outcomes < 2) throw ConfigError(q, "measurements need at least 2 outcomes");
      party.measurements.push_back(m);
    }
    c.parties.push_back(std::move(party));
  }
}

void parse_objective(const json& j, ScenarioConfig& c) {
  const std::string p = "/objective";
  require_object(j, p);
  allow_keys(j, p, {"type", "sense", "polynomial", "tensor", "grid", "tokens"});
  ObjectiveConfig& o = c.objective;
  if (!j.contains("type")) throw ConfigError(at(p, "type"), "missing field");
  o.type = as_string(j["type"], at(p, "type"));
  if (j.contains("sense")) o.sense = parse_sense(j["sense"], at(p, "sense"));
  if (o.type == "none") {
    o.sense = Sense::feasibility;
  } else if (o.type == "polynomial") {
    if (!j.contains("polynomial")) throw ConfigError(at(p, "polynomial"), "missing field");
    o.polynomial = as_string(j["polynomial"], at(p, "polynomial"));
  } else if (o.type == "cg" || o.type == "fc") {
    if (c.kind != "locality") throw ConfigError(at(p, "type"), o.type + " objectives need a locality scenario");
    if (j.contains("grid")) {
      const auto rows = number_rows(j["grid"], at(p, "grid"));
      if (rows.empty()) throw ConfigError(at(p, "grid"), "empty grid");
      o.shape = {rows.size(), rows.front().size()};
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) throw ConfigError(at(at(p, "grid"), r), "ragged grid");
        o.data.insert(o.data.end(), rows[r].begin(), rows[r].end());
      }
    } else if (j.contains("tensor")) {
      const std::string t = at(p, "tensor");
      require_object(j["tensor"], t);
      allow_keys(j["tensor"], t, {"shape", "data"});
      if (!j["tensor"].contains("shape") || !j["tensor"].contains("data")) throw ConfigError(t, "needs shape and data");
      o.shape = sizes(j["tensor"]["shape"], at(t, "shape"));
      o.data = numbers(j["tensor"]["data"], at(t, "data"));
      std::size_t n = 1;
      for (auto s : o.shape) n *= s;
      if (n != o.data.size()) throw ConfigError(at(t, "data"), "length does not match shape");
    } else {
      throw ConfigError(at(p, "grid"), "missing field (grid or tensor)");
    }
    if (o.shape.size() != c.parties.size()) {
      throw ConfigError(p, "tensor rank " + std::to_string(o.shape.size()) + " differs from the party count " +
                               std::to_string(c.parties.size()));
    }
  } else if (o.type == "imported") {
    if (!j.contains("tokens")) throw ConfigError(at(p, "tokens"), "missing field");
    o.tokens = strings(j["tokens"], at(p, "tokens"));
  } else {
    throw ConfigError(at(p, "type"), "expected none, polynomial, cg, fc or imported");
  }
  if (o.type != "none" && o.sense == Sense::feasibility) {
    throw ConfigError(at(p, "sense"), "an objective needs maximize or minimize");
  }
}

ScenarioConfig parse_document(const json& j) {
  require_object(j, "");
  ScenarioConfig c;
  if (!j.contains("kind")) throw ConfigError("/kind", "missing field");
  c.kind = as_string(j["kind"], "/kind");
  if (!kKinds.count(c.kind)) throw ConfigError("/kind", "unknown scenario kind '" + c.kind + "'");

  std::set<std::string> allowed = {"kind",        "level",       "neighbours", "localizing",
                                   "constraints", "objective",   "symmetry",   "solve",
                                   "comment"};
  if (c.kind == "locality") allowed.insert({"parties", "uniform"});
  if (c.kind == "algebraic") {
    allowed.insert({"operators", "hermitian", "rules", "projectors", "commuting", "max_new_rules", "log_completion"});
  }
  if (c.kind == "pauli") allowed.insert({"topology", "qubits", "rows", "cols", "wrap", "symmetrized"});
  if (c.kind == "inflation") allowed.insert({"observables", "sources", "inflation_level", "distribution"});
  if (c.kind == "imported") allowed.insert({"matrix", "import_mode", "real"});
  allow_keys(j, "", allowed);

  if (j.contains("level")) c.level = as_size(j["level"], "/level");
  if (j.contains("neighbours")) c.neighbours = as_size(j["neighbours"], "/neighbours");

  if (c.kind == "locality") parse_locality(j, c);

  if (c.kind == "algebraic") {
    if (!j.contains("operators")) throw ConfigError("/operators", "missing field");
    c.operators = strings(j["operators"], "/operators");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.operators.size(); ++i) {
      if (c.operators[i].empty() || !seen.insert(c.operators[i]).second) {
        throw ConfigError(at("/operators", i), "operator names must be distinct and non-empty");
      }
    }
    if (j.contains("hermitian")) c.hermitian = as_bool(j["hermitian"], "/hermitian");
    if (j.contains("rules")) c.rules = string_pairs(j["rules"], "/rules");
    if (j.contains("projectors")) c.projectors = strings(j["projectors"], "/projectors");
    if (j.contains("commuting")) c.commuting = string_pairs(j["commuting"], "/commuting");
    if (j.contains("max_new_rules")) c.max_new_rules = as_size(j["max_new_rules"], "/max_new_rules");
    if (j.contains("log_completion")) c.log_completion = as_bool(j["log_completion"], "/log_completion");
  }

  if (c.kind == "pauli") {
    if (j.contains("topology")) c.topology = as_string(j["topology"], "/topology");
    if (c.topology != "chain" && c.topology != "lattice" && c.topology != "unstructured") {
      throw ConfigError("/topology", "expected chain, lattice or unstructured");
    }
    if (c.topology == "lattice") {
      if (!j.contains("rows") || !j.contains("cols")) throw ConfigError("/rows", "lattices need rows and cols");
      c.rows = as_size(j["rows"], "/rows");
      c.cols = as_size(j["cols"], "/cols");
      if (j.contains("qubits")) throw ConfigError("/qubits", "lattices take rows and cols instead");
    } else {
      if (!j.contains("qubits")) throw ConfigError("/qubits", "missing field");
      c.qubits = as_size(j["qubits"], "/qubits");
      if (j.contains("rows") || j.contains("cols")) throw ConfigError("/rows", "only lattices take rows and cols");
    }
    if (j.contains("wrap")) c.wrap = as_bool(j["wrap"], "/wrap");
    if (j.contains("symmetrized")) c.symmetrized = as_bool(j["symmetrized"], "/symmetrized");
  }

  if (c.kind == "inflation") {
    if (!j.contains("observables")) throw ConfigError("/observables", "missing field");
    const json& os = as_array(j["observables"], "/observables");
    for (std::size_t i = 0; i < os.size(); ++i) {
      const std::string p = at("/observables", i);
      require_object(os[i], p);
      allow_keys(os[i], p, {"name", "outcomes"});
      Observable o;
      if (!os[i].contains("name")) throw ConfigError(at(p, "name"), "missing field");
      o.name = as_string(os[i]["name"], at(p, "name"));
      if (os[i].contains("outcomes")) o.outcomes = as_size(os[i]["outcomes"], at(p, "outcomes"));
      if (o.outcomes == 1) throw ConfigError(at(p, "outcomes"), "use 0 for continuous, otherwise at least 2");
      c.observables.push_back(o);
    }
    if (!j.contains("sources")) throw ConfigError("/sources", "missing field");
    const json& ss = as_array(j["sources"], "/sources");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      auto s = sizes(ss[i], at("/sources", i));
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= c.observables.size()) throw ConfigError(at(at("/sources", i), k), "no such observable");
      }
      c.sources.push_back(std::move(s));
    }
    if (j.contains("inflation_level")) c.inflation_level = as_size(j["inflation_level"], "/inflation_level");
    if (c.inflation_level == 0) throw ConfigError("/inflation_level", "must be at least 1");
    if (j.contains("distribution")) c.distribution = numbers(j["distribution"], "/distribution");
  }

  if (c.kind == "imported") {
    if (!j.contains("matrix")) throw ConfigError("/matrix", "missing field");
    const json& rows = as_array(j["matrix"], "/matrix");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      c.matrix.push_back(strings(rows[i], at("/matrix", i)));
      if (c.matrix.back().size() != rows.size()) throw ConfigError(at("/matrix", i), "matrix must be square");
    }
    if (j.contains("import_mode")) c.import_mode = as_string(j["import_mode"], "/import_mode");
    if (c.import_mode != "hermitian" && c.import_mode != "symmetric" && c.import_mode != "general") {
      throw ConfigError("/import_mode", "expected hermitian, symmetric or general");
    }
    if (j.contains("real")) c.real = as_bool(j["real"], "/real");
  }

  if (j.contains("localizing")) {
    const json& ls = as_array(j["localizing"], "/localizing");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const std::string p = at("/localizing", i);
      require_object(ls[i], p);
      allow_keys(ls[i], p, {"polynomial", "level"});
      LocalizingConfig l;
      if (!ls[i].contains("polynomial")) throw ConfigError(at(p, "polynomial"), "missing field");
      l.polynomial = as_string(ls[i]["polynomial"], at(p, "polynomial"));
      if (ls[i].contains("level")) l.level = as_size(ls[i]["level"], at(p, "level"));
      c.localizing.push_back(l);
    }
  }
  if (j.contains("constraints")) c.constraints = strings(j["constraints"], "/constraints");
  if (j.contains("objective")) parse_objective(j["objective"], c);
  if (c.objective.type == "none") c.objective.sense = Sense::feasibility;
  if (c.kind == "imported" && (c.objective.type == "polynomial" || !c.localizing.empty() || !c.constraints.empty())) {
    throw ConfigError("/objective", "imported scenarios take only imported objectives, without operator polynomials");
  }
  if (c.kind != "imported" && c.objective.type == "imported") {
    throw ConfigError("/objective/type", "imported objectives need an imported scenario");
  }

  if (j.contains("symmetry")) {
    const std::string p = "/symmetry";
    require_object(j["symmetry"], p);
    allow_keys(j["symmetry"], p, {"generators", "max_word_length"});
    SymmetryConfig s;
    if (!j["symmetry"].contains("generators")) throw ConfigError(at(p, "generators"), "missing field");
    const json& gs = as_array(j["symmetry"]["generators"], at(p, "generators"));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto g = number_rows(gs[i], at(at(p, "generators"), i));
      for (std::size_t r = 0; r < g.size(); ++r) {
        if (g[r].size() != g.size()) throw ConfigError(at(at(at(p, "generators"), i), r), "generator must be square");
      }
      s.generators.push_back(std::move(g));
    }
    if (j["symmetry"].contains("max_word_length")) {
      s.max_word_length = as_size(j["symmetry"]["max_word_length"], at(p, "max_word_length"));
    }
    c.symmetry = std::move(s);
  }

  if (j.contains("solve")) {
    const std::string p = "/solve";
    require_object(j["solve"], p);
    allow_keys(j["solve"], p, {"real_only", "tolerance", "max_block_dimension"});
    if (j["solve"].contains("real_only")) c.solve.real_only = as_bool(j["solve"]["real_only"], at(p, "real_only"));
    if (j["solve"].contains("tolerance")) {
      c.solve.tolerance = as_double(j["solve"]["tolerance"], at(p, "tolerance"));
      if (!(c.solve.tolerance > 0.0)) throw ConfigError(at(p, "tolerance"), "must be positive");
    }
    if (j["solve"].contains("max_block_dimension")) {
      c.solve.max_block_dimension = as_size(j["solve"]["max_block_dimension"], at(p, "max_block_dimension"));
    }
  }
  return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_document(j);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const ScenarioConfig& c) {
  json j;
  j["kind"] = c.kind;
  j["level"] = c.level;
  if (c.neighbours) j["neighbours"] = c.neighbours;
  if (c.kind == "locality") {
    json ps = json::array();
    for (const auto& p : c.parties) {
      json ms = json::array();
      for (const auto& m : p.measurements) ms.push_back({{"name", m.name}, {"outcomes", m.outcomes}});
      ps.push_back({{"name", p.name}, {"measurements", ms}});
    }
    j["parties"] = ps;
  } else if (c.kind == "algebraic") {
    j["operators"] = c.operators;
    j["hermitian"] = c.hermitian;
    json rules = json::array();
    for (const auto& [a, b] : c.rules) rules.push_back({a, b});
    j["rules"] = rules;
    j["projectors"] = c.projectors;
    json comm = json::array();
    for (const auto& [a, b] : c.commuting) comm.push_back({a, b});
    j["commuting"] = comm;
    j["max_new_rules"] = c.max_new_rules;
    j["log_completion"] = c.log_completion;
  } else if (c.kind == "pauli") {
    j["topology"] = c.topology;
    if (c.topology == "lattice") {
      j["rows"] = c.rows;
      j["cols"] = c.cols;
    } else {
      j["qubits"] = c.qubits;
    }
    j["wrap"] = c.wrap;
    j["symmetrized"] = c.symmetrized;
  } else if (c.kind == "inflation") {
    json os = json::array();
    for (const auto& o : c.observables) os.push_back({{"name", o.name}, {"outcomes", o.outcomes}});
    j["observables"] = os;
    j["sources"] = c.sources;
    j["inflation_level"] = c.inflation_level;
    j["distribution"] = c.distribution;
  } else if (c.kind == "imported") {
    j["matrix"] = c.matrix;
    j["import_mode"] = c.import_mode;
    j["real"] = c.real;
  }
  if (!c.localizing.empty()) {
    json ls = json::array();
    for (const auto& l : c.localizing) ls.push_back({{"polynomial", l.polynomial}, {"level", l.level}});
    j["localizing"] = ls;
  }
  if (!c.constraints.empty()) j["constraints"] = c.constraints;

  json o;
  o["type"] = c.objective.type;
  o["sense"] = to_string(c.objective.sense);
  if (c.objective.type == "polynomial") o["polynomial"] = c.objective.polynomial;
  if (c.objective.type == "cg" || c.objective.type == "fc") {
    o["tensor"] = {{"shape", c.objective.shape}, {"data", c.objective.data}};
  }
  if (c.objective.type == "imported") o["tokens"] = c.objective.tokens;
  j["objective"] = o;

  if (c.symmetry) {
    j["symmetry"] = {{"generators", c.symmetry->generators}, {"max_word_length", c.symmetry->max_word_length}};
  }
  j["solve"] = {{"real_only", c.solve.real_only},
                {"tolerance", c.solve.tolerance},
                {"max_block_dimension", c.solve.max_block_dimension}};
  return j.dump(2) + "\n";
}

}  // namespace ncr::cli
