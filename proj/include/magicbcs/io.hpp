#pragma once

// JSON forms of certificates, operator solutions, circuit DAGs and the game
// name map.

#include <string>
#include <vector>

#include <json.hpp>

#include "magicbcs/bcs.hpp"
#include "magicbcs/game.hpp"
#include "magicbcs/lightcone.hpp"
#include "magicbcs/quantum.hpp"

namespace magicbcs::io {

using nlohmann::json;

inline json certificate_json(const bcs::Bcs& b, const bcs::Certificate& c) {
  json j;
  j["constraint_rows"] = c.constraint_rows;
  json pairs = json::array();
  for (const auto& [x, y] : c.commutation_rows) pairs.push_back({b.variables[x], b.variables[y]});
  j["commutation_rows"] = pairs;
  json inv = json::array();
  for (auto v : c.involution_rows) inv.push_back(b.variables[v]);
  j["involution_rows"] = inv;
  json rel = json::array();
  for (auto v : c.derived_relation) rel.push_back(b.variables[v]);
  j["derived_relation"] = rel;
  return j;
}

inline bcs::Certificate certificate_from_json(const bcs::Bcs& b, const json& j) {
  bcs::Certificate c;
  c.constraint_rows = j.at("constraint_rows").get<std::vector<std::size_t>>();
  for (const auto& p : j.at("commutation_rows")) {
    c.commutation_rows.emplace_back(b.index_of(p.at(0).get<std::string>()), b.index_of(p.at(1).get<std::string>()));
  }
  for (const auto& v : j.value("involution_rows", json::array())) c.involution_rows.push_back(b.index_of(v.get<std::string>()));
  for (const auto& v : j.value("derived_relation", json::array())) c.derived_relation.push_back(b.index_of(v.get<std::string>()));
  return c;
}

inline json operator_solution_json(const bcs::Bcs& b, const quantum::OperatorSolution& sol) {
  json j;
  j["dim"] = sol.dim;
  json vars = json::object();
  for (std::size_t v = 0; v < b.num_vars(); ++v) {
    const auto& m = sol.at(v);
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      std::vector<double> rr, ii;
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        rr.push_back(m(r, c).real());
        ii.push_back(m(r, c).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    vars[b.variables[v]] = {{"re", re}, {"im", im}};
  }
  j["variables"] = vars;
  return j;
}

inline quantum::OperatorSolution operator_solution_from_json(const bcs::Bcs& b, const json& j) {
  const std::size_t d = j.at("dim").get<std::size_t>();
  quantum::OperatorSolution sol(d, b.num_vars());
  for (const auto& [name, val] : j.at("variables").items()) {
    const auto re = val.at("re").get<std::vector<std::vector<double>>>();
    const auto im = val.at("im").get<std::vector<std::vector<double>>>();
    quantum::DenseOperator m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (re.size() != d || im.size() != d) throw std::invalid_argument("operator for " + name + " has wrong shape");
    for (std::size_t r = 0; r < d; ++r) {
      if (re[r].size() != d || im[r].size() != d) throw std::invalid_argument("operator for " + name + " has wrong shape");
      for (std::size_t c = 0; c < d; ++c) m(Eigen::Index(r), Eigen::Index(c)) = {re[r][c], im[r][c]};
    }
    sol.set(b.index_of(name), std::move(m));
  }
  return sol;
}

inline json dag_json(const lightcone::CircuitDag& dag) {
  json j;
  json wires = json::array();
  for (auto w : dag.wires) wires.push_back(w == lightcone::WireKind::Quantum ? "quantum" : "classical");
  j["wires"] = wires;
  json gates = json::array();
  for (const auto& g : dag.gates) {
    gates.push_back({{"layer", g.layer}, {"inputs", g.inputs}, {"outputs", g.outputs}, {"kind", g.kind}});
  }
  j["gates"] = gates;
  json sites = json::array();
  for (const auto& s : dag.sites) {
    sites.push_back({{"alpha_in", s.alpha_in}, {"beta_in", s.beta_in}, {"alpha_out", s.alpha_out}, {"beta_out", s.beta_out}});
  }
  j["sites"] = sites;
  return j;
}

inline lightcone::CircuitDag dag_from_json(const json& j) {
  lightcone::CircuitDag dag;
  for (const auto& w : j.at("wires")) {
    const auto k = w.get<std::string>();
    if (k != "classical" && k != "quantum") throw std::invalid_argument("wire kind must be classical or quantum");
    dag.wires.push_back(k == "quantum" ? lightcone::WireKind::Quantum : lightcone::WireKind::Classical);
  }
  for (const auto& g : j.at("gates")) {
    lightcone::Gate gate;
    gate.layer = g.at("layer").get<std::size_t>();
    gate.inputs = g.at("inputs").get<std::vector<std::size_t>>();
    gate.outputs = g.at("outputs").get<std::vector<std::size_t>>();
    gate.kind = g.value("kind", std::string("gate"));
    dag.gates.push_back(std::move(gate));
  }
  for (const auto& s : j.value("sites", json::array())) {
    lightcone::SiteWires w;
    w.alpha_in = s.value("alpha_in", std::vector<std::size_t>{});
    w.beta_in = s.value("beta_in", std::vector<std::size_t>{});
    w.alpha_out = s.value("alpha_out", std::vector<std::size_t>{});
    w.beta_out = s.value("beta_out", std::vector<std::size_t>{});
    dag.sites.push_back(std::move(w));
  }
  dag.validate();
  return dag;
}

inline json name_map_json(const game::GameBcs& g) {
  json j;
  j["n"] = g.n;
  j["modified"] = g.modified;
  json idx = json::object();
  for (std::size_t v = 0; v < g.bcs.num_vars(); ++v) idx[g.bcs.variables[v]] = v;
  j["variables"] = idx;
  j["product_constraint"] = g.product_constraint;
  return j;
}

}  // namespace magicbcs::io
