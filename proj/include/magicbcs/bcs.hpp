#pragma once

// Linear binary constraint systems: data model, text format, classical
// solving over GF(2) and the Pauli-string solver with refutation
// certificates.
//
// Sign convention: a variable value +1 is bit 0, -1 is bit 1.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "magicbcs/gf2.hpp"
#include "magicbcs/pauli.hpp"

namespace magicbcs::bcs {

using pauli::PauliString;

struct Constraint {
  std::vector<std::size_t> vars;  // product order as written, repeats allowed
  int rhs = 1;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class Bcs {
 public:
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const { return variables.size(); }
  std::size_t num_constraints() const { return constraints.size(); }

  std::size_t add_variable(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, variables.size());
    if (!inserted) throw std::invalid_argument("duplicate variable '" + name + "'");
    variables.push_back(name);
    return it->second;
  }

  std::optional<std::size_t> find(const std::string& name) const {
    if (index_.size() != variables.size()) rebuild_index();
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::out_of_range("unknown variable '" + name + "'");
    return *i;
  }

  void add_constraint(std::vector<std::size_t> vars, int rhs) {
    if (rhs != 1 && rhs != -1) throw std::invalid_argument("constraint rhs must be +1 or -1");
    for (auto v : vars) {
      if (v >= variables.size()) throw std::out_of_range("constraint references unknown variable index");
    }
    constraints.push_back(Constraint{std::move(vars), rhs});
  }

  // Odd-multiplicity members, ascending.
  std::vector<std::size_t> parity_support(std::size_t c) const {
    std::vector<std::size_t> v = constraints.at(c).vars;
    std::sort(v.begin(), v.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(v[i]);
      i = j;
    }
    return out;
  }

  // Distinct members, ascending.
  std::vector<std::size_t> members(std::size_t c) const {
    std::vector<std::size_t> v = constraints.at(c).vars;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  friend bool operator==(const Bcs& a, const Bcs& b) {
    return a.variables == b.variables && a.constraints == b.constraints;
  }

 private:
  void rebuild_index() const {
    index_.clear();
    for (std::size_t i = 0; i < variables.size(); ++i) index_.emplace(variables[i], i);
  }
  mutable std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   vars: v1 v2 v3        (optional; if present every name must be declared)
//   v1 v2 v3 = 1
//   v3 v1 = -1

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '|' || c == '\'';
  });
}

}  // namespace detail

inline Bcs parse_bcs(std::string_view text) {
  Bcs out;
  bool declared = false;
  bool saw_anything = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.rfind("vars:", 0) == 0) {
      if (declared) throw ParseError(lineno, "duplicate vars: header");
      if (!out.constraints.empty()) throw ParseError(lineno, "vars: header must precede constraints");
      declared = true;
      saw_anything = true;
      for (const auto& name : detail::split_ws(line.substr(5))) {
        if (!detail::valid_name(name)) throw ParseError(lineno, "illegal variable name '" + name + "'");
        if (out.find(name)) throw ParseError(lineno, "duplicate variable '" + name + "'");
        out.add_variable(name);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected '<vars> = <rhs>'");
    const std::string rhs_text(detail::trim(line.substr(eq + 1)));
    int rhs = 0;
    if (rhs_text == "1" || rhs_text == "+1") {
      rhs = 1;
    } else if (rhs_text == "-1") {
      rhs = -1;
    } else {
      throw ParseError(lineno, "malformed rhs '" + rhs_text + "', expected 1 or -1");
    }
    std::vector<std::size_t> vars;
    for (const auto& name : detail::split_ws(line.substr(0, eq))) {
      if (!detail::valid_name(name)) throw ParseError(lineno, "illegal variable name '" + name + "'");
      auto idx = out.find(name);
      if (!idx) {
        if (declared) throw ParseError(lineno, "unknown variable '" + name + "'");
        idx = out.add_variable(name);
      }
      vars.push_back(*idx);
    }
    out.add_constraint(std::move(vars), rhs);
    saw_anything = true;
  }
  if (!saw_anything) throw ParseError(lineno, "empty BCS file");
  return out;
}

inline std::string serialize_bcs(const Bcs& bcs) {
  std::string s = "vars:";
  for (const auto& v : bcs.variables) s += " " + v;
  s += "\n";
  for (const auto& c : bcs.constraints) {
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
      if (i) s += ' ';
      s += bcs.variables[c.vars[i]];
    }
    s += c.vars.empty() ? "= " : " = ";
    s += c.rhs < 0 ? "-1\n" : "1\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Classical solving

inline gf2::Gf2System classical_system(const Bcs& bcs) {
  gf2::Gf2Matrix m(bcs.num_constraints(), bcs.num_vars());
  gf2::BitVector rhs(bcs.num_constraints());
  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    for (auto v : bcs.parity_support(c)) m.set(c, v);
    rhs.set(c, bcs.constraints[c].rhs < 0);
  }
  return gf2::Gf2System(std::move(m), std::move(rhs));
}

using ClassicalResult = std::variant<std::vector<int>, gf2::Gf2Inconsistency>;

inline ClassicalResult classical_solve_detailed(const Bcs& bcs) {
  auto res = gf2::solve(classical_system(bcs));
  if (auto* inc = std::get_if<gf2::Gf2Inconsistency>(&res)) return *inc;
  const auto& bits = std::get<gf2::Gf2Solution>(res).assignment;
  std::vector<int> signs(bcs.num_vars());
  for (std::size_t v = 0; v < signs.size(); ++v) signs[v] = bits.get(v) ? -1 : 1;
  return signs;
}

inline std::optional<std::vector<int>> classical_solve(const Bcs& bcs) {
  auto r = classical_solve_detailed(bcs);
  if (auto* s = std::get_if<std::vector<int>>(&r)) return *s;
  return std::nullopt;
}

inline bool satisfies(const Bcs& bcs, const std::vector<int>& signs) {
  if (signs.size() != bcs.num_vars()) return false;
  for (const auto& c : bcs.constraints) {
    int p = 1;
    for (auto v : c.vars) p *= signs[v];
    if (p != c.rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free-variable elimination

struct FreeVarExpression {
  std::size_t var = 0;
  std::optional<std::size_t> sign_unknown;  // index of C_var among the sign unknowns
  std::vector<std::size_t> free_support;    // ascending
};

struct Elimination {
  std::vector<std::size_t> free_vars;       // ascending
  std::vector<std::size_t> dependent_vars;  // ascending; C_i unknown j belongs to dependent_vars[j]
  std::vector<FreeVarExpression> expressions;  // one per variable, indexed by variable

  bool is_free(std::size_t v) const { return !expressions.at(v).sign_unknown.has_value(); }
};

inline Elimination eliminate_free_vars(const Bcs& bcs) {
  auto red = gf2::row_reduce(classical_system(bcs));
  Elimination e;
  std::vector<bool> pivot(bcs.num_vars(), false);
  for (auto c : red.pivot_cols) pivot[c] = true;
  e.expressions.resize(bcs.num_vars());
  for (std::size_t v = 0; v < bcs.num_vars(); ++v) {
    e.expressions[v].var = v;
    if (pivot[v]) {
      e.dependent_vars.push_back(v);
    } else {
      e.free_vars.push_back(v);
      e.expressions[v].free_support = {v};
    }
  }
  for (std::size_t r = 0; r < red.rank(); ++r) {
    const std::size_t p = red.pivot_cols[r];
    auto& ex = e.expressions[p];
    for (auto c : red.system.matrix.row(r).ones()) {
      if (c != p) ex.free_support.push_back(c);
    }
  }
  for (std::size_t j = 0; j < e.dependent_vars.size(); ++j) e.expressions[e.dependent_vars[j]].sign_unknown = j;
  return e;
}

// ---------------------------------------------------------------------------
// Formal words over free variables.
//
// A word is a sequence of free-variable indices. Bringing it to ascending
// order with A^2 = I uses each adjacent swap of distinct k < l once per
// inverted position pair, so the commutator content is the parity of
// inversions per value pair.

struct WordReduction {
  std::vector<std::pair<std::size_t, std::size_t>> odd_pairs;  // (k,l), k<l, sorted
  std::vector<std::size_t> residual;                            // odd-multiplicity values, ascending
};

inline WordReduction reduce_word(const std::vector<std::size_t>& word) {
  std::vector<std::pair<std::size_t, std::size_t>> inv;
  for (std::size_t p = 0; p < word.size(); ++p) {
    for (std::size_t q = p + 1; q < word.size(); ++q) {
      if (word[p] > word[q]) inv.emplace_back(word[q], word[p]);
    }
  }
  std::sort(inv.begin(), inv.end());
  WordReduction out;
  for (std::size_t i = 0; i < inv.size();) {
    std::size_t j = i;
    while (j < inv.size() && inv[j] == inv[i]) ++j;
    if ((j - i) % 2 == 1) out.odd_pairs.push_back(inv[i]);
    i = j;
  }
  std::vector<std::size_t> vals = word;
  std::sort(vals.begin(), vals.end());
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    if ((j - i) % 2 == 1) out.residual.push_back(vals[i]);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sign system

struct SignRow {
  enum class Kind { Constraint, Commutation, Involution };
  Kind kind = Kind::Constraint;
  std::size_t a = 0;  // constraint index, first variable, or involutive variable
  std::size_t b = 0;  // second variable for commutation rows
};

struct SignSystem {
  std::vector<std::size_t> dependent_vars;                 // unknowns [0, d)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // unknowns [d, d + pairs)
  std::vector<SignRow> rows;
  gf2::Gf2System equations;

  std::size_t num_unknowns() const { return dependent_vars.size() + pairs.size(); }

  std::string unknown_name(std::size_t u, const Bcs& bcs) const {
    if (u < dependent_vars.size()) return "C[" + bcs.variables[dependent_vars[u]] + "]";
    const auto& [k, l] = pairs[u - dependent_vars.size()];
    return "C[" + bcs.variables[k] + "," + bcs.variables[l] + "]";
  }
};

namespace detail {

// Word of free variables obtained by substituting expressions into `vars`,
// together with the parity of each C_i (as a list of odd sign unknowns).
inline std::vector<std::size_t> substitute(const Elimination& e, const std::vector<std::size_t>& vars,
                                           std::vector<std::size_t>& odd_signs) {
  std::vector<std::size_t> word;
  std::vector<std::size_t> signs;
  for (auto v : vars) {
    const auto& ex = e.expressions[v];
    if (ex.sign_unknown) signs.push_back(*ex.sign_unknown);
    word.insert(word.end(), ex.free_support.begin(), ex.free_support.end());
  }
  std::sort(signs.begin(), signs.end());
  odd_signs.clear();
  for (std::size_t i = 0; i < signs.size();) {
    std::size_t j = i;
    while (j < signs.size() && signs[j] == signs[i]) ++j;
    if ((j - i) % 2 == 1) odd_signs.push_back(signs[i]);
    i = j;
  }
  return word;
}

// Unordered pairs of distinct members co-occurring in some constraint, in
// lexicographic order.
inline std::vector<std::pair<std::size_t, std::size_t>> cooccurring_pairs(const Bcs& bcs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    const auto m = bcs.members(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) out.emplace_back(m[i], m[j]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::size_t> commutation_word(const Elimination& e, std::size_t i, std::size_t j) {
  const auto& si = e.expressions[i].free_support;
  const auto& sj = e.expressions[j].free_support;
  std::vector<std::size_t> w;
  for (int rep = 0; rep < 2; ++rep) {
    w.insert(w.end(), si.begin(), si.end());
    w.insert(w.end(), sj.begin(), sj.end());
  }
  return w;
}

inline std::vector<std::size_t> involution_word(const Elimination& e, std::size_t i) {
  const auto& si = e.expressions[i].free_support;
  std::vector<std::size_t> w(si.begin(), si.end());
  w.insert(w.end(), si.begin(), si.end());
  return w;
}

}  // namespace detail

// Rows, in order: one per constraint; one per co-occurring pair (A_i A_j A_i
// A_j = I); one per dependent variable with at least two free factors
// (A_i A_i = I, which keeps every derived operator Hermitian).
inline SignSystem build_sign_system(const Bcs& bcs, const Elimination& e) {
  struct Pending {
    SignRow row;
    std::vector<std::size_t> signs;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool rhs = false;
  };
  std::vector<Pending> pending;

  auto reduce = [](const std::vector<std::size_t>& word, const char* what) {
    auto r = reduce_word(word);
    if (!r.residual.empty()) throw std::logic_error(std::string("free variables failed to cancel in ") + what);
    return r.odd_pairs;
  };

  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    Pending p;
    p.row = {SignRow::Kind::Constraint, c, 0};
    auto word = detail::substitute(e, bcs.constraints[c].vars, p.signs);
    p.pairs = reduce(word, "constraint row");
    p.rhs = bcs.constraints[c].rhs < 0;
    pending.push_back(std::move(p));
  }
  for (const auto& [i, j] : detail::cooccurring_pairs(bcs)) {
    Pending p;
    p.row = {SignRow::Kind::Commutation, i, j};
    p.pairs = reduce(detail::commutation_word(e, i, j), "commutation row");
    pending.push_back(std::move(p));
  }
  for (auto v : e.dependent_vars) {
    if (e.expressions[v].free_support.size() < 2) continue;
    Pending p;
    p.row = {SignRow::Kind::Involution, v, 0};
    p.pairs = reduce(detail::involution_word(e, v), "involution row");
    pending.push_back(std::move(p));
  }

  SignSystem s;
  s.dependent_vars = e.dependent_vars;
  for (const auto& p : pending) s.pairs.insert(s.pairs.end(), p.pairs.begin(), p.pairs.end());
  std::sort(s.pairs.begin(), s.pairs.end());
  s.pairs.erase(std::unique(s.pairs.begin(), s.pairs.end()), s.pairs.end());

  const std::size_t d = s.dependent_vars.size();
  gf2::Gf2Matrix m(pending.size(), s.num_unknowns());
  gf2::BitVector rhs(pending.size());
  for (std::size_t r = 0; r < pending.size(); ++r) {
    for (auto u : pending[r].signs) m.set(r, u);
    for (const auto& kl : pending[r].pairs) {
      auto it = std::lower_bound(s.pairs.begin(), s.pairs.end(), kl);
      m.set(r, d + static_cast<std::size_t>(it - s.pairs.begin()));
    }
    rhs.set(r, pending[r].rhs);
    s.rows.push_back(pending[r].row);
  }
  s.equations = gf2::Gf2System(std::move(m), std::move(rhs));
  return s;
}

// ---------------------------------------------------------------------------
// Solutions and certificates

struct PauliSolution {
  std::size_t qubits = 0;
  std::vector<PauliString> assignment;  // indexed by variable
};

struct Certificate {
  std::vector<std::size_t> constraint_rows;
  std::vector<std::pair<std::size_t, std::size_t>> commutation_rows;
  std::vector<std::size_t> involution_rows;
  std::vector<std::size_t> derived_relation;  // concatenated variables of the cited constraints
};

struct VerifyReport {
  bool hermitian_ok = true;
  bool commutation_ok = true;
  bool products_ok = true;
  std::optional<std::size_t> first_failing_constraint;
  std::optional<std::size_t> first_failing_variable;
  std::string message;

  bool ok() const { return hermitian_ok && commutation_ok && products_ok; }
};

inline VerifyReport verify_pauli_solution(const Bcs& bcs, const PauliSolution& sol) {
  VerifyReport rep;
  auto fail_constraint = [&](std::size_t c, const std::string& msg) {
    if (!rep.first_failing_constraint) {
      rep.first_failing_constraint = c;
      if (rep.message.empty()) rep.message = msg;
    }
  };
  if (sol.assignment.size() != bcs.num_vars()) {
    rep.hermitian_ok = rep.commutation_ok = rep.products_ok = false;
    rep.message = "assignment does not cover every variable";
    return rep;
  }
  for (std::size_t v = 0; v < bcs.num_vars(); ++v) {
    const auto& p = sol.assignment[v];
    if (p.n_qubits() != sol.qubits || !p.is_hermitian()) {
      rep.hermitian_ok = false;
      if (!rep.first_failing_variable) {
        rep.first_failing_variable = v;
        rep.message = "variable " + bcs.variables[v] + " is not a Hermitian " + std::to_string(sol.qubits) +
                      "-qubit string";
      }
    }
  }
  if (!rep.hermitian_ok) return rep;
  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    const auto& con = bcs.constraints[c];
    for (std::size_t i = 0; i < con.vars.size(); ++i) {
      for (std::size_t j = i + 1; j < con.vars.size(); ++j) {
        if (!pauli::commutes(sol.assignment[con.vars[i]], sol.assignment[con.vars[j]])) {
          rep.commutation_ok = false;
          fail_constraint(c, "constraint " + std::to_string(c) + ": " + bcs.variables[con.vars[i]] + " and " +
                                 bcs.variables[con.vars[j]] + " anticommute");
        }
      }
    }
    PauliString prod = PauliString::identity(sol.qubits);
    for (auto v : con.vars) prod = prod * sol.assignment[v];
    if (prod != PauliString::signed_identity(sol.qubits, con.rhs)) {
      rep.products_ok = false;
      fail_constraint(c, "constraint " + std::to_string(c) + ": product is not " + (con.rhs < 0 ? "-I" : "+I"));
    }
  }
  return rep;
}

using PauliResult = std::variant<PauliSolution, Certificate>;

namespace detail {

inline Certificate make_certificate(const Bcs& bcs, const SignSystem& s, const std::vector<std::size_t>& rows) {
  Certificate cert;
  for (auto r : rows) {
    const auto& row = s.rows[r];
    switch (row.kind) {
      case SignRow::Kind::Constraint: cert.constraint_rows.push_back(row.a); break;
      case SignRow::Kind::Commutation: cert.commutation_rows.emplace_back(row.a, row.b); break;
      case SignRow::Kind::Involution: cert.involution_rows.push_back(row.a); break;
    }
  }
  for (auto c : cert.constraint_rows) {
    const auto& vars = bcs.constraints[c].vars;
    cert.derived_relation.insert(cert.derived_relation.end(), vars.begin(), vars.end());
  }
  return cert;
}

}  // namespace detail

inline PauliResult pauli_solve(const Bcs& bcs) {
  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    if (bcs.constraints[c].vars.empty() && bcs.constraints[c].rhs < 0) {
      Certificate cert;
      cert.constraint_rows = {c};
      return cert;
    }
  }

  const Elimination e = eliminate_free_vars(bcs);
  const SignSystem s = build_sign_system(bcs, e);
  auto res = gf2::solve(s.equations);
  if (auto* inc = std::get_if<gf2::Gf2Inconsistency>(&res)) return detail::make_certificate(bcs, s, inc->rows);
  const auto& bits = std::get<gf2::Gf2Solution>(res).assignment;

  const std::size_t d = s.dependent_vars.size();
  std::vector<std::pair<std::size_t, std::size_t>> anti;
  for (std::size_t u = 0; u < s.pairs.size(); ++u) {
    if (bits.get(d + u)) anti.push_back(s.pairs[u]);
  }

  PauliSolution sol;
  sol.qubits = anti.size();
  sol.assignment.assign(bcs.num_vars(), PauliString::identity(sol.qubits));
  for (std::size_t q = 0; q < anti.size(); ++q) {
    sol.assignment[anti[q].first].set_letter(q, 'X');
    sol.assignment[anti[q].second].set_letter(q, 'Z');
  }
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t v = s.dependent_vars[j];
    PauliString p = PauliString::identity(sol.qubits);
    for (auto f : e.expressions[v].free_support) p = p * sol.assignment[f];
    if (bits.get(j)) p = p.negated();
    sol.assignment[v] = p;
  }

  auto rep = verify_pauli_solution(bcs, sol);
  if (!rep.ok()) throw std::logic_error("constructed Pauli solution failed verification: " + rep.message);
  return sol;
}

// Replays a certificate from scratch: the cited constraint words, with every
// variable replaced by its signed free-variable expression, and the cited
// commutation and involution words are each sorted by adjacent transpositions.
// Every swap of distinct k < l toggles C_kl; every adjacent equal pair is
// deleted. The certificate is accepted iff, summed over all cited words,
// every C_i and every C_kl occurs an even number of times while the rhs signs
// multiply to -1, i.e. the cited relations force I = -I.
inline bool verify_certificate(const Bcs& bcs, const Certificate& cert) {
  for (auto c : cert.constraint_rows) {
    if (c >= bcs.num_constraints()) throw std::out_of_range("certificate cites a missing constraint");
  }
  for (const auto& [i, j] : cert.commutation_rows) {
    if (i >= bcs.num_vars() || j >= bcs.num_vars()) throw std::out_of_range("certificate cites a missing variable");
  }
  for (auto i : cert.involution_rows) {
    if (i >= bcs.num_vars()) throw std::out_of_range("certificate cites a missing variable");
  }
  if (cert.constraint_rows.empty()) return false;
  // Only pairs that share a constraint are known to commute.
  if (!cert.commutation_rows.empty()) {
    const auto cooc = detail::cooccurring_pairs(bcs);
    for (auto [i, j] : cert.commutation_rows) {
      if (i > j) std::swap(i, j);
      if (!std::binary_search(cooc.begin(), cooc.end(), std::make_pair(i, j))) return false;
    }
  }

  const Elimination e = eliminate_free_vars(bcs);
  std::map<std::pair<std::size_t, std::size_t>, bool> pair_parity;
  std::map<std::size_t, bool> sign_parity;
  bool rhs = false;

  auto bubble = [&](std::vector<std::size_t> w) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p] == w[p + 1]) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(p), w.begin() + static_cast<std::ptrdiff_t>(p + 2));
          changed = true;
          break;
        }
        if (w[p] > w[p + 1]) {
          pair_parity[{w[p + 1], w[p]}] ^= true;
          std::swap(w[p], w[p + 1]);
          changed = true;
        }
      }
    }
    return w.empty();
  };

  for (auto c : cert.constraint_rows) {
    std::vector<std::size_t> word;
    for (auto v : bcs.constraints[c].vars) {
      const auto& ex = e.expressions[v];
      if (ex.sign_unknown) sign_parity[v] ^= true;
      word.insert(word.end(), ex.free_support.begin(), ex.free_support.end());
    }
    if (!bubble(word)) return false;
    rhs ^= bcs.constraints[c].rhs < 0;
  }
  for (const auto& [i, j] : cert.commutation_rows) {
    if (i == j) return false;
    if (!bubble(detail::commutation_word(e, i, j))) return false;
  }
  for (auto i : cert.involution_rows) {
    if (!bubble(detail::involution_word(e, i))) return false;
  }
  for (const auto& [v, odd] : sign_parity) {
    if (odd) return false;
  }
  for (const auto& [kl, odd] : pair_parity) {
    if (odd) return false;
  }
  return rhs;
}

// ---------------------------------------------------------------------------
// Solution files: one `name = <pauli>` line per variable.

inline std::string format_solution(const Bcs& bcs, const PauliSolution& sol) {
  std::string s;
  for (std::size_t v = 0; v < bcs.num_vars(); ++v) {
    s += bcs.variables[v] + " = " + pauli::format_pauli(sol.assignment[v]) + "\n";
  }
  return s;
}

inline PauliSolution parse_solution(const Bcs& bcs, std::string_view text) {
  PauliSolution sol;
  std::vector<std::optional<PauliString>> got(bcs.num_vars());
  std::optional<std::size_t> qubits;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto t = detail::trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected '<name> = <pauli>'");
    const std::string name(detail::trim(t.substr(0, eq)));
    auto idx = bcs.find(name);
    if (!idx) throw ParseError(lineno, "unknown variable '" + name + "'");
    PauliString p;
    try {
      p = pauli::parse_pauli(detail::trim(t.substr(eq + 1)));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(lineno, ex.what());
    }
    if (qubits && *qubits != p.n_qubits()) throw ParseError(lineno, "inconsistent qubit count");
    qubits = p.n_qubits();
    got[*idx] = p;
  }
  sol.qubits = qubits.value_or(0);
  for (std::size_t v = 0; v < got.size(); ++v) {
    if (!got[v]) throw ParseError(lineno, "variable '" + bcs.variables[v] + "' has no assignment");
    sol.assignment.push_back(*got[v]);
  }
  return sol;
}

}  // namespace magicbcs::bcs
