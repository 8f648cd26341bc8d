#pragma once

// The complete-graph game family on n vertices and its question counts.
//
// Variables per vertex v: a_v. Per edge uv: x_uv, y_uv, z_uv. Per pair of
// disjoint edges {uv, st}: one b (unordered in the two edges) and two c's
// (c_uv|st and c_st|uv). Vertices are labelled 1..n.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "magicbcs/bcs.hpp"
#include "magicbcs/rng.hpp"

namespace magicbcs::game {

inline std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct QuestionCounts {
  std::size_t alice = 0;
  std::size_t bob = 0;
  std::size_t modified_alice = 0;
  std::size_t modified_bob = 0;
};

inline void require_n(std::size_t n) {
  if (n < 4) throw std::invalid_argument("game needs n >= 4 vertices, got " + std::to_string(n));
}

inline QuestionCounts count_questions(std::size_t n) {
  require_n(n);
  QuestionCounts q;
  q.alice = 2 * binom(n, 2) + 14 * binom(n, 4) + 1;
  q.bob = n + 3 * binom(n, 2) + 9 * binom(n, 4);
  q.modified_alice = q.alice + n - 3;
  q.modified_bob = q.bob + n - 3;
  return q;
}

enum class GameClass { Classical, CliffordOnly, MagicRequired };

inline const char* to_string(GameClass c) {
  switch (c) {
    case GameClass::Classical: return "Classical";
    case GameClass::CliffordOnly: return "CliffordOnly";
    case GameClass::MagicRequired: return "MagicRequired";
  }
  return "?";
}

inline GameClass classify(std::size_t n) {
  require_n(n);
  if (n == 4) return GameClass::CliffordOnly;
  return n % 2 == 1 ? GameClass::Classical : GameClass::MagicRequired;
}

// Perfect Clifford strategies lose with probability at least 1/(2|Q|) where
// |Q| = 3 * modified_alice is the number of question pairs of the modified game.
struct CliffordBound {
  std::size_t denominator = 0;  // bound = 1 - 1/denominator
  double value = 0.0;

  std::string text() const { return "1 - 1/" + std::to_string(denominator); }
};

inline CliffordBound clifford_bound(std::size_t n) {
  require_n(n);
  if (classify(n) != GameClass::MagicRequired) {
    throw std::domain_error("Clifford bound applies to even n >= 6 only, got n = " + std::to_string(n));
  }
  CliffordBound b;
  b.denominator = 6 * count_questions(n).modified_alice;
  b.value = 1.0 - 1.0 / static_cast<double>(b.denominator);
  return b;
}

using Edge = std::pair<int, int>;

inline Edge edge(int u, int v) {
  if (u == v) throw std::invalid_argument("edge endpoints must differ");
  return u < v ? Edge{u, v} : Edge{v, u};
}

class GameBcs {
 public:
  std::size_t n = 0;
  bool modified = false;
  bcs::Bcs bcs;

  std::size_t a(int v) const { return at(name_a(v)); }
  std::size_t x(int u, int v) const { return at(name_edge('x', edge(u, v))); }
  std::size_t y(int u, int v) const { return at(name_edge('y', edge(u, v))); }
  std::size_t z(int u, int v) const { return at(name_edge('z', edge(u, v))); }
  // b_uv|st: symmetric under swapping the edges and the endpoints of each edge.
  std::size_t b(int u, int v, int s, int t) const {
    Edge e1 = edge(u, v), e2 = edge(s, t);
    if (e2 < e1) std::swap(e1, e2);
    return at(name_pair('b', e1, e2));
  }
  // c_uv|st: symmetric under endpoint swaps only.
  std::size_t c(int u, int v, int s, int t) const { return at(name_pair('c', edge(u, v), edge(s, t))); }
  // a_{1..k}, 2 <= k <= n-2, present only in the modified game.
  std::size_t chain(int k) const { return at(name_chain(k)); }

  // Index of the product constraint (unmodified) or the final chain link.
  std::size_t product_constraint = 0;

  static std::string name_a(int v) { return "a_" + std::to_string(v); }
  static std::string name_edge(char tag, Edge e) {
    return std::string(1, tag) + "_" + std::to_string(e.first) + "_" + std::to_string(e.second);
  }
  static std::string name_pair(char tag, Edge e1, Edge e2) {
    return std::string(1, tag) + "_" + std::to_string(e1.first) + "_" + std::to_string(e1.second) + "_" +
           std::to_string(e2.first) + "_" + std::to_string(e2.second);
  }
  static std::string name_chain(int k) {
    std::string s = "a";
    for (int i = 1; i <= k; ++i) s += "_" + std::to_string(i);
    return s;
  }

 private:
  std::size_t at(const std::string& name) const { return bcs.index_of(name); }
};

namespace detail {

inline std::vector<std::array<int, 4>> four_sets(int n) {
  std::vector<std::array<int, 4>> out;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      for (int r = q + 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) out.push_back({p, q, r, s});
  return out;
}

// The three perfect matchings of {p<q<r<s}, first edge holding p.
inline std::array<std::pair<Edge, Edge>, 3> matchings(const std::array<int, 4>& f) {
  const auto [p, q, r, s] = f;
  return {{{Edge{p, q}, Edge{r, s}}, {Edge{p, r}, Edge{q, s}}, {Edge{p, s}, Edge{q, r}}}};
}

}  // namespace detail

inline GameBcs build_game_bcs(std::size_t n_vertices, bool modified = false) {
  require_n(n_vertices);
  const int n = static_cast<int>(n_vertices);
  GameBcs g;
  g.n = n_vertices;
  g.modified = modified;
  auto& B = g.bcs;

  std::vector<Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  const auto fours = detail::four_sets(n);

  for (int v = 1; v <= n; ++v) B.add_variable(GameBcs::name_a(v));
  for (char tag : {'x', 'y', 'z'})
    for (const auto& e : edges) B.add_variable(GameBcs::name_edge(tag, e));
  for (const auto& f : fours)
    for (const auto& [e1, e2] : detail::matchings(f)) B.add_variable(GameBcs::name_pair('b', e1, e2));
  for (const auto& f : fours) {
    const auto m = detail::matchings(f);
    for (const auto& [e1, e2] : m) B.add_variable(GameBcs::name_pair('c', e1, e2));
    for (const auto& [e1, e2] : m) B.add_variable(GameBcs::name_pair('c', e2, e1));
  }
  if (modified) {
    for (int k = 2; k <= n - 2; ++k) B.add_variable(GameBcs::name_chain(k));
  }

  for (const auto& [u, v] : edges) B.add_constraint({g.a(u), g.a(v), g.y(u, v)}, 1);
  for (const auto& [u, v] : edges) B.add_constraint({g.x(u, v), g.y(u, v), g.z(u, v)}, 1);
  for (const auto& f : fours) {
    for (const auto& [e1, e2] : detail::matchings(f)) {
      B.add_constraint({g.x(e1.first, e1.second), g.x(e2.first, e2.second),
                        g.b(e1.first, e1.second, e2.first, e2.second)},
                       1);
    }
  }
  for (const auto& f : fours) {
    const auto m = detail::matchings(f);
    std::vector<std::pair<Edge, Edge>> ordered(m.begin(), m.end());
    for (const auto& [e1, e2] : m) ordered.emplace_back(e2, e1);
    for (const auto& [e1, e2] : ordered) {
      B.add_constraint({g.x(e1.first, e1.second), g.z(e2.first, e2.second),
                        g.c(e1.first, e1.second, e2.first, e2.second)},
                       1);
    }
  }
  for (const auto& f : fours) {
    const auto [u, v, s, t] = f;
    B.add_constraint({g.b(u, v, s, t), g.b(v, s, u, t), g.b(s, u, v, t)}, 1);
  }
  // For apex t and triangle u < v < s on the remaining vertices:
  // c_uv|st c_vs|ut c_su|vt = 1.
  for (const auto& f : fours) {
    for (int apex = 3; apex >= 0; --apex) {
      std::array<int, 3> tri{};
      int k = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != apex) tri[k++] = f[i];
      }
      const int t = f[apex];
      const auto [u, v, s] = tri;
      B.add_constraint({g.c(u, v, s, t), g.c(v, s, u, t), g.c(s, u, v, t)}, 1);
    }
  }
  if (!modified) {
    std::vector<std::size_t> all;
    for (int v = 1; v <= n; ++v) all.push_back(g.a(v));
    g.product_constraint = B.num_constraints();
    B.add_constraint(std::move(all), -1);
  } else {
    B.add_constraint({g.a(1), g.a(2), g.chain(2)}, 1);
    for (int k = 3; k <= n - 2; ++k) B.add_constraint({g.chain(k - 1), g.a(k), g.chain(k)}, 1);
    g.product_constraint = B.num_constraints();
    B.add_constraint({g.chain(n - 2), g.a(n - 1), g.a(n)}, -1);
  }
  return g;
}

struct QuestionSpace {
  std::vector<std::size_t> alice_questions;
  std::vector<std::size_t> bob_questions;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (constraint, variable in it)
};

inline QuestionSpace enumerate_questions(const GameBcs& g) {
  QuestionSpace q;
  for (std::size_t c = 0; c < g.bcs.num_constraints(); ++c) {
    q.alice_questions.push_back(c);
    for (auto v : g.bcs.members(c)) q.pairs.emplace_back(c, v);
  }
  for (std::size_t v = 0; v < g.bcs.num_vars(); ++v) q.bob_questions.push_back(v);
  return q;
}

inline std::pair<std::size_t, std::size_t> sample_question(const QuestionSpace& q, Rng& rng) {
  return q.pairs[rng.below(q.pairs.size())];
}

struct SolverClassification {
  bool classical = false;
  bool pauli = false;
  std::size_t pauli_qubits = 0;
  bool certificate_verified = false;

  // Class implied by the solver outcomes on the unmodified instance.
  GameClass implied() const {
    if (classical) return GameClass::Classical;
    return pauli ? GameClass::CliffordOnly : GameClass::MagicRequired;
  }
};

inline SolverClassification classify_by_solver(std::size_t n) {
  const auto g = build_game_bcs(n);
  SolverClassification s;
  s.classical = bcs::classical_solve(g.bcs).has_value();
  auto r = bcs::pauli_solve(g.bcs);
  if (auto* sol = std::get_if<bcs::PauliSolution>(&r)) {
    s.pauli = true;
    s.pauli_qubits = sol->qubits;
  } else {
    s.certificate_verified = bcs::verify_certificate(g.bcs, std::get<bcs::Certificate>(r));
  }
  return s;
}

}  // namespace magicbcs::game
