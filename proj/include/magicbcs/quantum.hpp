#pragma once

// Dense operator solutions, the n-dimensional permutation strategy for the
// game family, and simulated play on a maximally entangled state.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "magicbcs/bcs.hpp"
#include "magicbcs/game.hpp"
#include "magicbcs/pauli.hpp"
#include "magicbcs/rng.hpp"

namespace magicbcs::quantum {

using DenseOperator = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// Partial or total assignment of d x d operators to the variables of a BCS.
struct OperatorSolution {
  std::size_t dim = 0;
  std::vector<std::optional<DenseOperator>> ops;

  OperatorSolution() = default;
  OperatorSolution(std::size_t d, std::size_t num_vars) : dim(d), ops(num_vars) {}

  bool complete() const {
    return std::all_of(ops.begin(), ops.end(), [](const auto& o) { return o.has_value(); });
  }
  const DenseOperator& at(std::size_t v) const {
    if (!ops.at(v)) throw std::out_of_range("variable " + std::to_string(v) + " is unassigned");
    return *ops[v];
  }
  void set(std::size_t v, DenseOperator op) {
    if (static_cast<std::size_t>(op.rows()) != dim || static_cast<std::size_t>(op.cols()) != dim) {
      throw std::invalid_argument("operator dimension does not match solution dimension");
    }
    ops.at(v) = std::move(op);
  }
};

inline double max_abs(const DenseOperator& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Solves, repeatedly, any constraint L u R = c in which u is the only
// unassigned variable and occurs once: u = L^-1 c R^-1, where the inverse of
// a product of involutions is the reversed product.
inline OperatorSolution complete_solution(const bcs::Bcs& bcs, OperatorSolution sol) {
  if (sol.ops.size() != bcs.num_vars()) throw std::invalid_argument("solution size does not match BCS");
  const Eigen::Index d = static_cast<Eigen::Index>(sol.dim);
  bool progress = true;
  while (progress && !sol.complete()) {
    progress = false;
    for (const auto& con : bcs.constraints) {
      std::optional<std::size_t> pos;
      bool usable = true;
      for (std::size_t p = 0; p < con.vars.size(); ++p) {
        if (sol.ops[con.vars[p]]) continue;
        if (pos) {
          usable = false;
          break;
        }
        pos = p;
      }
      if (!usable || !pos) continue;
      DenseOperator u = DenseOperator::Identity(d, d) * static_cast<double>(con.rhs);
      for (std::size_t p = *pos; p-- > 0;) u = *sol.ops[con.vars[p]] * u;  // L^-1 = reversed L
      for (std::size_t p = con.vars.size(); p-- > *pos + 1;) u = u * *sol.ops[con.vars[p]];
      sol.ops[con.vars[*pos]] = std::move(u);
      progress = true;
    }
  }
  if (!sol.complete()) {
    std::string missing;
    for (std::size_t v = 0; v < sol.ops.size(); ++v) {
      if (!sol.ops[v]) {
        missing = bcs.variables[v];
        break;
      }
    }
    throw std::runtime_error("complete_solution stuck: no constraint determines " + missing);
  }
  return sol;
}

// Dimension n. a_v = I - 2 e_vv and x_uv swaps basis vectors u and v; the
// rest follows from the constraints.
inline OperatorSolution permutation_solution(const game::GameBcs& g) {
  const Eigen::Index d = static_cast<Eigen::Index>(g.n);
  OperatorSolution sol(g.n, g.bcs.num_vars());
  const int n = static_cast<int>(g.n);
  for (int v = 1; v <= n; ++v) {
    DenseOperator a = DenseOperator::Identity(d, d);
    a(v - 1, v - 1) = -1.0;
    sol.set(g.a(v), std::move(a));
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      DenseOperator x = DenseOperator::Identity(d, d);
      x(u - 1, u - 1) = 0.0;
      x(v - 1, v - 1) = 0.0;
      x(u - 1, v - 1) = 1.0;
      x(v - 1, u - 1) = 1.0;
      sol.set(g.x(u, v), std::move(x));
    }
  }
  return complete_solution(g.bcs, std::move(sol));
}

inline OperatorSolution from_pauli(const bcs::PauliSolution& p) {
  OperatorSolution sol(std::size_t{1} << p.qubits, p.assignment.size());
  for (std::size_t v = 0; v < p.assignment.size(); ++v) sol.set(v, pauli::to_matrix(p.assignment[v]));
  return sol;
}

inline OperatorSolution from_classical(const std::vector<int>& signs) {
  OperatorSolution sol(1, signs.size());
  for (std::size_t v = 0; v < signs.size(); ++v) sol.set(v, DenseOperator::Identity(1, 1) * double(signs[v]));
  return sol;
}

struct OperatorReport {
  double hermitian = 0.0;   // max ||A - A^dag||
  double involution = 0.0;  // max ||A^2 - I||
  double commutator = 0.0;  // max ||[A_i, A_j]|| within a constraint
  double product = 0.0;     // max ||prod A - c I||
  std::optional<std::size_t> worst_hermitian_var, worst_involution_var;
  std::optional<std::size_t> worst_commutator_constraint, worst_product_constraint;
  double tol = kDefaultTol;

  bool ok() const { return hermitian <= tol && involution <= tol && commutator <= tol && product <= tol; }
};

inline OperatorReport verify_operator_solution(const bcs::Bcs& bcs, const OperatorSolution& sol,
                                               double tol = kDefaultTol) {
  if (!sol.complete() || sol.ops.size() != bcs.num_vars()) {
    throw std::invalid_argument("verify_operator_solution needs a full assignment");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(sol.dim);
  for (const auto& op : sol.ops) {
    if (op->rows() != d || op->cols() != d) throw std::invalid_argument("operator dimension mismatch");
  }
  OperatorReport rep;
  rep.tol = tol;
  const DenseOperator id = DenseOperator::Identity(d, d);
  auto track = [](double e, std::size_t where, double& worst, std::optional<std::size_t>& at) {
    if (!at || e > worst) {
      worst = e;
      at = where;
    }
  };
  for (std::size_t v = 0; v < sol.ops.size(); ++v) {
    const auto& a = *sol.ops[v];
    track(max_abs(a - a.adjoint()), v, rep.hermitian, rep.worst_hermitian_var);
    track(max_abs(a * a - id), v, rep.involution, rep.worst_involution_var);
  }
  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    const auto& con = bcs.constraints[c];
    for (std::size_t i = 0; i < con.vars.size(); ++i) {
      for (std::size_t j = i + 1; j < con.vars.size(); ++j) {
        const auto& a = *sol.ops[con.vars[i]];
        const auto& b = *sol.ops[con.vars[j]];
        track(max_abs(a * b - b * a), c, rep.commutator, rep.worst_commutator_constraint);
      }
    }
    DenseOperator p = id;
    for (auto v : con.vars) p = p * *sol.ops[v];
    track(max_abs(p - id * static_cast<double>(con.rhs)), c, rep.product, rep.worst_product_constraint);
  }
  return rep;
}

// <Phi+| A (x) B |Phi+> = tr(A B^T) / d.
inline double correlation(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("correlation needs square operators of equal dimension");
  }
  return (a * b.transpose()).trace().real() / static_cast<double>(a.rows());
}

// Bipartite pure state on C^d (x) C^d stored as the d x d amplitude matrix
// M with |psi> = sum_ij M(i,j) |i>|j>. Alice's O acts as O M, Bob's as M O^T.
struct SharedState {
  std::size_t dim = 0;
  DenseOperator amplitudes;

  static SharedState max_entangled(std::size_t d) {
    SharedState s;
    s.dim = d;
    const Eigen::Index n = static_cast<Eigen::Index>(d);
    s.amplitudes = DenseOperator::Identity(n, n) / std::sqrt(static_cast<double>(d));
    return s;
  }

  double norm() const { return amplitudes.norm(); }
  Complex amplitude(std::size_t i, std::size_t j) const {
    return amplitudes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

enum class Side { Alice, Bob };

inline DenseOperator apply_local(const DenseOperator& m, Side side, const DenseOperator& op) {
  return side == Side::Alice ? DenseOperator(op * m) : DenseOperator(m * op.transpose());
}

inline void require_commuting(const std::vector<DenseOperator>& obs, double tol = kDefaultTol) {
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      if (max_abs(obs[i] * obs[j] - obs[j] * obs[i]) > tol) {
        throw std::invalid_argument("observables " + std::to_string(i) + " and " + std::to_string(j) +
                                    " do not commute");
      }
    }
  }
}

// Sequential projective measurement of commuting +-1 observables on one side.
inline std::vector<int> measure_commuting(SharedState& state, Side side, const std::vector<DenseOperator>& obs,
                                          Rng& rng) {
  require_commuting(obs);
  const Eigen::Index d = static_cast<Eigen::Index>(state.dim);
  const DenseOperator id = DenseOperator::Identity(d, d);
  std::vector<int> out;
  out.reserve(obs.size());
  for (const auto& o : obs) {
    if (o.rows() != d) throw std::invalid_argument("observable dimension does not match state");
    DenseOperator plus = apply_local(state.amplitudes, side, (id + o) * 0.5);
    const double p_plus = plus.squaredNorm();
    const bool take_plus = rng.uniform() < p_plus;
    DenseOperator branch = take_plus ? plus : apply_local(state.amplitudes, side, (id - o) * 0.5);
    const double p = take_plus ? p_plus : branch.squaredNorm();
    if (p < 1e-15) throw std::logic_error("sampled a zero-probability measurement branch");
    state.amplitudes = branch / std::sqrt(p);
    out.push_back(take_plus ? 1 : -1);
  }
  return out;
}

struct RoundResult {
  std::vector<std::size_t> alice_vars;  // distinct members of the constraint, ascending
  std::vector<int> alice;               // one outcome per alice_vars entry
  int bob = 1;
  bool constraint_ok = false;
  bool agree = false;
  bool won = false;
};

// Alice's per-variable values multiplied with the constraint's multiplicities.
inline int constraint_product(const bcs::Constraint& con, const std::vector<std::size_t>& vars,
                              const std::vector<int>& values) {
  int p = 1;
  for (auto v : con.vars) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    p *= values[static_cast<std::size_t>(it - vars.begin())];
  }
  return p;
}

// One round on a fresh maximally entangled state: Alice measures the
// constraint's observables, Bob measures the transpose of the variable's.
inline RoundResult play_round(const bcs::Bcs& bcs, const OperatorSolution& sol,
                              std::pair<std::size_t, std::size_t> question, Rng& rng) {
  const auto [alpha, beta] = question;
  RoundResult r;
  r.alice_vars = bcs.members(alpha);
  if (!std::binary_search(r.alice_vars.begin(), r.alice_vars.end(), beta)) {
    throw std::invalid_argument("question variable is not in the constraint");
  }
  SharedState st = SharedState::max_entangled(sol.dim);
  std::vector<DenseOperator> obs;
  for (auto v : r.alice_vars) obs.push_back(sol.at(v));
  r.alice = measure_commuting(st, Side::Alice, obs, rng);
  r.bob = measure_commuting(st, Side::Bob, {sol.at(beta).transpose()}, rng).front();
  r.constraint_ok = constraint_product(bcs.constraints[alpha], r.alice_vars, r.alice) == bcs.constraints[alpha].rhs;
  auto it = std::lower_bound(r.alice_vars.begin(), r.alice_vars.end(), beta);
  r.agree = r.alice[static_cast<std::size_t>(it - r.alice_vars.begin())] == r.bob;
  r.won = r.constraint_ok && r.agree;
  return r;
}

// Pauli strategies: Alice answers constraint c with strings aligned to
// bcs.members(c); Bob answers variable v with the one string he measures.
struct CliffordStrategy {
  std::size_t qubits = 0;
  std::vector<std::vector<pauli::PauliString>> alice;
  std::vector<pauli::PauliString> bob;

  // Both players use the same assignment; Bob measures its transpose.
  static CliffordStrategy from_assignment(const bcs::Bcs& bcs, std::size_t qubits,
                                          const std::vector<pauli::PauliString>& assignment) {
    CliffordStrategy s;
    s.qubits = qubits;
    for (const auto& p : assignment) s.bob.push_back(p.transposed());
    for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
      std::vector<pauli::PauliString> row;
      for (auto v : bcs.members(c)) row.push_back(assignment[v]);
      s.alice.push_back(std::move(row));
    }
    return s;
  }
};

struct PairAgreement {
  std::size_t constraint = 0;
  std::size_t var = 0;
  double agreement = 0.0;
};

struct AuditReport {
  std::vector<PairAgreement> pairs;
  std::vector<std::size_t> lost_constraints;
  double min_pair = 1.0;
  double avg_win = 0.0;
};

// tr(P Q^T) / 2^q for Hermitian strings: +-1 when the bit patterns agree, 0 otherwise.
inline int normalized_trace_transpose(const pauli::PauliString& p, const pauli::PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) throw std::invalid_argument("qubit-count mismatch between strategies");
  if (!(p.x() == q.x()) || !(p.z() == q.z())) return 0;
  return pauli::multiply(p, q.transposed()).sign();
}

inline AuditReport audit_clifford_strategy(const bcs::Bcs& bcs, const CliffordStrategy& s) {
  if (s.alice.size() != bcs.num_constraints() || s.bob.size() != bcs.num_vars()) {
    throw std::invalid_argument("strategy does not cover the BCS");
  }
  AuditReport rep;
  double total = 0.0;
  for (std::size_t c = 0; c < bcs.num_constraints(); ++c) {
    const auto members = bcs.members(c);
    const auto& strings = s.alice[c];
    if (strings.size() != members.size()) throw std::invalid_argument("Alice's strings do not match constraint");
    bool valid = true;
    for (const auto& p : strings) {
      if (p.n_qubits() != s.qubits) throw std::invalid_argument("qubit-count mismatch between strategies");
      valid = valid && p.is_hermitian();
    }
    for (std::size_t i = 0; valid && i < strings.size(); ++i) {
      for (std::size_t j = i + 1; j < strings.size(); ++j) valid = valid && pauli::commutes(strings[i], strings[j]);
    }
    if (valid) {
      pauli::PauliString prod = pauli::PauliString::identity(s.qubits);
      for (auto v : bcs.constraints[c].vars) {
        auto it = std::lower_bound(members.begin(), members.end(), v);
        prod = prod * strings[static_cast<std::size_t>(it - members.begin())];
      }
      valid = prod == pauli::PauliString::signed_identity(s.qubits, bcs.constraints[c].rhs);
    }
    if (!valid) rep.lost_constraints.push_back(c);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (s.bob[members[i]].n_qubits() != s.qubits) throw std::invalid_argument("qubit-count mismatch between strategies");
      const double agree = valid ? (1.0 + normalized_trace_transpose(strings[i], s.bob[members[i]])) / 2.0 : 0.0;
      rep.pairs.push_back({c, members[i], agree});
      rep.min_pair = std::min(rep.min_pair, agree);
      total += agree;
    }
  }
  rep.avg_win = rep.pairs.empty() ? 0.0 : total / static_cast<double>(rep.pairs.size());
  return rep;
}

}  // namespace magicbcs::quantum
