#pragma once

// Independent reference implementations used only by the tests. None of
// these share code paths with the library beyond plain data types.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <cmath>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;

// ---------------------------------------------------------------------------
// GF(2): exhaustive search over assignments.

inline std::optional<std::vector<int>> brute_force_gf2(const std::vector<std::vector<int>>& rows,
                                                       const std::vector<int>& rhs, std::size_t cols) {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << cols); ++a) {
    bool ok = true;
    for (std::size_t r = 0; r < rows.size() && ok; ++r) {
      int acc = 0;
      for (std::size_t c = 0; c < cols; ++c) acc ^= rows[r][c] & int((a >> c) & 1);
      ok = acc == rhs[r];
    }
    if (ok) {
      std::vector<int> out(cols);
      for (std::size_t c = 0; c < cols; ++c) out[c] = int((a >> c) & 1);
      return out;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dense single-qubit matrices.

inline Eigen::MatrixXcd pauli_2x2(char p) {
  Eigen::MatrixXcd m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Letters left to right, times sign.
inline Eigen::MatrixXcd pauli_dense(const std::string& letters, C scale = 1.0) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) m = kron(m, pauli_2x2(c));
  return m * scale;
}

// ---------------------------------------------------------------------------
// Sign-system enumeration.
//
// Independently of the library: eliminate with the highest-index column as
// pivot first, express every variable as C_i times a product of free
// variables, write out every constraint word, every commutation word
// A_i A_j A_i A_j for co-occurring pairs and every involution word A_i A_i,
// bubble-sort each with explicit swaps, then try every assignment of the
// unknowns. Returns nullopt when the unknown count exceeds max_unknowns.

struct OracleBcs {
  std::size_t vars = 0;
  std::vector<std::pair<std::vector<std::size_t>, int>> constraints;
};

struct SignOracleResult {
  bool solvable = false;
  std::size_t unknowns = 0;
};

inline std::optional<SignOracleResult> sign_system_oracle(const OracleBcs& b, std::size_t max_unknowns = 20) {
  const std::size_t n = b.vars;
  // Parity rows.
  std::vector<std::vector<int>> rows;
  for (const auto& [vs, rhs] : b.constraints) {
    std::vector<int> r(n, 0);
    for (auto v : vs) r[v] ^= 1;
    rows.push_back(r);
  }
  // Reduce with pivots taken from the highest column down.
  std::vector<int> pivot_of_row;
  std::size_t prow = 0;
  for (std::size_t cc = n; cc-- > 0 && prow < rows.size();) {
    std::size_t r = prow;
    while (r < rows.size() && !rows[r][cc]) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[prow]);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o != prow && rows[o][cc]) {
        for (std::size_t c = 0; c < n; ++c) rows[o][c] ^= rows[prow][c];
      }
    }
    pivot_of_row.push_back(int(cc));
    ++prow;
  }
  std::vector<bool> dependent(n, false);
  for (auto p : pivot_of_row) dependent[std::size_t(p)] = true;
  std::vector<std::vector<std::size_t>> expr(n);
  std::map<std::size_t, std::size_t> sign_index;
  for (std::size_t v = 0; v < n; ++v) {
    if (!dependent[v]) expr[v] = {v};
  }
  for (std::size_t r = 0; r < pivot_of_row.size(); ++r) {
    const std::size_t p = std::size_t(pivot_of_row[r]);
    for (std::size_t c = 0; c < n; ++c) {
      if (c != p && rows[r][c]) expr[p].push_back(c);
    }
    sign_index.emplace(p, sign_index.size());
  }

  // Each equation: multiset of unknown labels + rhs bit.
  struct Eq {
    std::vector<std::size_t> signs;
    std::vector<std::pair<std::size_t, std::size_t>> swaps;
    int rhs = 0;
  };
  auto sort_word = [](std::vector<std::size_t> w, Eq& eq) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == w[i + 1]) {
          w.erase(w.begin() + std::ptrdiff_t(i), w.begin() + std::ptrdiff_t(i) + 2);
          changed = true;
          break;
        }
        if (w[i] > w[i + 1]) {
          eq.swaps.emplace_back(w[i + 1], w[i]);
          std::swap(w[i], w[i + 1]);
          changed = true;
        }
      }
    }
    return w.empty();
  };

  std::vector<Eq> eqs;
  for (const auto& [vs, rhs] : b.constraints) {
    Eq eq;
    eq.rhs = rhs < 0;
    std::vector<std::size_t> w;
    for (auto v : vs) {
      if (dependent[v]) eq.signs.push_back(sign_index.at(v));
      w.insert(w.end(), expr[v].begin(), expr[v].end());
    }
    if (!sort_word(w, eq)) throw std::logic_error("oracle elimination left free variables uncancelled");
    eqs.push_back(eq);
  }
  std::set<std::pair<std::size_t, std::size_t>> cooc;
  for (const auto& [vs, rhs] : b.constraints) {
    for (auto x : vs)
      for (auto y : vs)
        if (x < y) cooc.emplace(x, y);
  }
  for (const auto& [x, y] : cooc) {
    Eq eq;
    std::vector<std::size_t> w;
    for (int rep = 0; rep < 2; ++rep) {
      w.insert(w.end(), expr[x].begin(), expr[x].end());
      w.insert(w.end(), expr[y].begin(), expr[y].end());
    }
    sort_word(w, eq);
    eqs.push_back(eq);
  }
  for (std::size_t v = 0; v < n; ++v) {
    Eq eq;
    std::vector<std::size_t> w = expr[v];
    w.insert(w.end(), expr[v].begin(), expr[v].end());
    sort_word(w, eq);
    eqs.push_back(eq);
  }

  // Label unknowns.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
  for (const auto& eq : eqs)
    for (const auto& s : eq.swaps) pair_index.emplace(s, 0);
  std::size_t next = sign_index.size();
  for (auto& [k, idx] : pair_index) idx = next++;
  SignOracleResult res;
  res.unknowns = next;
  if (next > max_unknowns) return std::nullopt;

  std::vector<std::pair<std::uint32_t, int>> masks;
  for (const auto& eq : eqs) {
    std::uint32_t m = 0;
    for (auto s : eq.signs) m ^= std::uint32_t{1} << s;
    for (const auto& s : eq.swaps) m ^= std::uint32_t{1} << pair_index.at(s);
    masks.emplace_back(m, eq.rhs);
  }
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << next); ++a) {
    bool ok = true;
    for (const auto& [m, rhs] : masks) {
      if ((std::popcount(std::uint32_t(a) & m) & 1) != rhs) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.solvable = true;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// State-vector simulation of one layer of entanglement swapping.
//
// Qubits: Alice_i = 2(i-1), Bob_i = 2(i-1)+1, little-endian in the index.
// Each site starts in Phi+. A Bell measurement at position i is
// CNOT(Bob_i -> Alice_{i+1}), H(Bob_i), then Z measurements; the target bit is
// the X-parity, the control bit the Z-parity. Returns the exact joint
// distribution of (rB_j..rB_{k-1}, rA_{j+1}..rA_k, x, z) where (x, z) labels the
// Bell state (X^x Z^z (x) I)|Phi+> of (Alice_j, Bob_k).

struct SwapOutcome {
  std::vector<int> rB;  // X-parity bits, positions j..k-1
  std::vector<int> rA;  // Z-parity bits, sites j+1..k
  int x = 0, z = 0;
  auto key() const { return std::tie(rB, rA, x, z); }
  bool operator<(const SwapOutcome& o) const { return key() < o.key(); }
};

class StateVector {
 public:
  explicit StateVector(std::size_t qubits) : n_(qubits), amp_(std::size_t{1} << qubits, 0.0) { amp_[0] = 1.0; }

  void h(std::size_t q) {
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & bit(q)) continue;
      const C a = amp_[i], b = amp_[i | bit(q)];
      amp_[i] = s * (a + b);
      amp_[i | bit(q)] = s * (a - b);
    }
  }
  void cnot(std::size_t c, std::size_t t) {
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & bit(c)) && !(i & bit(t))) std::swap(amp_[i], amp_[i | bit(t)]);
    }
  }
  // Projects qubit q onto |v>; returns the branch probability and renormalizes.
  double project(std::size_t q, int v) {
    double p = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (bool(i & bit(q)) != bool(v)) amp_[i] = 0.0;
      else p += std::norm(amp_[i]);
    }
    if (p > 0) {
      for (auto& a : amp_) a /= std::sqrt(p);
    }
    return p;
  }
  // Reduced density matrix on (qa, qb), qa the more significant.
  Eigen::Matrix4cd reduced(std::size_t qa, std::size_t qb) const {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const std::size_t mask = bit(qa) | bit(qb);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      for (std::size_t j = 0; j < amp_.size(); ++j) {
        if ((i & ~mask) != (j & ~mask)) continue;
        const int ri = 2 * bool(i & bit(qa)) + bool(i & bit(qb));
        const int rj = 2 * bool(j & bit(qa)) + bool(j & bit(qb));
        rho(ri, rj) += amp_[i] * std::conj(amp_[j]);
      }
    }
    return rho;
  }

 private:
  static std::size_t bit(std::size_t q) { return std::size_t{1} << q; }
  std::size_t n_;
  std::vector<C> amp_;
};

inline std::map<SwapOutcome, double> swap_distribution(std::size_t N, std::size_t j, std::size_t k) {
  auto alice = [](std::size_t i) { return 2 * (i - 1); };
  auto bob = [](std::size_t i) { return 2 * (i - 1) + 1; };
  StateVector init(2 * N);
  for (std::size_t i = 1; i <= N; ++i) {
    init.h(alice(i));
    init.cnot(alice(i), bob(i));
  }
  for (std::size_t i = j; i < k; ++i) {
    init.cnot(bob(i), alice(i + 1));
    init.h(bob(i));
  }
  // Bell states (X^x Z^z (x) I)|Phi+> on (Alice_j, Bob_k).
  Eigen::Vector4cd phi;
  phi << 1, 0, 0, 1;
  phi /= std::sqrt(2.0);
  std::map<SwapOutcome, double> dist;
  const std::size_t m = k - j;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * m)); ++bits) {
    StateVector s = init;
    double p = 1.0;
    SwapOutcome o;
    for (std::size_t t = 0; t < m; ++t) {
      const int zbit = int((bits >> (2 * t)) & 1);
      const int xbit = int((bits >> (2 * t + 1)) & 1);
      p *= s.project(bob(j + t), zbit);
      p *= s.project(alice(j + t + 1), xbit);
      o.rB.push_back(xbit);
      o.rA.push_back(zbit);
    }
    if (p < 1e-15) continue;
    const Eigen::Matrix4cd rho = s.reduced(alice(j), bob(k));
    for (int x = 0; x < 2; ++x) {
      for (int z = 0; z < 2; ++z) {
        Eigen::Matrix2cd f = Eigen::Matrix2cd::Identity();
        if (x) f = f * pauli_2x2('X');
        if (z) f = f * pauli_2x2('Z');
        const Eigen::Vector4cd b = kron(f, Eigen::Matrix2cd::Identity()) * phi;
        const double fid = (b.adjoint() * rho * b)(0, 0).real();
        if (fid > 1e-15) {
          o.x = x;
          o.z = z;
          dist[o] += p * fid;
        }
      }
    }
  }
  return dist;
}

}  // namespace oracle
