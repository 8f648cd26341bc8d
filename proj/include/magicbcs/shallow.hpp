#pragma once

// The two-round relation problem on a line of N sites, and its one-round
// sampling variant.
//
// Each site i holds three EPR pairs (layers l = 0,1,2), Alice's half and
// Bob's half. Round 1 swaps entanglement along sites j..k with Bell
// measurements on (Bob_i, Alice_{i+1}), leaving Alice_j and Bob_k sharing
// (X^x Z^z (x) I)|Phi+> per layer, where x is the XOR of the X-parity bits
// and z the XOR of the Z-parity bits. Round 2 corrects that frame on Alice's
// side and plays the game on the three repaired pairs.
//
// Bits and signs: bit 0 is +1, bit 1 is -1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magicbcs/bcs.hpp"
#include "magicbcs/game.hpp"
#include "magicbcs/quantum.hpp"
#include "magicbcs/rng.hpp"

namespace magicbcs::shallow {

inline constexpr std::size_t kLayers = 3;

struct RelationInstance {
  std::size_t N = 0;  // sites, numbered 1..N
  std::size_t n = 8;  // game size
  std::size_t j = 1;
  std::size_t k = 2;
  std::size_t alpha = 0;  // constraint id
  std::size_t beta = 0;   // variable id

  void validate() const {
    if (N < 2) throw std::invalid_argument("relation instance needs N >= 2");
    if (!(1 <= j && j < k && k <= N)) throw std::invalid_argument("relation instance needs 1 <= j < k <= N");
  }
};

struct Frame {
  bool x = false;
  bool z = false;
  bool identity() const { return !x && !z; }
  friend bool operator==(const Frame&, const Frame&) = default;
};

struct Round1Transcript {
  std::size_t N = 0;
  std::size_t j = 1;
  std::size_t k = 2;
  // Indexed [layer][site], site 1..N (entry 0 unused). Sites outside the
  // swapped range report +1.
  std::array<std::vector<int>, kLayers> rA;
  std::array<std::vector<int>, kLayers> rB;
  std::array<Frame, kLayers> frame;
};

namespace detail {

inline Round1Transcript blank_transcript(const RelationInstance& inst) {
  inst.validate();
  Round1Transcript t;
  t.N = inst.N;
  t.j = inst.j;
  t.k = inst.k;
  for (std::size_t l = 0; l < kLayers; ++l) {
    t.rA[l].assign(inst.N + 1, 1);
    t.rB[l].assign(inst.N + 1, 1);
  }
  return t;
}

inline void fill_frames(Round1Transcript& t) {
  for (std::size_t l = 0; l < kLayers; ++l) {
    Frame f;
    for (std::size_t i = t.j; i < t.k; ++i) {
      f.x ^= t.rB[l][i] < 0;
      f.z ^= t.rA[l][i + 1] < 0;
    }
    t.frame[l] = f;
  }
}

}  // namespace detail

// Each Bell measurement at position i in [j, k-1] yields two uniform bits:
// the X-parity bit becomes r^B_i, the Z-parity bit r^A_{i+1}.
inline Round1Transcript run_round1(const RelationInstance& inst, Rng& rng) {
  auto t = detail::blank_transcript(inst);
  for (std::size_t l = 0; l < kLayers; ++l) {
    for (std::size_t i = inst.j; i < inst.k; ++i) {
      t.rB[l][i] = rng.bit() ? -1 : 1;
      t.rA[l][i + 1] = rng.bit() ? -1 : 1;
    }
  }
  detail::fill_frames(t);
  return t;
}

// Transcript in which every Bell measurement found Phi+.
inline Round1Transcript trivial_round1(const RelationInstance& inst) {
  auto t = detail::blank_transcript(inst);
  detail::fill_frames(t);
  return t;
}

struct Syndrome {
  std::array<int, kLayers> pA{1, 1, 1};
  std::array<int, kLayers> pB{1, 1, 1};

  bool trivial() const {
    for (std::size_t l = 0; l < kLayers; ++l) {
      if (pA[l] != 1 || pB[l] != 1) return false;
    }
    return true;
  }
};

// pA(l) = prod_{i=j+1..k} rA_i(l), pB(l) = prod_{i=j..k-1} rB_i(l).
inline Syndrome compute_syndrome(const Round1Transcript& t, std::size_t j, std::size_t k) {
  if (j != t.j || k != t.k || k > t.N || j < 1) throw std::invalid_argument("syndrome range does not match transcript");
  Syndrome s;
  for (std::size_t l = 0; l < kLayers; ++l) {
    for (std::size_t i = j + 1; i <= k; ++i) s.pA[l] *= t.rA[l][i];
    for (std::size_t i = j; i < k; ++i) s.pB[l] *= t.rB[l][i];
  }
  return s;
}

inline Frame frame_from_syndrome(int pA, int pB) { return Frame{pB < 0, pA < 0}; }

// Correction for one layer: (pA, pB) = (+,+) -> I, (-,+) -> Z, (+,-) -> X, (-,-) -> XZ.
inline Eigen::Matrix2cd correction_matrix(int pA, int pB) {
  Eigen::Matrix2cd x, z;
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  Eigen::Matrix2cd c = Eigen::Matrix2cd::Identity();
  if (pB < 0) c = c * x;
  if (pA < 0) c = c * z;
  return c;
}

inline const char* correction_name(int pA, int pB) {
  if (pA > 0) return pB > 0 ? "I" : "X";
  return pB > 0 ? "Z" : "XZ";
}

// Three-qubit Kronecker product, layer 0 as the most significant qubit.
inline quantum::DenseOperator kron3(const std::array<Eigen::Matrix2cd, kLayers>& f) {
  quantum::DenseOperator m = quantum::DenseOperator::Identity(1, 1);
  for (const auto& s : f) {
    quantum::DenseOperator next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    }
    m = std::move(next);
  }
  return m;
}

inline quantum::DenseOperator frame_operator(const std::array<Frame, kLayers>& frame) {
  std::array<Eigen::Matrix2cd, kLayers> f;
  for (std::size_t l = 0; l < kLayers; ++l) {
    Eigen::Matrix2cd x, z;
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    f[l] = Eigen::Matrix2cd::Identity();
    if (frame[l].x) f[l] = f[l] * x;
    if (frame[l].z) f[l] = f[l] * z;
  }
  return kron3(f);
}

// State of the three end-to-end pairs: (F (x) I)|Phi+>^{(x)3} as an 8 x 8 amplitude matrix.
inline quantum::SharedState swapped_state(const std::array<Frame, kLayers>& frame) {
  auto st = quantum::SharedState::max_entangled(8);
  st.amplitudes = frame_operator(frame) * st.amplitudes;
  return st;
}

inline double fidelity_with_phi_plus(const quantum::SharedState& st) {
  const auto overlap = st.amplitudes.trace() / std::sqrt(static_cast<double>(st.dim));
  return std::norm(overlap);
}

struct RelationOutputs {
  std::array<int, kLayers> alice{1, 1, 1};  // r_j^A
  std::array<int, kLayers> bob{1, 1, 1};    // r_k^B
};

struct Round2Options {
  bool apply_correction = true;
};

struct Round2Result {
  RelationOutputs outputs;
  double fidelity = 0.0;  // with Phi+^{(x)3} just before measurement
};

namespace detail {

inline void check_game(const bcs::Bcs& game, const quantum::OperatorSolution& sol, const RelationInstance& inst) {
  if (sol.dim != 8) throw std::invalid_argument("relation strategy needs an 8-dimensional operator solution");
  if (inst.alpha >= game.num_constraints()) throw std::out_of_range("unknown constraint id alpha");
  if (inst.beta >= game.num_vars()) throw std::out_of_range("unknown variable id beta");
}

// Alice measures the members of alpha (ascending) and Bob the transpose of beta.
inline RelationOutputs measure_game(const bcs::Bcs& game, const quantum::OperatorSolution& sol,
                                    const RelationInstance& inst, quantum::SharedState& st, Rng& rng) {
  const auto members = game.members(inst.alpha);
  if (members.size() > kLayers) throw std::invalid_argument("constraint has more than three variables");
  std::vector<quantum::DenseOperator> obs;
  for (auto v : members) obs.push_back(sol.at(v));
  RelationOutputs out;
  const auto a = quantum::measure_commuting(st, quantum::Side::Alice, obs, rng);
  for (std::size_t i = 0; i < a.size(); ++i) out.alice[i] = a[i];
  out.bob[0] = quantum::measure_commuting(st, quantum::Side::Bob, {sol.at(inst.beta).transpose()}, rng).front();
  return out;
}

}  // namespace detail

inline Round2Result run_round2(const bcs::Bcs& game, const RelationInstance& inst, const Round1Transcript& t,
                               const quantum::OperatorSolution& sol, Rng& rng, Round2Options opt = {}) {
  detail::check_game(game, sol, inst);
  const Syndrome s = compute_syndrome(t, inst.j, inst.k);
  auto st = swapped_state(t.frame);
  if (opt.apply_correction) {
    std::array<Eigen::Matrix2cd, kLayers> c;
    for (std::size_t l = 0; l < kLayers; ++l) c[l] = correction_matrix(s.pA[l], s.pB[l]);
    st.amplitudes = kron3(c) * st.amplitudes;
  }
  Round2Result r;
  r.fidelity = fidelity_with_phi_plus(st);
  if (opt.apply_correction && r.fidelity < 1.0 - 1e-9) {
    throw std::logic_error("frame correction failed to restore Phi+ (fidelity " + std::to_string(r.fidelity) + ")");
  }
  r.outputs = detail::measure_game(game, sol, inst, st, rng);
  return r;
}

// Alice's bits must satisfy constraint alpha; when beta is one of its
// variables Bob's first bit must also match Alice's bit for beta.
inline bool check_relation(const bcs::Bcs& game, const RelationInstance& inst, const RelationOutputs& out) {
  if (inst.alpha >= game.num_constraints()) throw std::out_of_range("unknown constraint id alpha");
  if (inst.beta >= game.num_vars()) throw std::out_of_range("unknown variable id beta");
  const auto members = game.members(inst.alpha);
  if (members.size() > kLayers) throw std::invalid_argument("constraint has more than three variables");
  std::vector<int> values(out.alice.begin(), out.alice.begin() + static_cast<std::ptrdiff_t>(members.size()));
  if (quantum::constraint_product(game.constraints[inst.alpha], members, values) != game.constraints[inst.alpha].rhs) {
    return false;
  }
  auto it = std::lower_bound(members.begin(), members.end(), inst.beta);
  if (it == members.end() || *it != inst.beta) return true;
  return values[static_cast<std::size_t>(it - members.begin())] == out.bob[0];
}

enum class SamplingCase { Case1, Case2, Invalid };

inline const char* to_string(SamplingCase c) {
  switch (c) {
    case SamplingCase::Case1: return "Case1";
    case SamplingCase::Case2: return "Case2";
    case SamplingCase::Invalid: return "Invalid";
  }
  return "?";
}

struct SamplingResult {
  Round1Transcript transcript;
  RelationOutputs outputs;
  SamplingCase which = SamplingCase::Case2;
};

// Single round: swap, then play immediately on the uncorrected pairs.
inline SamplingResult run_sampling_trial(const bcs::Bcs& game, const RelationInstance& inst,
                                         const quantum::OperatorSolution& sol, Rng& rng,
                                         const Round1Transcript* forced = nullptr) {
  detail::check_game(game, sol, inst);
  SamplingResult r;
  r.transcript = forced ? *forced : run_round1(inst, rng);
  auto st = swapped_state(r.transcript.frame);
  r.outputs = detail::measure_game(game, sol, inst, st, rng);
  const bool parities_ok = compute_syndrome(r.transcript, inst.j, inst.k).trivial();
  const bool holds = check_relation(game, inst, r.outputs);
  r.which = !parities_ok ? SamplingCase::Case2 : (holds ? SamplingCase::Case1 : SamplingCase::Invalid);
  return r;
}

// Uniform j < k on N sites and uniform alpha. beta is drawn from alpha's
// variables half of the time and from all variables otherwise.
inline RelationInstance random_instance(const bcs::Bcs& game, std::size_t N, std::size_t n, Rng& rng) {
  RelationInstance inst;
  inst.N = N;
  inst.n = n;
  std::size_t a = rng.below(N), b = rng.below(N - 1);
  if (b >= a) ++b;
  inst.j = std::min(a, b) + 1;
  inst.k = std::max(a, b) + 1;
  inst.alpha = rng.below(game.num_constraints());
  if (rng.bit()) {
    const auto m = game.members(inst.alpha);
    inst.beta = m[rng.below(m.size())];
  } else {
    inst.beta = rng.below(game.num_vars());
  }
  return inst;
}

}  // namespace magicbcs::shallow
