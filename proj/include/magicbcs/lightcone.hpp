#pragma once

// Layered circuit DAGs with bounded fan-in and their lightcones.
//
// Wires are single-assignment: a gate reads wires and produces fresh ones.
// A wire nobody produces is a circuit input (leaf). Gates in layer t may only
// read leaves or wires produced in layers < t.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magicbcs/game.hpp"
#include "magicbcs/rng.hpp"

namespace magicbcs::lightcone {

enum class WireKind { Classical, Quantum };

struct Gate {
  std::size_t layer = 0;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
  std::string kind;
};

// Per-site input and output wire groups of the relation problem.
struct SiteWires {
  std::vector<std::size_t> alpha_in, beta_in, alpha_out, beta_out;
};

class CircuitDag {
 public:
  std::vector<WireKind> wires;
  std::vector<Gate> gates;
  std::vector<SiteWires> sites;

  std::size_t add_wire(WireKind k = WireKind::Classical) {
    wires.push_back(k);
    return wires.size() - 1;
  }

  std::vector<std::size_t> add_wires(std::size_t count, WireKind k = WireKind::Classical) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(add_wire(k));
    return out;
  }

  // Adds a gate producing fresh wires of the given kinds; returns them.
  std::vector<std::size_t> add_gate(std::size_t layer, std::vector<std::size_t> inputs,
                                    const std::vector<WireKind>& output_kinds, std::string kind) {
    Gate g;
    g.layer = layer;
    g.inputs = std::move(inputs);
    for (auto k : output_kinds) g.outputs.push_back(add_wire(k));
    g.kind = std::move(kind);
    gates.push_back(std::move(g));
    return gates.back().outputs;
  }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& g : gates) d = std::max(d, g.layer + 1);
    return d;
  }

  std::size_t max_fanin() const {
    std::size_t k = 0;
    for (const auto& g : gates) k = std::max(k, g.inputs.size());
    return k;
  }

  // producer[w] = gate that outputs w, if any.
  std::vector<std::optional<std::size_t>> producers() const {
    std::vector<std::optional<std::size_t>> p(wires.size());
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
      for (auto w : gates[gi].outputs) {
        if (w >= wires.size()) throw std::out_of_range("gate output refers to a missing wire");
        if (p[w]) throw std::invalid_argument("wire " + std::to_string(w) + " is produced twice");
        p[w] = gi;
      }
    }
    return p;
  }

  void validate() const {
    const auto prod = producers();
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
      for (auto w : gates[gi].inputs) {
        if (w >= wires.size()) throw std::out_of_range("gate input refers to a missing wire");
        if (prod[w] && gates[*prod[w]].layer >= gates[gi].layer) {
          throw std::invalid_argument("gate " + std::to_string(gi) + " reads a wire produced in the same or a later layer");
        }
      }
    }
    for (const auto& s : sites) {
      for (const auto* grp : {&s.alpha_in, &s.beta_in, &s.alpha_out, &s.beta_out}) {
        for (auto w : *grp) {
          if (w >= wires.size()) throw std::out_of_range("site refers to a missing wire");
        }
      }
    }
  }
};

namespace detail {

inline void check_wires(const CircuitDag& dag, const std::vector<std::size_t>& ws) {
  for (auto w : ws) {
    if (w >= dag.wires.size()) throw std::out_of_range("unknown wire " + std::to_string(w));
  }
}

// Compressed wire -> consuming gates index.
struct Consumers {
  std::vector<std::size_t> offset, gate;

  explicit Consumers(const CircuitDag& dag) : offset(dag.wires.size() + 1, 0) {
    for (const auto& g : dag.gates)
      for (auto w : g.inputs) ++offset[w + 1];
    for (std::size_t w = 0; w < dag.wires.size(); ++w) offset[w + 1] += offset[w];
    gate.resize(offset.back());
    auto fill = offset;
    for (std::size_t gi = 0; gi < dag.gates.size(); ++gi)
      for (auto w : dag.gates[gi].inputs) gate[fill[w]++] = gi;
  }
};

inline std::vector<std::size_t> forward_from(const CircuitDag& dag, const Consumers& cons,
                                             const std::vector<std::size_t>& start, std::vector<char>& seen,
                                             std::vector<char>& gate_seen) {
  std::vector<std::size_t> reached, stack;
  for (auto w : start) {
    if (!seen[w]) {
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  std::vector<std::size_t> touched_gates;
  while (!stack.empty()) {
    const auto w = stack.back();
    stack.pop_back();
    reached.push_back(w);
    for (std::size_t i = cons.offset[w]; i < cons.offset[w + 1]; ++i) {
      const auto gi = cons.gate[i];
      if (gate_seen[gi]) continue;
      gate_seen[gi] = 1;
      touched_gates.push_back(gi);
      for (auto o : dag.gates[gi].outputs) {
        if (!seen[o]) {
          seen[o] = 1;
          stack.push_back(o);
        }
      }
    }
  }
  for (auto w : reached) seen[w] = 0;
  for (auto gi : touched_gates) gate_seen[gi] = 0;
  std::sort(reached.begin(), reached.end());
  return reached;
}

}  // namespace detail

// Every wire the given wires can influence, themselves included.
inline std::vector<std::size_t> forward_lightcone(const CircuitDag& dag, const std::vector<std::size_t>& wires) {
  detail::check_wires(dag, wires);
  detail::Consumers cons(dag);
  std::vector<char> seen(dag.wires.size(), 0), gate_seen(dag.gates.size(), 0);
  return detail::forward_from(dag, cons, wires, seen, gate_seen);
}

// Circuit inputs (leaf wires) the given wires depend on.
// prod is dag.producers(); pass it in when querying many wire sets.
inline std::vector<std::size_t> backward_lightcone(const CircuitDag& dag, const std::vector<std::size_t>& wires,
                                                   const std::vector<std::optional<std::size_t>>& prod) {
  detail::check_wires(dag, wires);
  std::vector<char> seen(dag.wires.size(), 0);
  std::vector<std::size_t> stack, leaves;
  for (auto w : wires) {
    if (!seen[w]) {
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  while (!stack.empty()) {
    const auto w = stack.back();
    stack.pop_back();
    if (!prod[w]) {
      leaves.push_back(w);
      continue;
    }
    for (auto in : dag.gates[*prod[w]].inputs) {
      if (!seen[in]) {
        seen[in] = 1;
        stack.push_back(in);
      }
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

inline std::vector<std::size_t> backward_lightcone(const CircuitDag& dag, const std::vector<std::size_t>& wires) {
  return backward_lightcone(dag, wires, dag.producers());
}

struct DisjointnessResult {
  std::size_t sites = 0;
  std::size_t pairs = 0;       // N(N-1)/2
  std::size_t good_pairs = 0;  // pairs j < k where E_C holds
  double probability = 0.0;
  double bound = 0.0;          // 1 - 48 K^D / N
};

// Exact probability, over uniform pairs j < k, that Alice's outputs at j are
// outside the forward cone of Bob's inputs at k and Bob's outputs at k are
// outside the forward cone of Alice's inputs at j.
inline DisjointnessResult lightcone_disjoint_probability(const CircuitDag& dag) {
  const std::size_t N = dag.sites.size();
  if (N < 2) throw std::invalid_argument("lightcone analysis needs at least two sites");
  dag.validate();
  detail::Consumers cons(dag);
  std::vector<std::vector<std::size_t>> alpha_out_site(dag.wires.size()), beta_out_site(dag.wires.size());
  for (std::size_t s = 0; s < N; ++s) {
    for (auto w : dag.sites[s].alpha_out) alpha_out_site[w].push_back(s);
    for (auto w : dag.sites[s].beta_out) beta_out_site[w].push_back(s);
  }
  std::vector<char> seen(dag.wires.size(), 0), gate_seen(dag.gates.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t s = 0; s < N; ++s) {
    // s as Alice's site j: Bob outputs reached at k > s.
    for (auto w : detail::forward_from(dag, cons, dag.sites[s].alpha_in, seen, gate_seen)) {
      for (auto k : beta_out_site[w]) {
        if (k > s) bad.emplace_back(s, k);
      }
    }
    // s as Bob's site k: Alice outputs reached at j < s.
    for (auto w : detail::forward_from(dag, cons, dag.sites[s].beta_in, seen, gate_seen)) {
      for (auto j : alpha_out_site[w]) {
        if (j < s) bad.emplace_back(j, s);
      }
    }
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  DisjointnessResult r;
  r.sites = N;
  r.pairs = N * (N - 1) / 2;
  r.good_pairs = r.pairs - bad.size();
  r.probability = static_cast<double>(r.good_pairs) / static_cast<double>(r.pairs);
  r.bound = 1.0 - 48.0 * std::pow(static_cast<double>(dag.max_fanin()), static_cast<double>(dag.depth())) /
                      static_cast<double>(N);
  return r;
}

// Bit widths of the question encodings for the modified game of size n,
// counting the null question.
inline std::size_t bits_for(std::size_t values) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < values) ++b;
  return b;
}

// Wiring of the constant-depth quantum strategy on N sites:
//   layer 0: EPR preparation (2 qubits in) and the Bell-measurement flag
//            from the round-1 inputs of the two neighbouring sites
//   layer 1: Bell measurement (flag + 2 qubits)
//   layer 2: frame correction (2 syndrome bits + 1 qubit) per layer
//   layer 3: game measurement (question bits + 3 qubits) on each side
inline CircuitDag build_strategy_dag(std::size_t N, std::size_t n = 8) {
  if (N < 2) throw std::invalid_argument("strategy dag needs N >= 2");
  const auto counts = game::count_questions(n);
  const std::size_t alpha_bits = bits_for(counts.modified_alice + 1);
  const std::size_t beta_bits = bits_for(counts.modified_bob + 1);
  using W = WireKind;

  CircuitDag dag;
  dag.sites.resize(N);
  std::vector<std::vector<std::size_t>> syndrome(N), question_a(N), question_b(N), round1_a(N), round1_b(N);
  for (std::size_t i = 0; i < N; ++i) {
    syndrome[i] = dag.add_wires(2 * 3);
    question_a[i] = dag.add_wires(alpha_bits);
    question_b[i] = dag.add_wires(beta_bits);
    round1_a[i] = dag.add_wires(1);
    round1_b[i] = dag.add_wires(1);
    auto& s = dag.sites[i];
    s.alpha_in = syndrome[i];
    s.alpha_in.insert(s.alpha_in.end(), question_a[i].begin(), question_a[i].end());
    s.beta_in = question_b[i];
  }

  // alice_q[l][i], bob_q[l][i]: current wire of each EPR half.
  std::vector<std::vector<std::size_t>> alice_q(3, std::vector<std::size_t>(N)), bob_q = alice_q;
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t i = 0; i < N; ++i) {
      const auto anc = dag.add_wires(2, W::Quantum);
      const auto pair = dag.add_gate(0, anc, {W::Quantum, W::Quantum}, "epr");
      alice_q[l][i] = pair[0];
      bob_q[l][i] = pair[1];
    }
  }
  std::vector<std::size_t> flag(N);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    flag[i] = dag.add_gate(0, {round1_b[i][0], round1_a[i + 1][0]}, {W::Classical}, "bsm_flag")[0];
  }
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t i = 0; i + 1 < N; ++i) {
      const auto out = dag.add_gate(1, {flag[i], bob_q[l][i], alice_q[l][i + 1]},
                                    {W::Classical, W::Classical, W::Quantum, W::Quantum}, "bsm");
      bob_q[l][i] = out[2];
      alice_q[l][i + 1] = out[3];
    }
  }
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t i = 0; i < N; ++i) {
      alice_q[l][i] = dag.add_gate(2, {syndrome[i][l], syndrome[i][3 + l], alice_q[l][i]}, {W::Quantum}, "correct")[0];
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    auto in_a = question_a[i];
    for (std::size_t l = 0; l < 3; ++l) in_a.push_back(alice_q[l][i]);
    dag.sites[i].alpha_out = dag.add_gate(3, in_a, {W::Classical, W::Classical, W::Classical}, "game_alice");
    auto in_b = question_b[i];
    for (std::size_t l = 0; l < 3; ++l) in_b.push_back(bob_q[l][i]);
    dag.sites[i].beta_out = dag.add_gate(3, in_b, {W::Classical, W::Classical, W::Classical}, "game_bob");
  }
  return dag;
}

// Random local circuit: `lanes` wires per site (the first half carry Alice's
// input and output, the rest Bob's). Each gate reads its own lane plus up to
// K-1 wires within one site's distance.
inline CircuitDag random_local_dag(std::size_t N, std::size_t K, std::size_t D, Rng& rng, std::size_t lanes = 6) {
  if (N < 2 || K < 1 || lanes < 2) throw std::invalid_argument("random_local_dag needs N >= 2, K >= 1, lanes >= 2");
  CircuitDag dag;
  const std::size_t slots = N * lanes;
  std::vector<std::size_t> cur = dag.add_wires(slots);
  dag.sites.resize(N);
  const std::size_t half = lanes / 2;
  for (std::size_t s = 0; s < N; ++s) {
    for (std::size_t q = 0; q < lanes; ++q) (q < half ? dag.sites[s].alpha_in : dag.sites[s].beta_in).push_back(cur[s * lanes + q]);
  }
  for (std::size_t t = 0; t < D; ++t) {
    std::vector<std::size_t> next(slots);
    for (std::size_t p = 0; p < slots; ++p) {
      const std::size_t lo = p >= lanes ? p - lanes : 0;
      const std::size_t hi = std::min(slots - 1, p + lanes);
      const std::size_t fanin = 1 + rng.below(K);
      std::vector<std::size_t> ins{cur[p]};
      for (std::size_t tries = 0; ins.size() < fanin && tries < 4 * K; ++tries) {
        const std::size_t q = lo + rng.below(hi - lo + 1);
        if (std::find(ins.begin(), ins.end(), cur[q]) == ins.end()) ins.push_back(cur[q]);
      }
      next[p] = dag.add_gate(t, std::move(ins), {WireKind::Classical}, "local")[0];
    }
    cur = std::move(next);
  }
  for (std::size_t s = 0; s < N; ++s) {
    for (std::size_t q = 0; q < lanes; ++q) (q < half ? dag.sites[s].alpha_out : dag.sites[s].beta_out).push_back(cur[s * lanes + q]);
  }
  return dag;
}

// Depth any K-fan-in circuit needs before it can beat (1 + p_clif)/2 on the
// second round: D >= (ln N + ln((1 - p_clif)/96)) / ln K.
inline double depth_lower_bound(double N, double K, double p_clif) {
  if (K <= 1.0) throw std::invalid_argument("depth bound needs K > 1");
  return (std::log(N) + std::log((1.0 - p_clif) / 96.0)) / std::log(K);
}

// N at which the bound above turns positive, for p_clif = 1 - 1/denominator.
inline std::size_t depth_bound_threshold(const game::CliffordBound& b) { return 96 * b.denominator; }

}  // namespace magicbcs::lightcone
