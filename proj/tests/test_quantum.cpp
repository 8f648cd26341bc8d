#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "magicbcs/quantum.hpp"
#include "oracles.hpp"

using namespace magicbcs;
using namespace magicbcs::quantum;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MAGICBCS_DATA_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bcs::PauliSolution mermin_solution(const bcs::Bcs& b) { return std::get<bcs::PauliSolution>(bcs::pauli_solve(b)); }

// Exact joint distribution of +-1 outcomes, by projecting the amplitude
// matrix onto every sign pattern.
std::map<std::vector<int>, double> exact_distribution(const std::vector<DenseOperator>& obs, std::size_t d) {
  std::map<std::vector<int>, double> out;
  const auto I = DenseOperator::Identity(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t mask = 0; mask < (std::size_t{1} << obs.size()); ++mask) {
    DenseOperator m = DenseOperator::Identity(Eigen::Index(d), Eigen::Index(d)) / std::sqrt(double(d));
    std::vector<int> key;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const int s = (mask >> i) & 1 ? -1 : 1;
      key.push_back(s);
      m = ((I + double(s) * obs[i]) * 0.5) * m;
    }
    out[key] = m.squaredNorm();
  }
  return out;
}

}  // namespace

TEST(Permutation, VerifiesForEvenN) {
  for (std::size_t n : {6u, 8u, 10u}) {
    const auto g = game::build_game_bcs(n);
    const auto sol = permutation_solution(g);
    EXPECT_EQ(sol.dim, n);
    const auto rep = verify_operator_solution(g.bcs, sol, 1e-9);
    EXPECT_TRUE(rep.ok()) << n << " herm " << rep.hermitian << " inv " << rep.involution << " comm "
                          << rep.commutator << " prod " << rep.product;
  }
}

TEST(Permutation, ModifiedGameVerifies) {
  const auto g = game::build_game_bcs(8, true);
  EXPECT_TRUE(verify_operator_solution(g.bcs, permutation_solution(g)).ok());
}

TEST(Permutation, SignLawAndSelfCorrelation) {
  const auto g = game::build_game_bcs(8);
  const auto sol = permutation_solution(g);
  DenseOperator prod = DenseOperator::Identity(8, 8);
  for (int v = 1; v <= 8; ++v) prod = prod * sol.at(g.a(v));
  EXPECT_LT(max_abs(prod + DenseOperator::Identity(8, 8)), 1e-12);
  for (std::size_t v = 0; v < g.bcs.num_vars(); ++v) {
    EXPECT_NEAR(correlation(sol.at(v), sol.at(v)), 1.0, 1e-12) << g.bcs.variables[v];
    // Operators are real, so the transpose is the operator itself.
    EXPECT_NEAR(correlation(sol.at(v), sol.at(v).transpose().transpose()), 1.0, 1e-12);
  }
}

TEST(Correlation, MatchesDenseOracle) {
  const auto Y = oracle::pauli_dense("Y");
  const auto XY = oracle::pauli_dense("XY");
  // <Phi+| Y (x) Y |Phi+> = -1, <Phi+| Y (x) Y^T |Phi+> = 1.
  EXPECT_NEAR(correlation(Y, Y), -1.0, 1e-12);
  EXPECT_NEAR(correlation(Y, Y.transpose()), 1.0, 1e-12);
  EXPECT_NEAR(correlation(XY, oracle::pauli_dense("XI")), 0.0, 1e-12);
  // Linearity in the first argument.
  const auto A = oracle::pauli_dense("ZZ"), B = oracle::pauli_dense("XX");
  EXPECT_NEAR(correlation(0.3 * A + 0.7 * B, B), 0.3 * correlation(A, B) + 0.7 * correlation(B, B), 1e-12);
  EXPECT_THROW(correlation(Y, XY), std::invalid_argument);
}

TEST(Verify, FlagsBrokenSolutions) {
  const auto g = game::build_game_bcs(6);
  auto sol = permutation_solution(g);
  sol.set(g.x(1, 2), -sol.at(g.x(1, 2)));
  const auto rep = verify_operator_solution(g.bcs, sol);
  EXPECT_FALSE(rep.ok());
  EXPECT_GT(rep.product, 0.5);
  ASSERT_TRUE(rep.worst_product_constraint);

  OperatorSolution partial(6, g.bcs.num_vars());
  EXPECT_THROW(verify_operator_solution(g.bcs, partial), std::invalid_argument);
}

TEST(Complete, PropagatesFromSeeds) {
  auto b = bcs::parse_bcs("a b c = -1\n");
  OperatorSolution s(2, 3);
  s.set(0, oracle::pauli_dense("Z"));
  s.set(1, oracle::pauli_dense("I"));
  const auto full = complete_solution(b, s);
  EXPECT_LT(max_abs(full.at(2) - oracle::pauli_dense("Z", -1.0)), 1e-12);
  OperatorSolution stuck(2, 3);
  stuck.set(0, oracle::pauli_dense("Z"));
  EXPECT_THROW(complete_solution(b, stuck), std::runtime_error);
}

TEST(Measure, RejectsNonCommuting) {
  auto st = SharedState::max_entangled(2);
  Rng rng(1, 0);
  EXPECT_THROW(measure_commuting(st, Side::Alice, {oracle::pauli_dense("X"), oracle::pauli_dense("Z")}, rng),
               std::invalid_argument);
}

// Sampled frequencies in either measurement order match the exact joint
// distribution of the commuting set.
TEST(Measure, OrderInvariance) {
  const auto b = bcs::parse_bcs(slurp("mermin.bcs"));
  const auto sol = from_pauli(mermin_solution(b));
  const std::vector<DenseOperator> row{sol.at(3), sol.at(4), sol.at(5)};
  const std::vector<DenseOperator> rev{sol.at(5), sol.at(4), sol.at(3)};
  const auto exact = exact_distribution(row, 4);
  const auto exact_rev = exact_distribution(rev, 4);
  for (const auto& [k, p] : exact) {
    std::vector<int> r(k.rbegin(), k.rend());
    EXPECT_NEAR(p, exact_rev.at(r), 1e-12);
  }
  const int T = 20000;
  std::map<std::vector<int>, int> fwd, bwd;
  for (int t = 0; t < T; ++t) {
    Rng rng(9, t);
    auto s1 = SharedState::max_entangled(4);
    ++fwd[measure_commuting(s1, Side::Alice, row, rng)];
    auto s2 = SharedState::max_entangled(4);
    auto o = measure_commuting(s2, Side::Alice, rev, rng);
    ++bwd[{o[2], o[1], o[0]}];
  }
  for (const auto& [k, p] : exact) {
    const double sigma = std::sqrt(T * p * (1 - p)) + 1e-9;
    EXPECT_LE(std::abs(fwd[k] - T * p), 5 * sigma + 1e-9);
    EXPECT_LE(std::abs(bwd[k] - T * p), 5 * sigma + 1e-9);
  }
}

TEST(Measure, BobSideUsesTranspose) {
  // Alice Y, Bob Y^T on Phi+: outcomes always agree.
  const auto Y = oracle::pauli_dense("Y");
  for (int t = 0; t < 200; ++t) {
    Rng rng(3, t);
    auto st = SharedState::max_entangled(2);
    const int a = measure_commuting(st, Side::Alice, {Y}, rng)[0];
    const int b = measure_commuting(st, Side::Bob, {Y.transpose()}, rng)[0];
    ASSERT_EQ(a, b);
  }
}

TEST(Play, PerfectStrategiesAlwaysWin) {
  const auto b = bcs::parse_bcs(slurp("mermin.bcs"));
  const auto ms = from_pauli(mermin_solution(b));
  const auto g8 = game::build_game_bcs(8);
  const auto ps = permutation_solution(g8);
  const auto q8 = game::enumerate_questions(g8);
  const auto g5 = game::build_game_bcs(5);
  const auto cs = from_classical(*bcs::classical_solve(g5.bcs));
  const auto q5 = game::enumerate_questions(g5);
  for (std::size_t t = 0; t < 2000; ++t) {
    Rng rng(11, t);
    const std::size_t c = rng.below(b.num_constraints());
    const auto m = b.members(c);
    ASSERT_TRUE(play_round(b, ms, {c, m[rng.below(m.size())]}, rng).won);
    ASSERT_TRUE(play_round(g8.bcs, ps, game::sample_question(q8, rng), rng).won);
    ASSERT_TRUE(play_round(g5.bcs, cs, game::sample_question(q5, rng), rng).won);
  }
}

TEST(Play, FlippedOperatorLoses) {
  const auto g = game::build_game_bcs(6);
  auto sol = permutation_solution(g);
  sol.set(g.a(1), -sol.at(g.a(1)));
  bool lost = false;
  for (std::size_t c = 0; c < g.bcs.num_constraints() && !lost; ++c) {
    for (auto v : g.bcs.members(c)) {
      Rng rng(c, v);
      if (!play_round(g.bcs, sol, {c, v}, rng).won) lost = true;
    }
  }
  EXPECT_TRUE(lost);
}

TEST(Play, QuestionOutsideConstraintThrows) {
  const auto g = game::build_game_bcs(6);
  const auto sol = permutation_solution(g);
  Rng rng(1, 0);
  EXPECT_THROW(play_round(g.bcs, sol, {0, g.a(6)}, rng), std::invalid_argument);
}

// Audit of supplied Pauli strategies

TEST(Audit, ReferenceForN4IsPerfect) {
  const auto g = game::build_game_bcs(4);
  const auto sol = bcs::parse_solution(g.bcs, slurp("n4_reference.sol"));
  const auto rep = audit_clifford_strategy(g.bcs, CliffordStrategy::from_assignment(g.bcs, 2, sol.assignment));
  EXPECT_TRUE(rep.lost_constraints.empty());
  EXPECT_DOUBLE_EQ(rep.min_pair, 1.0);
  EXPECT_DOUBLE_EQ(rep.avg_win, 1.0);
}

TEST(Audit, OddYStringsAgreeAfterTranspose) {
  auto b = bcs::parse_bcs("p q = 1\n");
  const std::vector<pauli::PauliString> a{pauli::parse_pauli("+Y"), pauli::parse_pauli("+Y")};
  const auto rep = audit_clifford_strategy(b, CliffordStrategy::from_assignment(b, 1, a));
  EXPECT_DOUBLE_EQ(rep.min_pair, 1.0);
}

TEST(Audit, IdentityBobMatchesDirectTrace) {
  const auto g = game::build_game_bcs(4);
  const auto sol = bcs::parse_solution(g.bcs, slurp("n4_reference.sol"));
  auto s = CliffordStrategy::from_assignment(g.bcs, 2, sol.assignment);
  for (auto& p : s.bob) p = pauli::PauliString::identity(2);
  const auto rep = audit_clifford_strategy(g.bcs, s);
  for (const auto& pr : rep.pairs) {
    const auto members = g.bcs.members(pr.constraint);
    const auto pos = std::size_t(std::find(members.begin(), members.end(), pr.var) - members.begin());
    const auto A = pauli::to_matrix(s.alice[pr.constraint][pos]);
    const double tr = A.trace().real() / 4.0;
    EXPECT_DOUBLE_EQ(pr.agreement, (1.0 + tr) / 2.0);
    EXPECT_TRUE(pr.agreement == 0.0 || pr.agreement == 0.5 || pr.agreement == 1.0);
  }
}

TEST(Audit, QubitMismatchThrows) {
  auto b = bcs::parse_bcs("p q = 1\n");
  CliffordStrategy s;
  s.qubits = 1;
  s.alice = {{pauli::parse_pauli("+X"), pauli::parse_pauli("+X")}};
  s.bob = {pauli::parse_pauli("+XX"), pauli::parse_pauli("+X")};
  EXPECT_THROW(audit_clifford_strategy(b, s), std::invalid_argument);
}
