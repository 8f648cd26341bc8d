// Solves the Mermin-Peres magic square with Pauli strings and plays it.
//   demo_mermin [rounds] [seed]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "magicbcs/magicbcs.hpp"

using namespace magicbcs;

int main(int argc, char** argv) {
  const std::size_t rounds = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

  bcs::Bcs square;
  for (int v = 1; v <= 9; ++v) square.add_variable("v" + std::to_string(v));
  // rows multiply to +1, columns to +1 except the last
  for (std::size_t r = 0; r < 3; ++r) square.add_constraint({3 * r, 3 * r + 1, 3 * r + 2}, 1);
  for (std::size_t c = 0; c < 3; ++c) square.add_constraint({c, c + 3, c + 6}, c == 2 ? -1 : 1);

  std::cout << bcs::serialize_bcs(square) << "\n";
  if (!bcs::classical_solve(square)) std::cout << "no classical assignment\n";

  auto r = bcs::pauli_solve(square);
  const auto* sol = std::get_if<bcs::PauliSolution>(&r);
  if (!sol) {
    std::cerr << "no Pauli solution?\n";
    return 1;
  }
  std::cout << "Pauli solution on " << sol->qubits << " qubits:\n";
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t col = 0; col < 3; ++col) std::cout << "  " << pauli::format_pauli(sol->assignment[3 * row + col]);
    std::cout << "\n";
  }

  const auto ops = quantum::from_pauli(*sol);
  std::size_t won = 0;
  for (std::size_t t = 0; t < rounds; ++t) {
    Rng rng(seed, t);
    const std::size_t alpha = rng.below(square.num_constraints());
    const auto members = square.members(alpha);
    const std::size_t beta = members[rng.below(members.size())];
    if (quantum::play_round(square, ops, {alpha, beta}, rng).won) ++won;
  }
  std::cout << "won " << won << "/" << rounds << " rounds\n";
  return won == rounds ? 0 : 1;
}
