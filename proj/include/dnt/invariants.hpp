#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Seeded property suites over generated instances. Each returns one outcome
// with the number of cases examined and, on failure, the first witness.
namespace dnt::checks {

struct Outcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
};

/// Classical U and complete BPAs: ECR equals Dempster's rule (n = 2, 3), 1e-12.
Outcome dst_reduction(std::uint64_t seed, std::size_t instances = 200);
/// Fusion vs brute_force_ecr (1e-10) and measures vs brute_force_measures (1e-12).
Outcome oracle_equivalence(std::uint64_t seed, std::size_t instances = 200);
/// Bel ≤ Pl, duality, the two complement bounds, monotonicity and the
/// imprecision decomposition, exhaustively over A ⊆ Θ.
Outcome measure_theorems(std::uint64_t seed, std::size_t instances = 100);
/// check_belief_function for n = 2, 3, 4 on relation-built U.
Outcome superadditivity(std::uint64_t seed, std::size_t instances = 20, std::size_t trials = 1000);
/// pl_vector against plausibility, and mass recovery from Pl = D·U.
Outcome pl_inversion(std::uint64_t seed, std::size_t instances = 50);
/// Relation-built U is full rank with R < 1 off the diagonal and loses rank
/// once one off-diagonal entry is 1.
Outcome rank_construction(std::uint64_t seed, std::size_t instances = 100);
/// The K_D^1/K_D^2 decomposition, D(X) closed form, monotonicity and boundary
/// identities on a grid of (Q1, Q2, δ) per base-conflict configuration.
Outcome open_world_algebra(std::uint64_t seed, std::size_t configs = 20, std::size_t grid = 21);
/// Commutativity and permutation invariance of ECR, plus a non-associativity witness.
Outcome ecr_structure(std::uint64_t seed, std::size_t instances = 200);

std::vector<Outcome> run_all(std::uint64_t seed, std::size_t trials);

}  // namespace dnt::checks
