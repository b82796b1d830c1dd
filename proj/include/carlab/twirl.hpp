#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "carlab/fock.hpp"
#include "carlab/mode_space.hpp"
#include "carlab/partition.hpp"
#include "carlab/types.hpp"

namespace carlab {

// Joint charge sectors of a partition: basis states K and L lie in the same
// sector iff |K ^ block_j| = |L ^ block_j| for every block j. The torus
// attached to the partition acts on |K> by the character of its charge
// vector, so averaging over it is exactly the pinching by these sectors.
struct ChargeSectorDecomposition {
  int mode_count = 0;
  int sector_count = 0;
  std::vector<std::int32_t> sector_of_state;  // length 2^m

  static ChargeSectorDecomposition build(int mode_count, const Partition& p);

  // Diagonal 0/1 projector onto one sector.
  Matrix projector(int sector) const;
};

// The partition conditional expectation: the Haar average over the torus
// prod_j exp(i R P_j), computed exactly as charge-sector pinching.
Matrix twirl(const ModeSpace& space, const Partition& p, const Matrix& a);

// alpha_t(A) for a single torus point, angles[j] being the phase of block j.
Matrix apply_torus_point(const ModeSpace& space, const Partition& p,
                         const std::vector<double>& angles, const Matrix& a);

// Empirical mean of alpha_t(A) over `samples` uniform torus points.
// Deterministic for a fixed seed; per-sample seeds are derived by counter.
Matrix twirl_oracle_mc(const ModeSpace& space, const Partition& p, const Matrix& a,
                       std::size_t samples, std::uint64_t seed);

// Exact finite average: charges differ by at most m per block, so averaging
// each circle over the (2m+1)-th roots of unity kills every nontrivial
// character. Independent route; must match twirl() to 1e-10.
Matrix twirl_oracle_roots(const ModeSpace& space, const Partition& p, const Matrix& a);

// Twirl for the single-block partition: projection onto the
// particle-number-commuting (gauge-invariant) subalgebra.
Matrix gicar_project(const ModeSpace& space, const Matrix& a);

// Given mutually orthogonal one-particle projections summing to 1 (weighted
// inner product), returns a weighted unitary U and a coordinate-block
// partition with U P_j U^{-1} = (projection onto block j). Already-diagonal
// 0/1 inputs return U = 1 with the blocks read off directly.
std::pair<Matrix, Partition> adapt_partition(const ModeSpace& space,
                                             const std::vector<Matrix>& projections,
                                             double tol = 1e-10);

// One balanced normal-ordered monomial with a scalar coefficient.
struct WeightedMonomial {
  Complex coefficient{1.0, 0.0};
  Monomial monomial;
};

struct CommutatorBoundReport {
  double lhs = 0.0;             // ||[twirl(A), a(f)]||
  double bound_constant = 0.0;  // C_A, independent of the partition
  double max_block_norm = 0.0;  // max_j ||P_j f||
  double rhs = 0.0;             // C_A * max_block_norm
  bool holds = false;           // lhs <= rhs + 1e-9
};

// The commutator estimate for A = sum of balanced monomials: for a single
// monomial of degree n the constant is n * n! * prod_i ||f_i|| ||g_i||, and
// terms combine by the triangle inequality. Monomials with unequal creator
// and annihilator counts are rejected.
CommutatorBoundReport commutator_bound_report(const ModeSpace& space,
                                              const std::vector<WeightedMonomial>& terms,
                                              const FieldVector& f, const Partition& p);

}  // namespace carlab
