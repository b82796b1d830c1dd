#pragma once

#include <cstdint>
#include <random>

#include "carlab/fock.hpp"
#include "carlab/mode_space.hpp"
#include "carlab/types.hpp"

namespace carlab {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent per-sample seeds from
// (base seed, counter) so results do not depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

Complex random_complex_gaussian(Rng& rng);

FieldVector random_field(const ModeSpace& space, Rng& rng);
FieldVector random_unit_field(const ModeSpace& space, Rng& rng);

// Haar-like unitary in standard coordinates (QR of a Ginibre matrix with
// phase-fixed diagonal).
Matrix random_std_unitary(int n, Rng& rng);

// Unitary for the weighted inner product of `space`.
Matrix random_weighted_unitary(const ModeSpace& space, Rng& rng);

// Dense matrix with i.i.d. complex Gaussian entries.
Matrix random_operator(std::size_t dim, Rng& rng);

Monomial random_monomial(const ModeSpace& space, int creators, int annihilators, Rng& rng);

}  // namespace carlab
