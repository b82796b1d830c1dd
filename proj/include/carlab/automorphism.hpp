#pragma once

#include "carlab/fock.hpp"
#include "carlab/mode_space.hpp"
#include "carlab/types.hpp"

namespace carlab {

// Second quantization Gamma(U) of a one-particle unitary: the Fock unitary
// acting on the n-particle sector as the n-th exterior power of U. Built
// column by column from Slater images of the occupation basis, which is
// exact for every unitary including degenerate spectra.
//
// U is given in user coordinates and must be unitary for the weighted inner
// product, within 1e-10.
Matrix second_quantize(const ModeSpace& space, const Matrix& u);

// Bogoliubov automorphism alpha_U(A) = Gamma(U) A Gamma(U)*; satisfies
// alpha_U(a(f)) = a(Uf).
Matrix apply_alpha(const ModeSpace& space, const Matrix& u, const Matrix& a);

// Quasi-free positive map for a contraction R (weighted operator norm <= 1):
// every field of the normal-ordered monomial is replaced by its image under
// R; the identity maps to itself.
Matrix apply_quasifree(const ModeSpace& space, const Matrix& r, const Monomial& monomial);

}  // namespace carlab
