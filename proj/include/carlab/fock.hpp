#pragma once

#include <bit>
#include <cstddef>
#include <utility>
#include <vector>

#include "carlab/mode_space.hpp"
#include "carlab/types.hpp"

namespace carlab {

// ---------------------------------------------------------------------------
// Fock representation over m modes, realized by Jordan-Wigner matrices on the
// 2^m occupation basis. Conventions, frozen for every module:
//   * basis states are bitmasks K, ordered by integer value; mode 0 = LSB;
//   * |K> for K = {k_1 < ... < k_n} equals a*_{k_1} ... a*_{k_n} |vac>;
//   * a_i |K> = 0 if i not in K, else (-1)^{#{j in K : j < i}} |K \ {i}>;
//   * a(f) = sum_i conj(f_i) sqrt(w_i) a_i, antilinear in f, so that
//     {a(f), a(g)*} = <f,g> 1 with the weighted inner product.
// ---------------------------------------------------------------------------

// Dense representations are capped: default 10 modes, hard maximum 12.
int dense_mode_cap();
void set_dense_mode_cap(int cap);
constexpr int kHardModeCap = 12;

// 2^m, after checking m against the dense cap. Throws std::domain_error
// with an explanatory message when the cap is exceeded.
std::size_t fock_dimension(int mode_count);

inline int jw_sign(BasisState k, int mode) {
  return (std::popcount(k & ((BasisState{1} << mode) - 1u)) & 1) ? -1 : 1;
}

// --- elementary generators -------------------------------------------------

Matrix elementary_annihilator(const ModeSpace& space, int mode);
Matrix elementary_creator(const ModeSpace& space, int mode);

// --- smeared generators ----------------------------------------------------

// a(f) as a dense matrix.
Matrix smear(const ModeSpace& space, const FieldVector& f);

// Normal-ordered monomial a(f_1)* ... a(f_n)* a(g_1) ... a(g_k).
// Empty lists give the identity.
struct Monomial {
  std::vector<FieldVector> creators;
  std::vector<FieldVector> annihilators;
};

Matrix monomial_operator(const ModeSpace& space, const Monomial& monomial);

// --- states ----------------------------------------------------------------

// Occupation basis vector |K> for K given as a list of mode indices.
Vector fock_state(const ModeSpace& space, const std::vector<int>& occupied);
Vector vacuum_state(const ModeSpace& space);

// Total number operator sum_i a_i* a_i (diagonal).
Matrix number_operator(const ModeSpace& space);

// --- norms -----------------------------------------------------------------

// Spectral norm (largest singular value), via the Hermitian eigenproblem of
// A* A; relative accuracy well below 1e-10 at the supported sizes.
double operator_norm(const Matrix& a);

// --- structured applications ----------------------------------------------
// These compute products with smeared generators in O(m 4^m) instead of a
// dense O(8^m) matrix product. `coeffs` are standard coordinates, i.e.
// to_standard(space, f); dagger selects a(f)* instead of a(f).

// a(f)^(*) . b
Matrix smeared_product_left(const Vector& coeffs, bool dagger, const Matrix& b);
// b . a(f)^(*)
Matrix smeared_product_right(const Matrix& b, const Vector& coeffs, bool dagger);

// In-place action on a state vector.
void apply_smeared(const Vector& coeffs, bool dagger, const Vector& in, Vector& out);

// --- sparse states ----------------------------------------------------------
// A few-term amplitude list over basis states; applying a smeared generator
// to a basis state keeps the support polynomial in m, which the CAR
// verification campaigns exploit.

struct SparseState {
  std::vector<std::pair<BasisState, Complex>> terms;  // sorted by state, merged

  static SparseState basis(BasisState k) { return SparseState{{{k, Complex{1.0, 0.0}}}}; }
  SparseState& operator*=(Complex scale);
};

SparseState apply_smeared(const Vector& coeffs, bool dagger, const SparseState& in,
                          int mode_count);
SparseState add(const SparseState& x, const SparseState& y);
// sum_K |x_K - y_K|^2
double distance_squared(const SparseState& x, const SparseState& y);

}  // namespace carlab
