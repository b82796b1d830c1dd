#pragma once

#include <vector>

#include "carlab/fock.hpp"
#include "carlab/mode_space.hpp"
#include "carlab/types.hpp"

namespace carlab {

// A region is a set of sites; it induces the mode set modes(W), the
// one-particle projection p_W, the local algebra A(W) generated by fields
// supported in W, and the no-particles-outside-W subspace of Fock space.
// Regions resolve sites only; fibers are never split.
struct Region {
  std::vector<int> sites;  // strictly increasing
};

void validate_region(const ModeSpace& space, const Region& w);
Region region_complement(const ModeSpace& space, const Region& w);
std::vector<int> region_modes(const ModeSpace& space, const Region& w);

// The local algebra A(W), held by its region and the coordinate generator
// fields {e_i : i in modes(W)}; A(W) is the span of monomials in fields
// supported on W, and W1 within W2 gives A(W1) within A(W2).
struct LocalAlgebraHandle {
  Region region;
  std::vector<FieldVector> generators;
};

LocalAlgebraHandle local_algebra(const ModeSpace& space, const Region& w);
// Diagonal 0/1 one-particle projection p_W.
Matrix mode_projection(const ModeSpace& space, const Region& w);
// Bitmask over modes of W.
BasisState region_mask(const ModeSpace& space, const Region& w);

// A relabeling of modes, i ->  image[i]; its second quantization is the
// signed permutation of occupation states used to re-embed compressed blocks
// with every Jordan-Wigner string intact.
struct ModePermutation {
  std::vector<int> image;
};

ModePermutation region_to_front(const ModeSpace& space, const Region& w);
ModePermutation inverse(const ModePermutation& perm);
// Gamma(P) A Gamma(P)* for the permutation one-particle map P.
Matrix conjugate_by_mode_permutation(const ModePermutation& perm, const Matrix& a);

// The conditional expectation onto A(W): compress to the subspace of states
// with no particles outside W, read the block as an operator on the Fock
// space of modes(W), and extend back by the identity on the complement.
// Acts on every normal-ordered monomial by projecting each field with p_W.
Matrix restrict_to_region(const ModeSpace& space, const Matrix& a, const Region& w);

// Independent route (mode count <= 8): expand in the normal-ordered basis,
// drop every term touching the complement, re-sum.
Matrix restrict_oracle(const ModeSpace& space, const Matrix& a, const Region& w);

// Coefficients of A = sum_{I,J} c_{I,J} a*_I a_J over ordered index subsets,
// with a*_I the product of creators in increasing mode order and a_J the
// adjoint of a*_J. Solved triangularly in increasing |I| + |J| from matrix
// elements between occupation states. Mode count <= 8.
struct NormalOrderExpansion {
  int mode_count = 0;
  std::vector<Complex> coeff;  // flat index I * 2^m + J

  Complex coefficient(BasisState creators, BasisState annihilators) const;
};

NormalOrderExpansion normal_order_expand(const ModeSpace& space, const Matrix& a);
Matrix reconstruct(const ModeSpace& space, const NormalOrderExpansion& expansion);

// The basis monomial a*_I a_J over raw modes.
Matrix basis_monomial(int mode_count, BasisState creators, BasisState annihilators);

// Signs of applying an ordered annihilator / creator string for a subset of
// modes; zero-free by precondition (subset of / disjoint from state).
int annihilate_subset_sign(BasisState state, BasisState subset);
int create_subset_sign(BasisState state, BasisState subset);

// Orthogonal projection onto the states with no particles outside W; the
// closed complement of the open projection of the left ideal generated by
// the fields supported outside W.
Matrix vacuum_projection(const ModeSpace& space, const Region& w);

// Compression by the vacuum projection; agrees with
// vacuum_projection * restrict_to_region(a) * vacuum_projection and is
// isometric on A(W).
Matrix nu_tilde(const ModeSpace& space, const Matrix& a, const Region& w);

// Membership in the closed left ideal generated by fields supported outside
// W: true iff ||restrict(A*A, W)|| < tol.
bool ideal_member(const ModeSpace& space, const Matrix& a, const Region& w, double tol);

// Fixed points of the conditional expectation are exactly its range A(W):
// true iff ||restrict(A, W) - A|| < tol.
bool membership_in_local(const ModeSpace& space, const Matrix& a, const Region& w, double tol);

// Hilbert-Schmidt-orthonormal basis of the joint commutant
// {A : V A V* = A for all V}, by iterated SVD nullspace extraction over the
// 4^m-dimensional operator space; singular values below sv_tol count as zero.
// Capped at 6 modes (operator-space dimension 4096).
std::vector<Matrix> fixed_point_algebra(const std::vector<Matrix>& unitaries,
                                        double sv_tol = 1e-8);

// || X - sum_i <B_i, X> B_i ||_F for an orthonormal family B.
double hs_projection_residual(const std::vector<Matrix>& basis, const Matrix& x);

// One-particle unitary that multiplies the modes of one site by e^{i theta}.
Matrix site_phase_unitary(const ModeSpace& space, int site, double theta);
// Diagonal one-particle unitary with one phase per site of the region,
// identity elsewhere (a point of U(L-infinity) supported on the region).
Matrix region_phase_unitary(const ModeSpace& space, const Region& w,
                            const std::vector<double>& angles);

// Second-quantized generators of the per-site phase torus on the region, one
// generic angle per site; their joint commutant equals that of the whole
// torus because occupation charges are integers bounded by the mode count.
std::vector<Matrix> site_phase_torus_generators(const ModeSpace& space, const Region& w);

}  // namespace carlab
