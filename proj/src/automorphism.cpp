#include "carlab/automorphism.hpp"

#include <stdexcept>
#include <string>

namespace carlab {

Matrix second_quantize(const ModeSpace& space, const Matrix& u) {
  const int m = space.mode_count();
  if (u.rows() != m || u.cols() != m)
    throw std::invalid_argument("second_quantize: one-particle map must be m x m");
  if (!is_weighted_unitary(space, u))
    throw std::invalid_argument("second_quantize: input is not unitary (weighted inner product)");
  const std::size_t dim = fock_dimension(m);
  const Matrix u_std = to_standard_map(space, u);

  Matrix gamma = Matrix::Zero(dim, dim);
  Vector state(dim), next(dim);
  for (BasisState k = 0; k < dim; ++k) {
    state.setZero();
    state[0] = Complex{1.0, 0.0};
    // |K> = a*_{k_1} ... a*_{k_n} |vac> with k_1 < ... < k_n; the rightmost
    // creator acts first, so apply in descending mode order.
    for (int i = m - 1; i >= 0; --i) {
      if (!(k & (BasisState{1} << i))) continue;
      apply_smeared(u_std.col(i), /*dagger=*/true, state, next);
      state.swap(next);
    }
    gamma.col(k) = state;
  }
  return gamma;
}

Matrix apply_alpha(const ModeSpace& space, const Matrix& u, const Matrix& a) {
  const Matrix gamma = second_quantize(space, u);
  if (a.rows() != gamma.rows() || a.cols() != gamma.cols())
    throw std::invalid_argument("apply_alpha: operator dimension does not match the Fock space");
  return gamma * a * gamma.adjoint();
}

Matrix apply_quasifree(const ModeSpace& space, const Matrix& r, const Monomial& monomial) {
  const int m = space.mode_count();
  if (r.rows() != m || r.cols() != m)
    throw std::invalid_argument("apply_quasifree: one-particle map must be m x m");
  const double norm = weighted_operator_norm(space, r);
  if (norm > 1.0 + 1e-10)
    throw std::invalid_argument("apply_quasifree: map has weighted norm " + std::to_string(norm) +
                                " > 1, not a contraction");
  Monomial mapped;
  mapped.creators.reserve(monomial.creators.size());
  mapped.annihilators.reserve(monomial.annihilators.size());
  for (const FieldVector& f : monomial.creators) {
    check_field(space, f);
    mapped.creators.push_back(r * f);
  }
  for (const FieldVector& g : monomial.annihilators) {
    check_field(space, g);
    mapped.annihilators.push_back(r * g);
  }
  return monomial_operator(space, mapped);
}

}  // namespace carlab
