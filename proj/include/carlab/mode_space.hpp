#pragma once

#include <vector>

#include "carlab/types.hpp"

namespace carlab {

// Discretized one-particle space: sites x fiber modes with a strictly
// positive measure weight per site.
//
// Mode indexing is frozen to site-major order:
//   mode(site, fiber) = site * fiber_dim + fiber.
// The weighted inner product is <f,g> = sum_i w_i conj(f_i) g_i with
// w_i the weight of mode i's site; it is antilinear in the FIRST argument.
class ModeSpace {
 public:
  ModeSpace(int site_count, int fiber_dim, RealVector site_weights);

  // All site weights equal to 1.
  ModeSpace(int site_count, int fiber_dim);

  int site_count() const { return site_count_; }
  int fiber_dim() const { return fiber_dim_; }
  int mode_count() const { return site_count_ * fiber_dim_; }

  int mode_index(int site, int fiber) const;
  int site_of_mode(int mode) const { return mode / fiber_dim_; }
  int fiber_of_mode(int mode) const { return mode % fiber_dim_; }

  double site_weight(int site) const { return site_weights_[site]; }
  double mode_weight(int mode) const { return site_weights_[site_of_mode(mode)]; }

  const RealVector& site_weights() const { return site_weights_; }
  // Per-mode weights, length mode_count().
  const RealVector& mode_weights() const { return mode_weights_; }
  // Per-mode sqrt(weight), the isometry onto standard (orthonormal) coordinates.
  const RealVector& mode_scale() const { return mode_scale_; }

 private:
  int site_count_;
  int fiber_dim_;
  RealVector site_weights_;
  RealVector mode_weights_;
  RealVector mode_scale_;
};

// Weighted inner product, antilinear in f.
Complex inner_product(const ModeSpace& space, const FieldVector& f, const FieldVector& g);

double field_norm(const ModeSpace& space, const FieldVector& f);

// Standard (orthonormal) coordinates of f: component i is sqrt(w_i) * f_i.
Vector to_standard(const ModeSpace& space, const FieldVector& f);

// Conjugation of an m x m one-particle map into standard coordinates,
// D R D^{-1} with D = diag(sqrt(w_i)).
Matrix to_standard_map(const ModeSpace& space, const Matrix& R);

// Spectral norm of R as an operator on the weighted space.
double weighted_operator_norm(const ModeSpace& space, const Matrix& R);

// True when U is unitary for the weighted inner product, within tol.
bool is_weighted_unitary(const ModeSpace& space, const Matrix& U, double tol = 1e-10);

void check_field(const ModeSpace& space, const FieldVector& f);

}  // namespace carlab
