#include "carlab/mode_space.hpp"

#include <stdexcept>
#include <string>

namespace carlab {

ModeSpace::ModeSpace(int site_count, int fiber_dim, RealVector site_weights)
    : site_count_(site_count), fiber_dim_(fiber_dim), site_weights_(std::move(site_weights)) {
  if (site_count_ < 1) throw std::invalid_argument("ModeSpace: site_count must be >= 1");
  if (fiber_dim_ < 1) throw std::invalid_argument("ModeSpace: fiber_dim must be >= 1");
  if (site_weights_.size() != site_count_)
    throw std::invalid_argument("ModeSpace: need one weight per site, got " +
                                std::to_string(site_weights_.size()));
  for (int s = 0; s < site_count_; ++s) {
    if (!(site_weights_[s] > 0.0))
      throw std::invalid_argument("ModeSpace: site weight " + std::to_string(s) +
                                  " must be strictly positive");
  }
  const int m = mode_count();
  mode_weights_.resize(m);
  mode_scale_.resize(m);
  for (int i = 0; i < m; ++i) {
    mode_weights_[i] = site_weights_[site_of_mode(i)];
    mode_scale_[i] = std::sqrt(mode_weights_[i]);
  }
}

ModeSpace::ModeSpace(int site_count, int fiber_dim)
    : ModeSpace(site_count, fiber_dim, RealVector::Ones(std::max(site_count, 1))) {}

int ModeSpace::mode_index(int site, int fiber) const {
  if (site < 0 || site >= site_count_) throw std::out_of_range("ModeSpace: site out of range");
  if (fiber < 0 || fiber >= fiber_dim_) throw std::out_of_range("ModeSpace: fiber out of range");
  return site * fiber_dim_ + fiber;
}

void check_field(const ModeSpace& space, const FieldVector& f) {
  if (f.size() != space.mode_count())
    throw std::invalid_argument("field vector has dimension " + std::to_string(f.size()) +
                                ", mode space has " + std::to_string(space.mode_count()));
}

Complex inner_product(const ModeSpace& space, const FieldVector& f, const FieldVector& g) {
  check_field(space, f);
  check_field(space, g);
  return (f.conjugate().cwiseProduct(g).cwiseProduct(space.mode_weights().cast<Complex>())).sum();
}

double field_norm(const ModeSpace& space, const FieldVector& f) {
  check_field(space, f);
  return std::sqrt(std::max(0.0, inner_product(space, f, f).real()));
}

Vector to_standard(const ModeSpace& space, const FieldVector& f) {
  check_field(space, f);
  return f.cwiseProduct(space.mode_scale().cast<Complex>());
}

Matrix to_standard_map(const ModeSpace& space, const Matrix& R) {
  const int m = space.mode_count();
  if (R.rows() != m || R.cols() != m)
    throw std::invalid_argument("one-particle map must be mode_count x mode_count");
  const RealVector& s = space.mode_scale();
  return s.cast<Complex>().asDiagonal() * R * s.cwiseInverse().cast<Complex>().asDiagonal();
}

double weighted_operator_norm(const ModeSpace& space, const Matrix& R) {
  const Matrix std = to_standard_map(space, R);
  Eigen::SelfAdjointEigenSolver<Matrix> es(std.adjoint() * std, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

bool is_weighted_unitary(const ModeSpace& space, const Matrix& U, double tol) {
  const int m = space.mode_count();
  if (U.rows() != m || U.cols() != m) return false;
  const Matrix std = to_standard_map(space, U);
  const Matrix gram = std.adjoint() * std - Matrix::Identity(m, m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff() <= tol;
}

}  // namespace carlab
