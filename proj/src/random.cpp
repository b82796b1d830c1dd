#include "carlab/random.hpp"

namespace carlab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Complex random_complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return Complex{re, im} / std::sqrt(2.0);
}

FieldVector random_field(const ModeSpace& space, Rng& rng) {
  FieldVector f(space.mode_count());
  for (int i = 0; i < space.mode_count(); ++i) f[i] = random_complex_gaussian(rng);
  return f;
}

FieldVector random_unit_field(const ModeSpace& space, Rng& rng) {
  FieldVector f = random_field(space, rng);
  double n = field_norm(space, f);
  while (n < 1e-12) {
    f = random_field(space, rng);
    n = field_norm(space, f);
  }
  return f / n;
}

Matrix random_std_unitary(int n, Rng& rng) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = random_complex_gaussian(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex{1.0, 0.0};
  }
  return q;
}

Matrix random_weighted_unitary(const ModeSpace& space, Rng& rng) {
  const int m = space.mode_count();
  const Matrix q = random_std_unitary(m, rng);
  const RealVector& s = space.mode_scale();
  return s.cwiseInverse().cast<Complex>().asDiagonal() * q * s.cast<Complex>().asDiagonal();
}

Matrix random_operator(std::size_t dim, Rng& rng) {
  Matrix a(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = random_complex_gaussian(rng);
  return a;
}

Monomial random_monomial(const ModeSpace& space, int creators, int annihilators, Rng& rng) {
  Monomial m;
  for (int i = 0; i < creators; ++i) m.creators.push_back(random_field(space, rng));
  for (int i = 0; i < annihilators; ++i) m.annihilators.push_back(random_field(space, rng));
  return m;
}

}  // namespace carlab
