#include "carlab/fock.hpp"

#include <Eigen/SVD>

#include "carlab/random.hpp"
#include "doctest.h"

using namespace carlab;

namespace {

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// Independent spectral-norm oracle: full singular value decomposition.
double svd_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().maxCoeff();
}

}  // namespace

TEST_CASE("single-mode annihilator maps the occupied state to the vacuum") {
  ModeSpace space(1, 1);
  const Matrix a0 = elementary_annihilator(space, 0);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 1) = 1.0;  // |{0}> -> |vac>
  CHECK((a0 - expected).norm() == 0.0);
}

TEST_CASE("distinct elementary modes anticommute") {
  ModeSpace space(2, 1);
  const Matrix a0 = elementary_annihilator(space, 0);
  const Matrix a1 = elementary_annihilator(space, 1);
  CHECK(operator_norm(anticommutator(a0, a1)) == 0.0);
  CHECK(operator_norm(anticommutator(a0, a1.adjoint())) == 0.0);
}

TEST_CASE("elementary anticommutators reproduce the Kronecker delta") {
  ModeSpace space(3, 1);
  Rng rng(11);
  std::uniform_int_distribution<int> pick(0, 2);
  const Matrix id = Matrix::Identity(8, 8);
  for (int trial = 0; trial < 8; ++trial) {
    const int i = pick(rng);
    const int j = pick(rng);
    const Matrix ai = elementary_annihilator(space, i);
    const Matrix aj = elementary_annihilator(space, j);
    const Matrix delta = (i == j) ? id : Matrix(Matrix::Zero(8, 8));
    CHECK(operator_norm(anticommutator(ai, aj.adjoint()) - delta) < 1e-12);
  }
}

TEST_CASE("mode index and cap errors") {
  ModeSpace space(2, 1);
  CHECK_THROWS_AS(elementary_annihilator(space, 2), std::out_of_range);
  CHECK_THROWS_AS(elementary_annihilator(space, -1), std::out_of_range);
  ModeSpace big(13, 1);
  CHECK_THROWS_AS(fock_dimension(big.mode_count()), std::domain_error);
  CHECK_THROWS_AS(set_dense_mode_cap(13), std::domain_error);
  CHECK_THROWS_AS(set_dense_mode_cap(0), std::domain_error);
  set_dense_mode_cap(11);
  CHECK(fock_dimension(11) == 2048);
  set_dense_mode_cap(10);
  CHECK_THROWS_AS(fock_dimension(11), std::domain_error);
}

TEST_CASE("smearing is antilinear") {
  ModeSpace space(2, 2, (RealVector(2) << 0.5, 2.0).finished());
  Rng rng(21);
  const FieldVector f = random_field(space, rng);
  const Complex i{0.0, 1.0};
  CHECK((smear(space, i * f) - (-i) * smear(space, f)).norm() == 0.0);
  const FieldVector g = random_field(space, rng);
  CHECK((smear(space, f + g) - smear(space, f) - smear(space, g)).norm() < 1e-14);
}

TEST_CASE("smeared anticommutators reproduce the weighted inner product") {
  ModeSpace space(3, 1, (RealVector(3) << 0.7, 1.3, 2.1).finished());
  Rng rng(31);
  const std::size_t dim = fock_dimension(space.mode_count());
  const Matrix id = Matrix::Identity(dim, dim);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldVector f = random_field(space, rng);
    const FieldVector g = random_field(space, rng);
    const Matrix af = smear(space, f);
    const Matrix ag = smear(space, g);
    CHECK(operator_norm(anticommutator(af, ag.adjoint()) - inner_product(space, f, g) * id) <
          1e-12);
    CHECK(operator_norm(anticommutator(af, ag)) < 1e-12);
  }
}

TEST_CASE("field plus adjoint squares to one for unit fields") {
  ModeSpace space(2, 2, (RealVector(2) << 0.4, 1.9).finished());
  Rng rng(41);
  const FieldVector f = random_unit_field(space, rng);
  const Matrix af = smear(space, f);
  const Matrix u = af + af.adjoint();
  const std::size_t dim = u.rows();
  CHECK(operator_norm(u * u - Matrix::Identity(dim, dim)) < 1e-12);
  CHECK(operator_norm(u) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dimension mismatch is rejected") {
  ModeSpace space(2, 1);
  FieldVector f = FieldVector::Ones(3);
  CHECK_THROWS_AS(smear(space, f), std::invalid_argument);
  Monomial mono;
  mono.creators.push_back(f);
  CHECK_THROWS_AS(monomial_operator(space, mono), std::invalid_argument);
}

TEST_CASE("empty monomial gives the identity") {
  ModeSpace space(2, 1);
  const Matrix one = monomial_operator(space, Monomial{});
  CHECK((one - Matrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("monomial on orthogonal unit fields is a partial isometry") {
  ModeSpace space(4, 1, (RealVector(4) << 1.0, 0.5, 1.5, 1.0).finished());
  Rng rng(51);
  const FieldVector f = random_unit_field(space, rng);
  FieldVector g = random_field(space, rng);
  g -= inner_product(space, f, g) / inner_product(space, f, f) * f;
  g /= field_norm(space, g);
  Monomial mono;
  mono.creators.push_back(f);
  mono.annihilators.push_back(g);
  const Matrix op = monomial_operator(space, mono);
  CHECK(svd_norm(op) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(op) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monomial operator equals the explicit generator product") {
  ModeSpace space(3, 1, (RealVector(3) << 0.8, 1.1, 1.7).finished());
  Rng rng(61);
  const Monomial mono = random_monomial(space, 2, 1, rng);
  const Matrix direct = monomial_operator(space, mono);
  const Matrix product = smear(space, mono.creators[0]).adjoint() *
                         smear(space, mono.creators[1]).adjoint() *
                         smear(space, mono.annihilators[0]);
  CHECK((direct - product).norm() < 1e-13);
}

TEST_CASE("mixed commutator identity for smeared fields") {
  ModeSpace space(3, 1, (RealVector(3) << 0.9, 1.4, 0.6).finished());
  Rng rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const FieldVector f = random_field(space, rng);
    const FieldVector g = random_field(space, rng);
    const FieldVector h = random_field(space, rng);
    const Matrix lhs = smear(space, f).adjoint() * smear(space, g) * smear(space, h) -
                       smear(space, h) * smear(space, f).adjoint() * smear(space, g);
    // [a(f)* a(g), a(h)] = -{a(h), a(f)*} a(g) = -<h, f> a(g) with the
    // inner product antilinear in its first argument.
    const Matrix rhs = -inner_product(space, h, f) * smear(space, g);
    CHECK(operator_norm(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("operator norm basics") {
  ModeSpace space(3, 1);
  CHECK(operator_norm(Matrix::Identity(8, 8)) == doctest::Approx(1.0).epsilon(1e-14));
  Rng rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldVector f = random_field(space, rng);
    CHECK(operator_norm(smear(space, f)) == doctest::Approx(field_norm(space, f)).epsilon(1e-10));
  }
}

TEST_CASE("norm of a smeared field, via independent routes") {
  ModeSpace space(2, 2, (RealVector(2) << 1.6, 0.3).finished());
  Rng rng(91);
  const FieldVector f = random_field(space, rng);
  const Matrix af = smear(space, f);
  const double norm_f = field_norm(space, f);
  CHECK(svd_norm(af) == doctest::Approx(norm_f).epsilon(1e-10));
  // (a(f)* a(f))^2 = ||f||^2 a(f)* a(f)
  const Matrix n = af.adjoint() * af;
  CHECK(operator_norm(n * n - norm_f * norm_f * n) < 1e-12);
}

TEST_CASE("occupation states: vacuum, creation, orthonormality") {
  ModeSpace space(3, 1);
  const Vector vac = vacuum_state(space);
  for (int i = 0; i < 3; ++i)
    CHECK((elementary_annihilator(space, i) * vac).norm() == 0.0);
  const Vector created = elementary_creator(space, 0) * vac;
  CHECK((created - fock_state(space, {0})).norm() == 0.0);
  for (BasisState k = 0; k < 8; ++k) {
    for (BasisState l = 0; l < 8; ++l) {
      std::vector<int> km, lm;
      for (int i = 0; i < 3; ++i) {
        if (k & (1u << i)) km.push_back(i);
        if (l & (1u << i)) lm.push_back(i);
      }
      const Complex overlap = fock_state(space, km).dot(fock_state(space, lm));
      CHECK(overlap == Complex{k == l ? 1.0 : 0.0, 0.0});
    }
  }
  CHECK_THROWS_AS(fock_state(space, {3}), std::out_of_range);
}

TEST_CASE("generated monomials span the full matrix algebra") {
  // Simplicity at finite m: the 4^m basis monomials a*_I a_J, each a product
  // of the elementary generators, are linearly independent.
  for (int m = 1; m <= 4; ++m) {
    ModeSpace space(m, 1);
    const std::size_t dim = fock_dimension(m);
    std::vector<Matrix> monomials;
    for (BasisState i = 0; i < dim; ++i) {
      for (BasisState j = 0; j < dim; ++j) {
        Matrix op = Matrix::Identity(dim, dim);
        for (int mode = m - 1; mode >= 0; --mode)
          if (i & (1u << mode)) op = elementary_creator(space, mode) * op;
        Matrix right = Matrix::Identity(dim, dim);
        for (int mode = m - 1; mode >= 0; --mode)
          if (j & (1u << mode)) right = elementary_annihilator(space, mode) * right;
        monomials.push_back(op * right);
      }
    }
    Matrix gram(monomials.size(), monomials.size());
    for (std::size_t r = 0; r < monomials.size(); ++r)
      for (std::size_t c = 0; c < monomials.size(); ++c)
        gram(r, c) = monomials[r].conjugate().cwiseProduct(monomials[c]).sum();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > 1e-9);  // full rank 4^m
  }
}

TEST_CASE("involution is an antihomomorphism") {
  ModeSpace space(3, 1);
  Rng rng(101);
  const std::size_t dim = fock_dimension(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_operator(dim, rng);
    const Matrix b = random_operator(dim, rng);
    CHECK(((a * b).adjoint() - b.adjoint() * a.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("structured products match dense products") {
  ModeSpace space(3, 2, (RealVector(3) << 0.5, 1.0, 2.5).finished());
  Rng rng(111);
  const std::size_t dim = fock_dimension(space.mode_count());
  const FieldVector f = random_field(space, rng);
  const Vector d = to_standard(space, f);
  const Matrix af = smear(space, f);
  const Matrix b = random_operator(dim, rng);
  CHECK((smeared_product_left(d, false, b) - af * b).norm() < 1e-12 * b.norm());
  CHECK((smeared_product_left(d, true, b) - af.adjoint() * b).norm() < 1e-12 * b.norm());
  CHECK((smeared_product_right(b, d, false) - b * af).norm() < 1e-12 * b.norm());
  CHECK((smeared_product_right(b, d, true) - b * af.adjoint()).norm() < 1e-12 * b.norm());
}

TEST_CASE("sparse states agree with dense application") {
  ModeSpace space(3, 1, (RealVector(3) << 1.2, 0.6, 1.0).finished());
  Rng rng(121);
  const FieldVector f = random_field(space, rng);
  const FieldVector g = random_field(space, rng);
  const Vector df = to_standard(space, f);
  const Vector dg = to_standard(space, g);
  const Matrix dense = smear(space, f).adjoint() * smear(space, g);
  for (BasisState l = 0; l < 8; ++l) {
    SparseState st = SparseState::basis(l);
    st = apply_smeared(dg, false, st, 3);
    st = apply_smeared(df, true, st, 3);
    Vector col = Vector::Zero(8);
    for (const auto& [k, amp] : st.terms) col[k] += amp;
    CHECK((col - dense.col(l)).norm() < 1e-14);
  }
}
