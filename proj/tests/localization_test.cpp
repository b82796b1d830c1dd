#include "carlab/localization.hpp"

#include <numbers>

#include "carlab/automorphism.hpp"
#include "carlab/random.hpp"
#include "carlab/twirl.hpp"
#include "doctest.h"

using namespace carlab;

namespace {

const ModeSpace kSpace(3, 2, (RealVector(3) << 0.9, 1.4, 0.7).finished());  // m = 6
const Region kHalf{{0}};        // modes {0, 1}
const Region kRest{{1, 2}};     // modes {2..5}

FieldVector field_on(const ModeSpace& space, const Region& w, Rng& rng) {
  FieldVector f = FieldVector::Zero(space.mode_count());
  for (int mode : region_modes(space, w)) f[mode] = random_complex_gaussian(rng);
  return f;
}

}  // namespace

TEST_CASE("region plumbing") {
  CHECK(region_modes(kSpace, kHalf) == std::vector<int>{0, 1});
  CHECK(region_complement(kSpace, kHalf).sites == std::vector<int>{1, 2});
  CHECK(region_mask(kSpace, kRest) == 0b111100u);
  CHECK_THROWS_AS(validate_region(kSpace, Region{{3}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_region(kSpace, Region{{1, 1}}), std::invalid_argument);
  const Matrix p = mode_projection(kSpace, kHalf);
  CHECK((p + mode_projection(kSpace, kRest) - Matrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("mode permutations second-quantize consistently") {
  Rng rng(7);
  const ModePermutation perm = region_to_front(kSpace, kRest);
  // The same map as a one-particle permutation unitary.
  Matrix u = Matrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) u(perm.image[i], i) = 1.0;
  const ModeSpace flat(6, 1);  // permutations live in standard coordinates
  const Matrix gamma_route = second_quantize(flat, u);
  const Matrix a = random_operator(64, rng);
  const Matrix direct = conjugate_by_mode_permutation(perm, a);
  CHECK((direct - gamma_route * a * gamma_route.adjoint()).norm() < 1e-12 * a.norm());
  // Round trip.
  CHECK((conjugate_by_mode_permutation(inverse(perm), direct) - a).norm() == 0.0);
}

TEST_CASE("restriction fixes local monomials and kills outside fields") {
  Rng rng(17);
  Monomial inside;
  inside.creators.push_back(field_on(kSpace, kHalf, rng));
  inside.annihilators.push_back(field_on(kSpace, kHalf, rng));
  const Matrix local_op = monomial_operator(kSpace, inside);
  CHECK(operator_norm(restrict_to_region(kSpace, local_op, kHalf) - local_op) < 1e-12);

  Monomial crossing = inside;
  crossing.creators.push_back(field_on(kSpace, kRest, rng));
  CHECK(operator_norm(restrict_to_region(kSpace, monomial_operator(kSpace, crossing), kHalf)) ==
        0.0);
}

TEST_CASE("restriction projects every field with p_W") {
  Rng rng(27);
  const FieldVector f = random_field(kSpace, rng);
  const Matrix quadratic = smear(kSpace, f).adjoint() * smear(kSpace, f);
  FieldVector f_w = f;
  for (int mode : region_modes(kSpace, kRest)) f_w[mode] = 0.0;
  const Matrix expected = smear(kSpace, f_w).adjoint() * smear(kSpace, f_w);
  CHECK(operator_norm(restrict_to_region(kSpace, quadratic, kHalf) - expected) < 1e-12);
}

TEST_CASE("restriction against the general monomial formula") {
  Rng rng(37);
  const Matrix p = mode_projection(kSpace, kHalf);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = trial % 3;
    const int k = (trial / 3) % 3;
    const Monomial mono = random_monomial(kSpace, n, k, rng);
    Monomial projected;
    for (const auto& f : mono.creators) projected.creators.push_back(p * f);
    for (const auto& g : mono.annihilators) projected.annihilators.push_back(p * g);
    const Matrix lhs = restrict_to_region(kSpace, monomial_operator(kSpace, mono), kHalf);
    const Matrix rhs = monomial_operator(kSpace, projected);
    CHECK(operator_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("restriction is a conditional expectation onto the local algebra") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_operator(64, rng);
    const Matrix b = random_operator(64, rng);
    const Matrix fixed = restrict_to_region(kSpace, b, kHalf);
    CHECK(operator_norm(restrict_to_region(kSpace, Matrix(a * fixed), kHalf) -
                        restrict_to_region(kSpace, a, kHalf) * fixed) < 1e-9);
    CHECK(operator_norm(restrict_to_region(kSpace, Matrix(fixed * a), kHalf) -
                        fixed * restrict_to_region(kSpace, a, kHalf)) < 1e-9);
    CHECK(operator_norm(restrict_to_region(kSpace, fixed, kHalf) - fixed) < 1e-12);
    CHECK(operator_norm(fixed) <= operator_norm(a) + 1e-12);
    const Matrix psd = restrict_to_region(kSpace, Matrix(a.adjoint() * a), kHalf);
    Eigen::SelfAdjointEigenSolver<Matrix> es(psd, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-11);
  }
  const Matrix id = Matrix::Identity(64, 64);
  CHECK((restrict_to_region(kSpace, id, kHalf) - id).norm() == 0.0);
}

TEST_CASE("restriction is equivariant under outside phases") {
  Rng rng(57);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_operator(64, rng);
    const Matrix h = region_phase_unitary(kSpace, kRest, {angle(rng), angle(rng)});
    const Matrix moved = apply_alpha(kSpace, h, a);
    CHECK(operator_norm(restrict_to_region(kSpace, moved, kHalf) -
                        restrict_to_region(kSpace, a, kHalf)) < 1e-9);
  }
}

TEST_CASE("empty and full regions") {
  Rng rng(67);
  const Matrix a = random_operator(64, rng);
  const Matrix nu_empty = restrict_to_region(kSpace, a, Region{});
  CHECK((nu_empty - a(0, 0) * Matrix::Identity(64, 64)).norm() == 0.0);
  const Matrix nu_full = restrict_to_region(kSpace, a, Region{{0, 1, 2}});
  CHECK((nu_full - a).norm() == 0.0);
}

TEST_CASE("normal order expansion: pinned coefficients") {
  const ModeSpace tiny(2, 1);
  const auto one = normal_order_expand(tiny, Matrix::Identity(4, 4));
  CHECK(one.coefficient(0b00, 0b00) == Complex{1.0, 0.0});
  for (BasisState i = 0; i < 4; ++i)
    for (BasisState j = 0; j < 4; ++j)
      if (i || j) CHECK(std::abs(one.coefficient(i, j)) == 0.0);

  // a_0 a_0* = 1 - a_0* a_0.
  const Matrix swapped = elementary_annihilator(tiny, 0) * elementary_creator(tiny, 0);
  const auto e = normal_order_expand(tiny, swapped);
  CHECK(std::abs(e.coefficient(0b00, 0b00) - Complex{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(e.coefficient(0b01, 0b01) - Complex{-1.0, 0.0}) < 1e-14);
  CHECK(std::abs(e.coefficient(0b01, 0b00)) == 0.0);
  CHECK(std::abs(e.coefficient(0b11, 0b11)) == 0.0);
}

TEST_CASE("normal order expansion reconstructs random operators") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_operator(64, rng);
    const auto e = normal_order_expand(kSpace, a);
    CHECK((reconstruct(kSpace, e) - a).norm() < 1e-10 * a.norm());
  }
}

TEST_CASE("normal order expansion respects the mode cap") {
  const int old_cap = dense_mode_cap();
  set_dense_mode_cap(10);
  const ModeSpace big(9, 1);
  CHECK_THROWS_AS(normal_order_expand(big, Matrix::Zero(512, 512)), std::domain_error);
  CHECK_THROWS_AS(restrict_oracle(big, Matrix::Zero(512, 512), Region{{0}}), std::domain_error);
  set_dense_mode_cap(old_cap);
}

TEST_CASE("basis monomials match generator products") {
  const ModeSpace tiny(3, 1);
  Rng rng(87);
  for (BasisState i = 0; i < 8; ++i) {
    for (BasisState j = 0; j < 8; ++j) {
      // a*_I a_J with a*_I ascending and a_J = (a*_J)*, i.e. descending.
      Matrix product = Matrix::Identity(8, 8);
      for (int mode = 0; mode < 8; ++mode)
        if (j & (1u << mode)) product = elementary_annihilator(tiny, mode) * product;
      for (int mode = 7; mode >= 0; --mode)
        if (i & (1u << mode)) product = elementary_creator(tiny, mode) * product;
      CHECK((basis_monomial(3, i, j) - product).norm() == 0.0);
    }
  }
}

TEST_CASE("two independent restriction routes agree") {
  Rng rng(97);
  for (const int sites : {2, 3}) {
    const ModeSpace space(sites, 2);  // m = 4, 6
    const Region w{{0}};
    const std::size_t dim = fock_dimension(space.mode_count());
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = random_operator(dim, rng);
      const Matrix via_compression = restrict_to_region(space, a, w);
      const Matrix via_expansion = restrict_oracle(space, a, w);
      CHECK(operator_norm(via_compression - via_expansion) < 1e-9 * a.norm());
    }
    const Matrix id = Matrix::Identity(dim, dim);
    CHECK((restrict_oracle(space, id, w) - id).norm() == 0.0);
    const Matrix x = random_operator(dim, rng);
    const Matrix y = random_operator(dim, rng);
    CHECK((restrict_oracle(space, Matrix(x + y), w) - restrict_oracle(space, x, w) -
           restrict_oracle(space, y, w))
              .norm() < 1e-10 * (x.norm() + y.norm()));
  }
}

TEST_CASE("vacuum projection: limits and annihilation") {
  const Region all{{0, 1, 2}};
  CHECK((vacuum_projection(kSpace, all) - Matrix::Identity(64, 64)).norm() == 0.0);
  Matrix vac_only = Matrix::Zero(64, 64);
  vac_only(0, 0) = 1.0;
  CHECK((vacuum_projection(kSpace, Region{}) - vac_only).norm() == 0.0);

  Rng rng(107);
  const Matrix pbar = vacuum_projection(kSpace, kHalf);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldVector c = field_on(kSpace, kRest, rng);
    CHECK(operator_norm(smear(kSpace, c) * pbar) == 0.0);
  }
  // [P-bar, B] = 0 for generators B of the local algebra.
  const FieldVector inside = field_on(kSpace, kHalf, rng);
  const Matrix b = smear(kSpace, inside);
  CHECK(operator_norm(pbar * b - b * pbar) == 0.0);
}

TEST_CASE("compression by the vacuum projection") {
  Rng rng(117);
  const Matrix pbar = vacuum_projection(kSpace, kHalf);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_operator(64, rng);
    const Matrix direct = nu_tilde(kSpace, a, kHalf);
    CHECK((direct - pbar * a * pbar).norm() < 1e-13 * a.norm());
    CHECK((direct - pbar * restrict_to_region(kSpace, a, kHalf) * pbar).norm() <
          1e-9 * a.norm());
  }
  // Isometric on the local algebra.
  for (int trial = 0; trial < 10; ++trial) {
    Monomial mono;
    mono.creators.push_back(field_on(kSpace, kHalf, rng));
    mono.annihilators.push_back(field_on(kSpace, kHalf, rng));
    const Matrix local_op = monomial_operator(kSpace, mono);
    CHECK(operator_norm(nu_tilde(kSpace, local_op, kHalf)) ==
          doctest::Approx(operator_norm(local_op)).epsilon(1e-9));
  }
}

TEST_CASE("left-ideal membership via the restriction") {
  Rng rng(127);
  const double tol = 1e-8;
  for (int trial = 0; trial < 5; ++trial) {
    const FieldVector c = field_on(kSpace, kRest, rng);
    CHECK(ideal_member(kSpace, smear(kSpace, c), kHalf, tol));
    const Matrix b = random_operator(64, rng);
    CHECK(ideal_member(kSpace, Matrix(b * smear(kSpace, c)), kHalf, tol));
    const FieldVector inside = field_on(kSpace, kHalf, rng);
    CHECK_FALSE(ideal_member(kSpace, smear(kSpace, inside), kHalf, tol));
  }
  CHECK_FALSE(ideal_member(kSpace, Matrix(Matrix::Identity(64, 64)), kHalf, tol));
  CHECK_THROWS_AS(ideal_member(kSpace, Matrix(Matrix::Identity(64, 64)), kHalf, 0.0),
                  std::invalid_argument);
}

TEST_CASE("local algebra handles: generators and isotony") {
  const LocalAlgebraHandle handle = local_algebra(kSpace, kHalf);
  CHECK(handle.generators.size() == 2);
  const double tol = 1e-8;
  for (const FieldVector& c : handle.generators) {
    CHECK(membership_in_local(kSpace, smear(kSpace, c), kHalf, tol));
    CHECK(membership_in_local(kSpace, smear(kSpace, c), Region{{0, 2}}, tol));  // isotony
    CHECK_FALSE(membership_in_local(kSpace, smear(kSpace, c), kRest, tol));
  }
}

TEST_CASE("membership in the local algebra and isotony") {
  Rng rng(137);
  const double tol = 1e-8;
  const Region small{{0}};
  const Region large{{0, 1}};
  for (int trial = 0; trial < 5; ++trial) {
    const FieldVector in_small = field_on(kSpace, small, rng);
    CHECK(membership_in_local(kSpace, smear(kSpace, in_small), small, tol));
    CHECK(membership_in_local(kSpace, smear(kSpace, in_small), large, tol));  // isotony
    const FieldVector outside = field_on(kSpace, region_complement(kSpace, small), rng);
    CHECK_FALSE(membership_in_local(kSpace, smear(kSpace, outside), small, tol));
  }
  // Injectivity of W -> A(W) on the lattice: a generator on the symmetric
  // difference separates the two algebras.
  const FieldVector separating = field_on(kSpace, Region{{1}}, rng);
  CHECK(membership_in_local(kSpace, smear(kSpace, separating), large, tol));
  CHECK_FALSE(membership_in_local(kSpace, smear(kSpace, separating), small, tol));
}

TEST_CASE("fixed points of one mode's phase circle at m = 2") {
  const ModeSpace tiny(2, 1);
  const auto generators = site_phase_torus_generators(tiny, Region{{1}});
  const auto basis = fixed_point_algebra(generators);
  CHECK(basis.size() == 8);  // block-diagonal w.r.t. the mode-1 occupation
  // All four basis monomials of A({site 0}) are fixed.
  for (BasisState i = 0; i < 2; ++i) {
    for (BasisState j = 0; j < 2; ++j) {
      const Matrix mono = basis_monomial(2, i, j);
      CHECK(hs_projection_residual(basis, mono) < 1e-8 * mono.norm());
    }
  }
}

TEST_CASE("solver basis is Hilbert-Schmidt orthonormal and commutes") {
  const ModeSpace tiny(2, 1);
  const auto generators = site_phase_torus_generators(tiny, Region{{1}});
  const auto basis = fixed_point_algebra(generators);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Complex overlap = basis[r].conjugate().cwiseProduct(basis[c]).sum();
      CHECK(std::abs(overlap - (r == c ? Complex{1, 0} : Complex{0, 0})) < 1e-10);
    }
    for (const Matrix& v : generators)
      CHECK((v * basis[r] - basis[r] * v).norm() < 1e-9);
  }
}

TEST_CASE("adding torus circles shrinks the fixed space monotonically") {
  const ModeSpace tiny(2, 1);
  std::vector<Matrix> generators = site_phase_torus_generators(tiny, Region{{1}});
  const std::size_t with_one = fixed_point_algebra(generators).size();
  const auto more = site_phase_torus_generators(tiny, Region{{0, 1}});
  generators.insert(generators.end(), more.begin(), more.end());
  const std::size_t with_two = fixed_point_algebra(generators).size();
  CHECK(with_two <= with_one);
  CHECK(with_two == 4);  // diagonal operators in the occupation basis
}

TEST_CASE("solver caps the operator-space dimension") {
  CHECK_THROWS_AS(fixed_point_algebra({Matrix::Identity(128, 128)}), std::domain_error);
}

TEST_CASE("fixed space of the outside torus contains the local algebra") {
  // m = 4: 2 sites x 2 fibers, W = {site 0}.
  const ModeSpace space(2, 2, (RealVector(2) << 1.0, 1.7).finished());
  const Region w{{0}};
  const auto basis =
      fixed_point_algebra(site_phase_torus_generators(space, region_complement(space, w)));

  const BasisState w_mask = region_mask(space, w);
  int balanced = 0;
  for (BasisState i = 0; i < 16; ++i) {
    for (BasisState j = 0; j < 16; ++j) {
      if (std::popcount(i & ~w_mask) == std::popcount(j & ~w_mask)) ++balanced;
    }
  }
  CHECK(basis.size() == static_cast<std::size_t>(balanced));  // 4^2 * (1 + 4 + 1) = 96

  for (BasisState i = 0; i < 16; ++i) {
    for (BasisState j = 0; j < 16; ++j) {
      if (((i | j) & ~w_mask) != 0) continue;  // generators of A(W)
      const Matrix mono = basis_monomial(4, i, j);
      CHECK(hs_projection_residual(basis, mono) < 1e-8 * mono.norm());
    }
  }
}
