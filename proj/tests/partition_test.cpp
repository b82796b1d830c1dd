#include "carlab/partition.hpp"

#include "carlab/random.hpp"
#include "doctest.h"

using namespace carlab;

TEST_CASE("partition validation") {
  Partition good;
  good.blocks = {{0, 2}, {1}};
  validate_partition(3, good);

  Partition overlap;
  overlap.blocks = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(validate_partition(3, overlap), std::invalid_argument);

  Partition missing;
  missing.blocks = {{0}, {2}};
  CHECK_THROWS_AS(validate_partition(3, missing), std::invalid_argument);

  Partition empty_block;
  empty_block.blocks = {{0, 1, 2}, {}};
  CHECK_THROWS_AS(validate_partition(3, empty_block), std::invalid_argument);
}

TEST_CASE("equipartition shapes") {
  CHECK(equipartition(6, 1).blocks == std::vector<std::vector<int>>{{0, 1, 2, 3, 4, 5}});
  CHECK(equipartition(3, 3).block_count() == 3);
  for (int j = 0; j < 3; ++j) CHECK(equipartition(3, 3).blocks[j] == std::vector<int>{j});

  const Partition p = equipartition(10, 4);
  std::vector<std::size_t> sizes;
  for (const auto& block : p.blocks) sizes.push_back(block.size());
  CHECK(sizes == std::vector<std::size_t>{3, 3, 2, 2});
  validate_partition(10, p);

  CHECK_THROWS_AS(equipartition(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(equipartition(4, 5), std::invalid_argument);
}

TEST_CASE("uniform vector over 16 modes refines to singletons at eps 0.3") {
  ModeSpace space(16, 1);
  FieldVector v = FieldVector::Constant(16, Complex{0.25, 0.0});  // unit norm, mass 1/16 per mode
  const Partition p = refine_for_vector(space, v, 0.3);
  CHECK(p.block_count() == 16);
  for (int j = 0; j < 16; ++j)
    CHECK(field_norm(space, block_restrict(p, j, v)) == doctest::Approx(0.25));
  CHECK(max_block_norm(space, p, v) < 0.3);
}

TEST_CASE("single heavy mode: atom threshold at eps^2") {
  ModeSpace space(4, 1);
  FieldVector v = FieldVector::Zero(4);
  v[1] = Complex{0.5, 0.0};  // mass 0.25
  v[0] = v[2] = v[3] = Complex{0.1, 0.0};

  const Partition ok = refine_for_vector(space, v, 0.6);  // 0.25 < 0.36
  CHECK(max_block_norm(space, ok, v) < 0.6);

  CHECK(max_block_norm(space, refine_for_vector(space, v, 0.5001), v) < 0.5001);

  CHECK_THROWS_AS(refine_for_vector(space, v, 0.4), AtomTooLarge);  // 0.25 >= 0.16
  try {
    refine_for_vector(space, v, 0.4);
  } catch (const AtomTooLarge& e) {
    CHECK(e.mode() == 1);
    CHECK(e.mass() == doctest::Approx(0.25));
  }
}

TEST_CASE("random vectors with eps above the atom floor always succeed") {
  ModeSpace space(6, 2, (RealVector(6) << 0.3, 1.0, 2.2, 0.9, 1.4, 0.5).finished());
  Rng rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const FieldVector v = random_field(space, rng);
    const double atom_floor = mass_profile(space, v).atom_floor();
    const double total = field_norm(space, v);
    const double eps = atom_floor + (total - atom_floor) * (0.05 + 0.9 * unit(rng));
    const Partition p = refine_for_vector(space, v, eps);
    validate_partition(space.mode_count(), p);
    CHECK(max_block_norm(space, p, v) < eps);
  }
}

TEST_CASE("decreasing eps never decreases the block count") {
  ModeSpace space(8, 1, (RealVector(8) << 1.0, 0.5, 2.0, 1.0, 0.25, 1.5, 1.0, 0.75).finished());
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const FieldVector v = random_field(space, rng);
    const double atom_floor = mass_profile(space, v).atom_floor();
    const double total = field_norm(space, v);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double e1 = atom_floor + (total - atom_floor) * (0.05 + 0.9 * unit(rng));
    double e2 = atom_floor + (total - atom_floor) * (0.05 + 0.9 * unit(rng));
    if (e1 > e2) std::swap(e1, e2);
    CHECK(refine_for_vector(space, v, e1).block_count() >=
          refine_for_vector(space, v, e2).block_count());
  }
}

TEST_CASE("epsilon must be positive") {
  ModeSpace space(2, 1);
  CHECK_THROWS_AS(refine_for_vector(space, FieldVector::Zero(2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(refine_for_vector(space, FieldVector::Zero(2), -1.0), std::invalid_argument);
}
