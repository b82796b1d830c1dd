#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "carlab/mode_space.hpp"
#include "carlab/types.hpp"

namespace carlab {

// A partition of the mode set {0..m-1} into nonempty disjoint blocks; block j
// carries the coordinate projection P_j, so sum_j P_j = 1 and P_i P_j = 0.
struct Partition {
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

// Throws std::invalid_argument unless `p` partitions {0..mode_count-1}.
void validate_partition(int mode_count, const Partition& p);

Partition single_block(int mode_count);
Partition singleton_blocks(int mode_count);

// r contiguous blocks of near-equal mode count (sizes differ by at most 1,
// larger blocks first).
Partition equipartition(int mode_count, int block_count);

// P_j f: keep the coefficients of block j, zero elsewhere.
FieldVector block_restrict(const Partition& p, int block, const FieldVector& f);

// max_j ||P_j f|| in the weighted norm.
double max_block_norm(const ModeSpace& space, const Partition& p, const FieldVector& f);

// Mass distribution of a vector over the canonical mode order:
// mass_i = w_i |v_i|^2, together with its prefix sums.
struct VectorMassProfile {
  std::vector<double> mass;
  std::vector<double> cumulative;

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  // Largest single-mode contribution to the norm; no partition can push
  // every block norm below this value.
  double atom_floor() const;
};

VectorMassProfile mass_profile(const ModeSpace& space, const FieldVector& v);

// A single mode carries more mass than a block may hold: the finite-size
// obstruction to refining below epsilon.
class AtomTooLarge : public std::runtime_error {
 public:
  AtomTooLarge(int mode, double mass, double epsilon);
  int mode() const { return mode_; }
  double mass() const { return mass_; }

 private:
  int mode_;
  double mass_;
};

// Builds a partition into consecutive-mode blocks with ||P_j v|| < epsilon for
// every block, by greedy cumulative cuts along the canonical mode order.
// Throws AtomTooLarge(i, mass) when some single-mode mass w_i |v_i|^2 >= eps^2.
Partition refine_for_vector(const ModeSpace& space, const FieldVector& v, double epsilon);

}  // namespace carlab
