#include "carlab/partition.hpp"

#include <algorithm>
#include <numeric>

namespace carlab {

void validate_partition(int mode_count, const Partition& p) {
  std::vector<int> seen(mode_count, 0);
  if (p.blocks.empty()) throw std::invalid_argument("partition has no blocks");
  for (const auto& block : p.blocks) {
    if (block.empty()) throw std::invalid_argument("partition contains an empty block");
    for (int mode : block) {
      if (mode < 0 || mode >= mode_count)
        throw std::invalid_argument("partition refers to mode " + std::to_string(mode) +
                                    " outside [0, " + std::to_string(mode_count) + ")");
      if (seen[mode]++)
        throw std::invalid_argument("partition blocks overlap at mode " + std::to_string(mode));
    }
  }
  for (int mode = 0; mode < mode_count; ++mode) {
    if (!seen[mode])
      throw std::invalid_argument("partition does not cover mode " + std::to_string(mode));
  }
}

Partition single_block(int mode_count) {
  Partition p;
  p.blocks.emplace_back(mode_count);
  std::iota(p.blocks[0].begin(), p.blocks[0].end(), 0);
  return p;
}

Partition singleton_blocks(int mode_count) {
  Partition p;
  for (int i = 0; i < mode_count; ++i) p.blocks.push_back({i});
  return p;
}

Partition equipartition(int mode_count, int block_count) {
  if (block_count < 1 || block_count > mode_count)
    throw std::invalid_argument("block count " + std::to_string(block_count) +
                                " out of range [1, " + std::to_string(mode_count) + "]");
  Partition p;
  const int base = mode_count / block_count;
  const int extra = mode_count % block_count;
  int next = 0;
  for (int j = 0; j < block_count; ++j) {
    const int size = base + (j < extra ? 1 : 0);
    std::vector<int> block(size);
    std::iota(block.begin(), block.end(), next);
    next += size;
    p.blocks.push_back(std::move(block));
  }
  return p;
}

FieldVector block_restrict(const Partition& p, int block, const FieldVector& f) {
  FieldVector out = FieldVector::Zero(f.size());
  for (int mode : p.blocks.at(block)) out[mode] = f[mode];
  return out;
}

double max_block_norm(const ModeSpace& space, const Partition& p, const FieldVector& f) {
  check_field(space, f);
  double best = 0.0;
  for (int j = 0; j < p.block_count(); ++j) {
    double mass = 0.0;
    for (int mode : p.blocks[j]) mass += space.mode_weight(mode) * std::norm(f[mode]);
    best = std::max(best, mass);
  }
  return std::sqrt(best);
}

double VectorMassProfile::atom_floor() const {
  double worst = 0.0;
  for (double m : mass) worst = std::max(worst, m);
  return std::sqrt(worst);
}

VectorMassProfile mass_profile(const ModeSpace& space, const FieldVector& v) {
  check_field(space, v);
  VectorMassProfile profile;
  const int m = space.mode_count();
  profile.mass.resize(m);
  profile.cumulative.resize(m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    profile.mass[i] = space.mode_weight(i) * std::norm(v[i]);
    acc += profile.mass[i];
    profile.cumulative[i] = acc;
  }
  return profile;
}

AtomTooLarge::AtomTooLarge(int mode, double mass, double epsilon)
    : std::runtime_error("mode " + std::to_string(mode) + " carries mass " +
                         std::to_string(mass) + " >= epsilon^2 = " +
                         std::to_string(epsilon * epsilon) +
                         "; no partition can push every block below epsilon"),
      mode_(mode),
      mass_(mass) {}

Partition refine_for_vector(const ModeSpace& space, const FieldVector& v, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int m = space.mode_count();
  const double budget = epsilon * epsilon;

  const std::vector<double> mass = mass_profile(space, v).mass;
  for (int i = 0; i < m; ++i) {
    if (mass[i] >= budget) throw AtomTooLarge(i, mass[i], epsilon);
  }

  // Greedy prefix cuts: close the current block as soon as the next mode
  // would lift its mass to epsilon^2 or above.
  Partition p;
  std::vector<int> block;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!block.empty() && acc + mass[i] >= budget) {
      p.blocks.push_back(std::move(block));
      block.clear();
      acc = 0.0;
    }
    block.push_back(i);
    acc += mass[i];
  }
  p.blocks.push_back(std::move(block));

  validate_partition(m, p);
  for (int j = 0; j < p.block_count(); ++j) {
    if (!(field_norm(space, block_restrict(p, j, v)) < epsilon))
      throw std::logic_error("refine_for_vector post-check failed on block " + std::to_string(j));
  }
  return p;
}

}  // namespace carlab
