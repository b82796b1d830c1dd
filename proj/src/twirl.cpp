#include "carlab/twirl.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "carlab/random.hpp"

namespace carlab {

namespace {

std::vector<BasisState> block_masks(const Partition& p) {
  std::vector<BasisState> masks;
  masks.reserve(p.blocks.size());
  for (const auto& block : p.blocks) {
    BasisState mask = 0;
    for (int mode : block) mask |= BasisState{1} << mode;
    masks.push_back(mask);
  }
  return masks;
}

}  // namespace

ChargeSectorDecomposition ChargeSectorDecomposition::build(int mode_count, const Partition& p) {
  validate_partition(mode_count, p);
  const std::size_t dim = fock_dimension(mode_count);
  const auto masks = block_masks(p);

  // Mixed-radix key over per-block charges.
  std::vector<std::int32_t> stride(masks.size());
  std::int32_t s = 1;
  for (std::size_t j = 0; j < masks.size(); ++j) {
    stride[j] = s;
    s *= static_cast<std::int32_t>(std::popcount(masks[j])) + 1;
  }

  ChargeSectorDecomposition d;
  d.mode_count = mode_count;
  d.sector_count = s;
  d.sector_of_state.resize(dim);
  for (BasisState k = 0; k < dim; ++k) {
    std::int32_t key = 0;
    for (std::size_t j = 0; j < masks.size(); ++j)
      key += stride[j] * static_cast<std::int32_t>(std::popcount(k & masks[j]));
    d.sector_of_state[k] = key;
  }
  return d;
}

Matrix ChargeSectorDecomposition::projector(int sector) const {
  const std::size_t dim = sector_of_state.size();
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    if (sector_of_state[k] == sector) out(k, k) = 1.0;
  return out;
}

Matrix twirl(const ModeSpace& space, const Partition& p, const Matrix& a) {
  const auto sectors = ChargeSectorDecomposition::build(space.mode_count(), p);
  const std::size_t dim = sectors.sector_of_state.size();
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("twirl: operator dimension does not match the Fock space");
  Matrix out = a;
  for (std::size_t l = 0; l < dim; ++l) {
    const std::int32_t key = sectors.sector_of_state[l];
    for (std::size_t k = 0; k < dim; ++k) {
      if (sectors.sector_of_state[k] != key) out(k, l) = Complex{0.0, 0.0};
    }
  }
  return out;
}

Matrix apply_torus_point(const ModeSpace& space, const Partition& p,
                         const std::vector<double>& angles, const Matrix& a) {
  validate_partition(space.mode_count(), p);
  if (angles.size() != p.blocks.size())
    throw std::invalid_argument("apply_torus_point: one angle per block required");
  const std::size_t dim = fock_dimension(space.mode_count());
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("apply_torus_point: operator dimension mismatch");
  const auto masks = block_masks(p);

  Vector phase(dim);
  for (BasisState k = 0; k < dim; ++k) {
    double theta = 0.0;
    for (std::size_t j = 0; j < masks.size(); ++j)
      theta += angles[j] * static_cast<double>(std::popcount(k & masks[j]));
    phase[k] = std::polar(1.0, theta);
  }
  Matrix out(dim, dim);
  for (std::size_t l = 0; l < dim; ++l)
    out.col(l) = phase.cwiseProduct(a.col(l)) * std::conj(phase[l]);
  return out;
}

Matrix twirl_oracle_mc(const ModeSpace& space, const Partition& p, const Matrix& a,
                       std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("twirl_oracle_mc: samples must be >= 1");
  const std::size_t dim = fock_dimension(space.mode_count());
  Matrix acc = Matrix::Zero(dim, dim);
  std::vector<double> angles(p.blocks.size());
  for (std::size_t n = 0; n < samples; ++n) {
    Rng rng(mix_seed(seed, n));
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    for (double& theta : angles) theta = uniform(rng);
    acc += apply_torus_point(space, p, angles, a);
  }
  return acc / static_cast<double>(samples);
}

Matrix twirl_oracle_roots(const ModeSpace& space, const Partition& p, const Matrix& a) {
  validate_partition(space.mode_count(), p);
  const int m = space.mode_count();
  const int roots = 2 * m + 1;
  const std::size_t dim = fock_dimension(m);
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("twirl_oracle_roots: operator dimension mismatch");

  // Average circle by circle; the joint grid average factorizes.
  Matrix out = a;
  std::vector<double> angles(p.blocks.size(), 0.0);
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    Matrix acc = Matrix::Zero(dim, dim);
    for (int l = 0; l < roots; ++l) {
      angles.assign(p.blocks.size(), 0.0);
      angles[j] = 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(roots);
      acc += apply_torus_point(space, p, angles, out);
    }
    out = acc / static_cast<double>(roots);
  }
  return out;
}

Matrix gicar_project(const ModeSpace& space, const Matrix& a) {
  return twirl(space, single_block(space.mode_count()), a);
}

std::pair<Matrix, Partition> adapt_partition(const ModeSpace& space,
                                             const std::vector<Matrix>& projections,
                                             double tol) {
  const int m = space.mode_count();
  if (projections.empty()) throw std::invalid_argument("adapt_partition: no projections given");
  std::vector<Matrix> std_projs;
  std_projs.reserve(projections.size());
  for (const Matrix& p : projections) {
    if (p.rows() != m || p.cols() != m)
      throw std::invalid_argument("adapt_partition: projections must be m x m");
    std_projs.push_back(to_standard_map(space, p));
  }

  for (std::size_t i = 0; i < std_projs.size(); ++i) {
    const Matrix& q = std_projs[i];
    if ((q - q.adjoint()).norm() > tol * m)
      throw std::invalid_argument("adapt_partition: projection " + std::to_string(i) +
                                  " is not self-adjoint for the weighted inner product");
    for (std::size_t j = 0; j < std_projs.size(); ++j) {
      const Matrix prod = q * std_projs[j];
      const Matrix expected = (i == j) ? q : Matrix::Zero(m, m);
      if ((prod - expected).norm() > tol * m)
        throw std::invalid_argument(
            "adapt_partition: projections " + std::to_string(i) + " and " + std::to_string(j) +
            " are not mutually orthogonal idempotents (non-commuting or degenerate inputs)");
    }
  }
  Matrix sum = Matrix::Zero(m, m);
  for (const Matrix& q : std_projs) sum += q;
  if ((sum - Matrix::Identity(m, m)).norm() > tol * m)
    throw std::invalid_argument("adapt_partition: projections do not resolve the identity");

  // Fast path: already coordinate projections.
  bool diagonal = true;
  for (const Matrix& q : std_projs) {
    for (int c = 0; c < m && diagonal; ++c) {
      for (int r = 0; r < m && diagonal; ++r) {
        const double want = (r == c) ? std::round(q(r, c).real()) : 0.0;
        if (std::abs(q(r, c) - Complex{want, 0.0}) > tol) diagonal = false;
      }
    }
  }
  if (diagonal) {
    Partition p;
    for (const Matrix& q : std_projs) {
      std::vector<int> block;
      for (int i = 0; i < m; ++i)
        if (q(i, i).real() > 0.5) block.push_back(i);
      p.blocks.push_back(std::move(block));
    }
    validate_partition(m, p);
    return {Matrix::Identity(m, m), p};
  }

  // Stack orthonormal range bases; QR keeps leading column spans intact, so
  // the blocks stay contiguous after re-orthonormalization.
  Matrix stacked(m, m);
  Partition p;
  int offset = 0;
  for (const Matrix& q : std_projs) {
    const int rank = static_cast<int>(std::llround(q.trace().real()));
    if (rank <= 0)
      throw std::invalid_argument("adapt_partition: a projection has rank zero");
    Eigen::SelfAdjointEigenSolver<Matrix> es(q);
    stacked.middleCols(offset, rank) = es.eigenvectors().rightCols(rank);
    std::vector<int> block(rank);
    std::iota(block.begin(), block.end(), offset);
    p.blocks.push_back(std::move(block));
    offset += rank;
  }
  if (offset != m)
    throw std::invalid_argument("adapt_partition: projection ranks do not sum to the dimension");

  Eigen::HouseholderQR<Matrix> qr(stacked);
  Matrix q_basis = qr.householderQ();
  const Matrix u_std = q_basis.adjoint();
  const RealVector& s = space.mode_scale();
  const Matrix u =
      s.cwiseInverse().cast<Complex>().asDiagonal() * u_std * s.cast<Complex>().asDiagonal();

  for (std::size_t j = 0; j < std_projs.size(); ++j) {
    Matrix coord = Matrix::Zero(m, m);
    for (int mode : p.blocks[j]) coord(mode, mode) = 1.0;
    if ((u_std * std_projs[j] * u_std.adjoint() - coord).norm() > 1e-8)
      throw std::runtime_error("adapt_partition: diagonalization drifted beyond tolerance");
  }
  return {u, p};
}

namespace {

double monomial_bound_constant(const ModeSpace& space, const Monomial& monomial) {
  const std::size_t n = monomial.creators.size();
  if (n != monomial.annihilators.size())
    throw std::invalid_argument(
        "commutator_bound_report: monomial has " + std::to_string(n) + " creators and " +
        std::to_string(monomial.annihilators.size()) +
        " annihilators; the estimate covers balanced monomials only");
  if (n == 0) return 0.0;  // scalars commute
  double factorial = 1.0;
  for (std::size_t i = 2; i <= n; ++i) factorial *= static_cast<double>(i);
  double c = static_cast<double>(n) * factorial;
  for (std::size_t i = 0; i < n; ++i)
    c *= field_norm(space, monomial.creators[i]) * field_norm(space, monomial.annihilators[i]);
  return c;
}

}  // namespace

CommutatorBoundReport commutator_bound_report(const ModeSpace& space,
                                              const std::vector<WeightedMonomial>& terms,
                                              const FieldVector& f, const Partition& p) {
  validate_partition(space.mode_count(), p);
  check_field(space, f);
  const std::size_t dim = fock_dimension(space.mode_count());

  Matrix a = Matrix::Zero(dim, dim);
  double constant = 0.0;
  for (const WeightedMonomial& term : terms) {
    constant += std::abs(term.coefficient) * monomial_bound_constant(space, term.monomial);
    a += term.coefficient * monomial_operator(space, term.monomial);
  }

  const Matrix averaged = twirl(space, p, a);
  const Vector d = to_standard(space, f);
  const Matrix commutator = smeared_product_right(averaged, d, false) -
                            smeared_product_left(d, false, averaged);

  CommutatorBoundReport report;
  report.lhs = operator_norm(commutator);
  report.bound_constant = constant;
  report.max_block_norm = max_block_norm(space, p, f);
  report.rhs = constant * report.max_block_norm;
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

}  // namespace carlab
