#include "carlab/localization.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "carlab/automorphism.hpp"

namespace carlab {

namespace {
constexpr int kExpansionModeCap = 8;
constexpr int kSolverModeCap = 6;
}  // namespace

void validate_region(const ModeSpace& space, const Region& w) {
  int prev = -1;
  for (int site : w.sites) {
    if (site < 0 || site >= space.site_count())
      throw std::invalid_argument("region refers to unknown site " + std::to_string(site));
    if (site <= prev)
      throw std::invalid_argument("region sites must be strictly increasing");
    prev = site;
  }
}

Region region_complement(const ModeSpace& space, const Region& w) {
  validate_region(space, w);
  Region out;
  std::size_t pos = 0;
  for (int site = 0; site < space.site_count(); ++site) {
    if (pos < w.sites.size() && w.sites[pos] == site) {
      ++pos;
    } else {
      out.sites.push_back(site);
    }
  }
  return out;
}

std::vector<int> region_modes(const ModeSpace& space, const Region& w) {
  validate_region(space, w);
  std::vector<int> modes;
  modes.reserve(w.sites.size() * space.fiber_dim());
  for (int site : w.sites)
    for (int fiber = 0; fiber < space.fiber_dim(); ++fiber)
      modes.push_back(space.mode_index(site, fiber));
  return modes;
}

LocalAlgebraHandle local_algebra(const ModeSpace& space, const Region& w) {
  LocalAlgebraHandle handle;
  handle.region = w;
  for (int mode : region_modes(space, w)) {
    FieldVector e = FieldVector::Zero(space.mode_count());
    e[mode] = Complex{1.0, 0.0};
    handle.generators.push_back(std::move(e));
  }
  return handle;
}

Matrix mode_projection(const ModeSpace& space, const Region& w) {
  Matrix p = Matrix::Zero(space.mode_count(), space.mode_count());
  for (int mode : region_modes(space, w)) p(mode, mode) = 1.0;
  return p;
}

BasisState region_mask(const ModeSpace& space, const Region& w) {
  BasisState mask = 0;
  for (int mode : region_modes(space, w)) mask |= BasisState{1} << mode;
  return mask;
}

ModePermutation region_to_front(const ModeSpace& space, const Region& w) {
  const int m = space.mode_count();
  const BasisState mask = region_mask(space, w);
  ModePermutation perm;
  perm.image.resize(m);
  int next = 0;
  for (int i = 0; i < m; ++i)
    if (mask & (BasisState{1} << i)) perm.image[i] = next++;
  for (int i = 0; i < m; ++i)
    if (!(mask & (BasisState{1} << i))) perm.image[i] = next++;
  return perm;
}

ModePermutation inverse(const ModePermutation& perm) {
  ModePermutation out;
  out.image.resize(perm.image.size());
  for (std::size_t i = 0; i < perm.image.size(); ++i) out.image[perm.image[i]] = static_cast<int>(i);
  return out;
}

namespace {

// Gamma(P)|K> = sign(K) |image(K)>, the sign being the parity of the
// permutation that reorders the images of K's modes increasingly.
void permutation_tables(const ModePermutation& perm, std::vector<BasisState>& image_state,
                        std::vector<int>& sign) {
  const int m = static_cast<int>(perm.image.size());
  const std::size_t dim = std::size_t{1} << m;
  image_state.resize(dim);
  sign.resize(dim);
  std::vector<int> images;
  images.reserve(m);
  for (BasisState k = 0; k < dim; ++k) {
    images.clear();
    BasisState mapped = 0;
    int inversions = 0;
    for (int i = 0; i < m; ++i) {
      if (!(k & (BasisState{1} << i))) continue;
      const int img = perm.image[i];
      mapped |= BasisState{1} << img;
      for (int prev : images)
        if (prev > img) ++inversions;
      images.push_back(img);
    }
    image_state[k] = mapped;
    sign[k] = (inversions & 1) ? -1 : 1;
  }
}

}  // namespace

Matrix conjugate_by_mode_permutation(const ModePermutation& perm, const Matrix& a) {
  std::vector<BasisState> image;
  std::vector<int> sign;
  permutation_tables(perm, image, sign);
  const std::size_t dim = image.size();
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("conjugate_by_mode_permutation: dimension mismatch");
  Matrix out(dim, dim);
  for (std::size_t l = 0; l < dim; ++l) {
    const double sl = sign[l];
    for (std::size_t k = 0; k < dim; ++k)
      out(image[k], image[l]) = sl * sign[k] * a(k, l);
  }
  return out;
}

Matrix restrict_to_region(const ModeSpace& space, const Matrix& a, const Region& w) {
  const int m = space.mode_count();
  const std::size_t dim = fock_dimension(m);
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("restrict_to_region: operator dimension mismatch");
  const int k = static_cast<int>(region_modes(space, w).size());

  const ModePermutation to_front = region_to_front(space, w);
  const Matrix b = conjugate_by_mode_permutation(to_front, a);

  // Keep the block with no particles on the rear modes, tensor the identity
  // back on: entry (K, L) survives iff the rear occupations agree, and is
  // read from the no-rear-particle block.
  const BasisState low = (k == m) ? static_cast<BasisState>(dim - 1)
                                  : ((BasisState{1} << k) - 1u);
  Matrix embedded = Matrix::Zero(dim, dim);
  for (std::size_t lcol = 0; lcol < dim; ++lcol) {
    const BasisState high = static_cast<BasisState>(lcol) & ~low;
    const BasisState llow = static_cast<BasisState>(lcol) & low;
    for (BasisState klow = 0; klow <= low; ++klow)
      embedded(klow | high, lcol) = b(klow, llow);
  }
  return conjugate_by_mode_permutation(inverse(to_front), embedded);
}

int annihilate_subset_sign(BasisState state, BasisState subset) {
  int sign = 1;
  BasisState current = state;
  BasisState rest = subset;
  while (rest) {
    const int mode = std::countr_zero(rest);  // smallest first
    sign *= jw_sign(current, mode);
    current ^= BasisState{1} << mode;
    rest &= rest - 1;
  }
  return sign;
}

int create_subset_sign(BasisState state, BasisState subset) {
  int sign = 1;
  BasisState current = state;
  BasisState rest = subset;
  while (rest) {
    const int mode = 31 - std::countl_zero(rest);  // largest first
    sign *= jw_sign(current, mode);
    current |= BasisState{1} << mode;
    rest ^= BasisState{1} << mode;
  }
  return sign;
}

Matrix basis_monomial(int mode_count, BasisState creators, BasisState annihilators) {
  const std::size_t dim = fock_dimension(mode_count);
  if (creators >= dim || annihilators >= dim)
    throw std::out_of_range("basis_monomial: index subset outside the mode range");
  Matrix out = Matrix::Zero(dim, dim);
  for (BasisState l = 0; l < dim; ++l) {
    if ((annihilators & l) != annihilators) continue;
    const BasisState mid = l ^ annihilators;
    if (mid & creators) continue;
    const int s = annihilate_subset_sign(l, annihilators) * create_subset_sign(mid, creators);
    out(mid | creators, l) = static_cast<double>(s);
  }
  return out;
}

Complex NormalOrderExpansion::coefficient(BasisState creators, BasisState annihilators) const {
  const std::size_t dim = std::size_t{1} << mode_count;
  return coeff.at(static_cast<std::size_t>(creators) * dim + annihilators);
}

NormalOrderExpansion normal_order_expand(const ModeSpace& space, const Matrix& a) {
  const int m = space.mode_count();
  if (m > kExpansionModeCap)
    throw std::domain_error("normal_order_expand: supported up to " +
                            std::to_string(kExpansionModeCap) + " modes, got " +
                            std::to_string(m));
  const std::size_t dim = fock_dimension(m);
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("normal_order_expand: operator dimension mismatch");

  // Index pairs by increasing |I| + |J|; a*_I a_J has a unit matrix element
  // at (|I>, |J>) and only lower-degree terms contribute there besides it.
  std::vector<std::pair<BasisState, BasisState>> order;
  order.reserve(dim * dim);
  for (BasisState i = 0; i < dim; ++i)
    for (BasisState j = 0; j < dim; ++j) order.emplace_back(i, j);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return std::popcount(x.first) + std::popcount(x.second) <
           std::popcount(y.first) + std::popcount(y.second);
  });

  NormalOrderExpansion e;
  e.mode_count = m;
  e.coeff.assign(dim * dim, Complex{0.0, 0.0});
  for (const auto& [i, j] : order) {
    Complex value = a(i, j);
    const BasisState common = i & j;
    // Subtract lower-degree contributions c_{I\D, J\D} <I| a*_{I\D} a_{J\D} |J>.
    for (BasisState d = common; d != 0; d = (d - 1) & common) {
      const BasisState ic = i ^ d;
      const BasisState jc = j ^ d;
      const int s = annihilate_subset_sign(j, jc) * create_subset_sign(d, ic);
      value -= e.coeff[static_cast<std::size_t>(ic) * dim + jc] * static_cast<double>(s);
    }
    e.coeff[static_cast<std::size_t>(i) * dim + j] = value;
  }
  return e;
}

Matrix reconstruct(const ModeSpace& space, const NormalOrderExpansion& expansion) {
  const int m = expansion.mode_count;
  if (m != space.mode_count())
    throw std::invalid_argument("reconstruct: expansion does not match the mode space");
  const std::size_t dim = fock_dimension(m);
  Matrix out = Matrix::Zero(dim, dim);
  for (BasisState i = 0; i < dim; ++i) {
    for (BasisState j = 0; j < dim; ++j) {
      const Complex c = expansion.coeff[static_cast<std::size_t>(i) * dim + j];
      if (c == Complex{0.0, 0.0}) continue;
      // Scatter a*_I a_J column by column.
      for (BasisState l = j; l < dim; l = ((l + 1) | j)) {
        if ((l & j) != j) continue;
        const BasisState mid = l ^ j;
        if (mid & i) continue;
        const int s = annihilate_subset_sign(l, j) * create_subset_sign(mid, i);
        out(mid | i, l) += c * static_cast<double>(s);
      }
    }
  }
  return out;
}

Matrix restrict_oracle(const ModeSpace& space, const Matrix& a, const Region& w) {
  const int m = space.mode_count();
  if (m > kExpansionModeCap)
    throw std::domain_error("restrict_oracle: supported up to " +
                            std::to_string(kExpansionModeCap) + " modes, got " +
                            std::to_string(m));
  NormalOrderExpansion e = normal_order_expand(space, a);
  const BasisState mask = region_mask(space, w);
  const std::size_t dim = fock_dimension(m);
  for (BasisState i = 0; i < dim; ++i) {
    for (BasisState j = 0; j < dim; ++j) {
      if (((i | j) & ~mask) != 0) e.coeff[static_cast<std::size_t>(i) * dim + j] = Complex{0.0, 0.0};
    }
  }
  return reconstruct(space, e);
}

Matrix vacuum_projection(const ModeSpace& space, const Region& w) {
  const std::size_t dim = fock_dimension(space.mode_count());
  const BasisState outside = static_cast<BasisState>((dim - 1) & ~region_mask(space, w));
  Matrix out = Matrix::Zero(dim, dim);
  for (BasisState k = 0; k < dim; ++k)
    if ((k & outside) == 0) out(k, k) = 1.0;
  return out;
}

Matrix nu_tilde(const ModeSpace& space, const Matrix& a, const Region& w) {
  const std::size_t dim = fock_dimension(space.mode_count());
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim)
    throw std::invalid_argument("nu_tilde: operator dimension mismatch");
  const BasisState outside = static_cast<BasisState>((dim - 1) & ~region_mask(space, w));
  Matrix out = a;
  for (BasisState k = 0; k < dim; ++k) {
    if ((k & outside) != 0) {
      out.row(k).setZero();
      out.col(k).setZero();
    }
  }
  return out;
}

bool ideal_member(const ModeSpace& space, const Matrix& a, const Region& w, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("ideal_member: tol must be positive");
  return operator_norm(restrict_to_region(space, a.adjoint() * a, w)) < tol;
}

bool membership_in_local(const ModeSpace& space, const Matrix& a, const Region& w, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("membership_in_local: tol must be positive");
  return operator_norm(restrict_to_region(space, a, w) - a) < tol;
}

std::vector<Matrix> fixed_point_algebra(const std::vector<Matrix>& unitaries, double sv_tol) {
  if (unitaries.empty())
    throw std::invalid_argument("fixed_point_algebra: at least one unitary required");
  const std::size_t dim = unitaries.front().rows();
  if (dim > (std::size_t{1} << kSolverModeCap))
    throw std::domain_error("fixed_point_algebra: operator-space dimension " +
                            std::to_string(dim * dim) + " exceeds the 4^" +
                            std::to_string(kSolverModeCap) + " solver cap");
  for (const Matrix& v : unitaries) {
    if (static_cast<std::size_t>(v.rows()) != dim || static_cast<std::size_t>(v.cols()) != dim)
      throw std::invalid_argument("fixed_point_algebra: unitaries must share one dimension");
  }
  const std::size_t n2 = dim * dim;

  // Orthonormal coefficient basis of the current candidate subspace, stored
  // as columns over vec(A); starts as the full operator space.
  Matrix basis = Matrix::Identity(n2, n2);
  for (const Matrix& v : unitaries) {
    const Eigen::Index d = basis.cols();
    if (d == 0) break;
    Matrix constraint(n2, d);
    for (Eigen::Index c = 0; c < d; ++c) {
      const Matrix b = Eigen::Map<const Matrix>(basis.col(c).data(), dim, dim);
      const Matrix comm = v * b - b * v;
      constraint.col(c) = Eigen::Map<const Vector>(comm.data(), n2);
    }
    Eigen::BDCSVD<Matrix> svd(constraint, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::Index null_from = 0;
    while (null_from < sv.size() && sv[null_from] >= sv_tol) ++null_from;
    basis = basis * svd.matrixV().rightCols(sv.size() - null_from);
  }

  std::vector<Matrix> out;
  out.reserve(basis.cols());
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    out.push_back(Eigen::Map<const Matrix>(basis.col(c).data(), dim, dim));
  return out;
}

double hs_projection_residual(const std::vector<Matrix>& basis, const Matrix& x) {
  Matrix residual = x;
  for (const Matrix& b : basis) {
    const Complex overlap = b.conjugate().cwiseProduct(residual).sum();
    residual -= overlap * b;
  }
  return residual.norm();
}

Matrix site_phase_unitary(const ModeSpace& space, int site, double theta) {
  if (site < 0 || site >= space.site_count())
    throw std::out_of_range("site index out of range");
  Matrix u = Matrix::Identity(space.mode_count(), space.mode_count());
  const Complex phase = std::polar(1.0, theta);
  for (int fiber = 0; fiber < space.fiber_dim(); ++fiber) {
    const int mode = space.mode_index(site, fiber);
    u(mode, mode) = phase;
  }
  return u;
}

Matrix region_phase_unitary(const ModeSpace& space, const Region& w,
                            const std::vector<double>& angles) {
  validate_region(space, w);
  if (angles.size() != w.sites.size())
    throw std::invalid_argument("region_phase_unitary: one angle per site required");
  Matrix u = Matrix::Identity(space.mode_count(), space.mode_count());
  for (std::size_t s = 0; s < w.sites.size(); ++s) {
    const Complex phase = std::polar(1.0, angles[s]);
    for (int fiber = 0; fiber < space.fiber_dim(); ++fiber)
      u(space.mode_index(w.sites[s], fiber), space.mode_index(w.sites[s], fiber)) = phase;
  }
  return u;
}

std::vector<Matrix> site_phase_torus_generators(const ModeSpace& space, const Region& w) {
  validate_region(space, w);
  // A single generic angle per site pins the whole circle: occupation-charge
  // differences are integers of magnitude at most the mode count, and the
  // golden angle keeps every such multiple well away from 2 pi Z.
  const double theta = std::numbers::pi * (std::sqrt(5.0) - 1.0);
  std::vector<Matrix> out;
  out.reserve(w.sites.size());
  for (int site : w.sites)
    out.push_back(second_quantize(space, site_phase_unitary(space, site, theta)));
  return out;
}

}  // namespace carlab
