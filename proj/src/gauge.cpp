#include "carlab/gauge.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "carlab/automorphism.hpp"

namespace carlab {

GaugePreset gauge_preset_from_name(const std::string& name) {
  if (name == "full") return GaugePreset::kFullUnitary;
  if (name == "torus") return GaugePreset::kDiagonalTorus;
  if (name == "su") return GaugePreset::kSpecial;
  if (name == "tsu") return GaugePreset::kTorusSpecial;
  throw std::invalid_argument("unknown gauge preset '" + name +
                              "' (expected full, torus, su or tsu)");
}

std::string gauge_preset_name(GaugePreset preset) {
  switch (preset) {
    case GaugePreset::kFullUnitary: return "full";
    case GaugePreset::kDiagonalTorus: return "torus";
    case GaugePreset::kSpecial: return "su";
    case GaugePreset::kTorusSpecial: return "tsu";
  }
  return "?";
}

bool preset_contains_central_torus(GaugePreset preset) {
  return preset != GaugePreset::kSpecial;
}

void validate_gauge_element(const ModeSpace& space, const GaugeElement& gamma, double tol) {
  const int nf = space.fiber_dim();
  if (static_cast<int>(gamma.site_blocks.size()) != space.site_count())
    throw std::invalid_argument("gauge element needs one block per site");
  for (int s = 0; s < space.site_count(); ++s) {
    const Matrix& block = gamma.site_blocks[s];
    if (block.rows() != nf || block.cols() != nf)
      throw std::invalid_argument("gauge block at site " + std::to_string(s) +
                                  " must be fiber_dim x fiber_dim");
    const double unitary_residual =
        (block.adjoint() * block - Matrix::Identity(nf, nf)).norm();
    if (unitary_residual > tol * nf)
      throw std::invalid_argument("gauge block at site " + std::to_string(s) +
                                  " is not unitary (residual " +
                                  std::to_string(unitary_residual) + ")");
    switch (gamma.preset) {
      case GaugePreset::kDiagonalTorus: {
        Matrix off = block;
        off.diagonal().setZero();
        if (off.norm() > tol * nf)
          throw std::invalid_argument("gauge block at site " + std::to_string(s) +
                                      " is not diagonal, outside the torus preset");
        break;
      }
      case GaugePreset::kSpecial: {
        if (std::abs(block.determinant() - Complex{1.0, 0.0}) > tol * nf)
          throw std::invalid_argument("gauge block at site " + std::to_string(s) +
                                      " has determinant away from 1, outside SU");
        break;
      }
      case GaugePreset::kFullUnitary:
      case GaugePreset::kTorusSpecial:
        break;
    }
  }
}

Matrix gauge_unitary(const ModeSpace& space, const GaugeElement& gamma) {
  validate_gauge_element(space, gamma);
  const int m = space.mode_count();
  const int nf = space.fiber_dim();
  Matrix u = Matrix::Zero(m, m);
  for (int s = 0; s < space.site_count(); ++s)
    u.block(s * nf, s * nf, nf, nf) = gamma.site_blocks[s];
  return u;
}

Matrix apply_kappa(const ModeSpace& space, const GaugeElement& gamma, const Matrix& a) {
  return apply_alpha(space, gauge_unitary(space, gamma), a);
}

GaugeElement central_phase_element(const ModeSpace& space, GaugePreset preset, int site,
                                   double theta) {
  if (!preset_contains_central_torus(preset))
    throw std::invalid_argument("preset '" + gauge_preset_name(preset) +
                                "' does not contain the central circle");
  if (site < 0 || site >= space.site_count())
    throw std::out_of_range("site index out of range");
  GaugeElement gamma;
  gamma.preset = preset;
  const int nf = space.fiber_dim();
  for (int s = 0; s < space.site_count(); ++s) {
    gamma.site_blocks.push_back(s == site ? Matrix(std::polar(1.0, theta) *
                                                   Matrix::Identity(nf, nf))
                                          : Matrix(Matrix::Identity(nf, nf)));
  }
  return gamma;
}

GaugeElement random_gauge_element(const ModeSpace& space, GaugePreset preset, Rng& rng) {
  const int nf = space.fiber_dim();
  GaugeElement gamma;
  gamma.preset = preset;
  for (int s = 0; s < space.site_count(); ++s) {
    Matrix block;
    switch (preset) {
      case GaugePreset::kDiagonalTorus: {
        block = Matrix::Zero(nf, nf);
        std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
        for (int i = 0; i < nf; ++i) block(i, i) = std::polar(1.0, uniform(rng));
        break;
      }
      case GaugePreset::kSpecial: {
        block = random_std_unitary(nf, rng);
        const Complex det = block.determinant();
        block *= std::polar(1.0, -std::arg(det) / nf);
        break;
      }
      case GaugePreset::kFullUnitary:
      case GaugePreset::kTorusSpecial:
        block = random_std_unitary(nf, rng);
        break;
    }
    gamma.site_blocks.push_back(std::move(block));
  }
  validate_gauge_element(space, gamma);
  return gamma;
}

GaugeElement gauge_product(const GaugeElement& gamma, const GaugeElement& delta) {
  if (gamma.site_blocks.size() != delta.site_blocks.size())
    throw std::invalid_argument("gauge_product: site counts differ");
  GaugeElement out;
  out.preset = gamma.preset;
  out.site_blocks.reserve(gamma.site_blocks.size());
  for (std::size_t s = 0; s < gamma.site_blocks.size(); ++s)
    out.site_blocks.push_back(gamma.site_blocks[s] * delta.site_blocks[s]);
  return out;
}

std::vector<Matrix> gauge_invariant_subspace(const ModeSpace& space,
                                             const std::vector<GaugeElement>& generators,
                                             double sv_tol) {
  if (generators.empty())
    throw std::invalid_argument("gauge_invariant_subspace: no generators given");
  std::vector<Matrix> unitaries;
  unitaries.reserve(generators.size());
  for (const GaugeElement& gamma : generators)
    unitaries.push_back(second_quantize(space, gauge_unitary(space, gamma)));
  return fixed_point_algebra(unitaries, sv_tol);
}

}  // namespace carlab
