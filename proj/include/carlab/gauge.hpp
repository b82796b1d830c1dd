#pragma once

#include <string>
#include <vector>

#include "carlab/localization.hpp"
#include "carlab/mode_space.hpp"
#include "carlab/random.hpp"
#include "carlab/types.hpp"

namespace carlab {

// Structure-group presets for per-site gauge blocks.
enum class GaugePreset {
  kFullUnitary,    // U(n_f)
  kDiagonalTorus,  // diagonal unitaries
  kSpecial,        // SU(n_f)
  kTorusSpecial,   // T * SU(n_f)
};

GaugePreset gauge_preset_from_name(const std::string& name);
std::string gauge_preset_name(GaugePreset preset);

// True when the scalar circle e^{i theta} 1 lies inside the preset group.
bool preset_contains_central_torus(GaugePreset preset);

// A local gauge transformation on the trivialized bundle: one n_f x n_f
// unitary per site, constrained to the preset subgroup.
struct GaugeElement {
  GaugePreset preset = GaugePreset::kFullUnitary;
  std::vector<Matrix> site_blocks;
};

// Throws std::invalid_argument when a block is not unitary to 1e-10 or falls
// outside the preset (off-diagonal entries for the torus, determinant away
// from 1 for SU).
void validate_gauge_element(const ModeSpace& space, const GaugeElement& gamma,
                            double tol = 1e-10);

// Blockwise action on sections: the block-diagonal one-particle unitary with
// gamma's block at each site.
Matrix gauge_unitary(const ModeSpace& space, const GaugeElement& gamma);

// Second-quantized gauge action: alpha of the gauge unitary.
Matrix apply_kappa(const ModeSpace& space, const GaugeElement& gamma, const Matrix& a);

// Gauge element multiplying one site by the scalar e^{i theta}, identity
// elsewhere; the constructive witness that the per-site phase torus sits
// inside every preset containing the central circle.
GaugeElement central_phase_element(const ModeSpace& space, GaugePreset preset, int site,
                                   double theta);

GaugeElement random_gauge_element(const ModeSpace& space, GaugePreset preset, Rng& rng);

// Pointwise product (gamma * delta)(site) = gamma(site) delta(site).
GaugeElement gauge_product(const GaugeElement& gamma, const GaugeElement& delta);

// Joint commutant of the second-quantized generators, through the
// fixed-point solver (mode count <= 6).
std::vector<Matrix> gauge_invariant_subspace(const ModeSpace& space,
                                             const std::vector<GaugeElement>& generators,
                                             double sv_tol = 1e-8);

}  // namespace carlab
