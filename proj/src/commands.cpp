#include "carlab/commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "carlab/automorphism.hpp"
#include "carlab/fock.hpp"
#include "carlab/gauge.hpp"
#include "carlab/localization.hpp"
#include "carlab/partition.hpp"
#include "carlab/random.hpp"
#include "carlab/report.hpp"
#include "carlab/twirl.hpp"

namespace carlab {

namespace {

std::string canonical(const Json& j) { return j.dump(); }

Region parse_region(const Json& config, const ModeSpace& space, const char* key,
                    std::vector<int> fallback, Json& resolved) {
  Region w;
  if (config.contains(key)) {
    const Json& sites = config.at(key);
    if (!sites.is_array())
      throw std::invalid_argument(std::string("config: ") + key + " must be an array of sites");
    for (const Json& s : sites) {
      if (!s.is_number_integer())
        throw std::invalid_argument(std::string("config: ") + key + " must hold integers");
      w.sites.push_back(s.get<int>());
    }
  } else {
    w.sites = std::move(fallback);
  }
  std::sort(w.sites.begin(), w.sites.end());
  validate_region(space, w);
  resolved[key] = w.sites;
  return w;
}

// Sparse evaluation of a CAR expression column: returns the squared
// Frobenius distance between the two sides, accumulated over basis columns.
struct CarResiduals {
  double mixed_anti = 0.0;   // {a(f), a(g)*} - <f,g> 1
  double plain_anti = 0.0;   // {a(f), a(g)}
  double mixed_comm = 0.0;   // [a(f)* a(g), a(h)] + <h,f> a(g)
};

CarResiduals car_residuals(const ModeSpace& space, const FieldVector& f, const FieldVector& g,
                           const FieldVector& h) {
  const int m = space.mode_count();
  const std::size_t dim = std::size_t{1} << m;
  const Vector df = to_standard(space, f);
  const Vector dg = to_standard(space, g);
  const Vector dh = to_standard(space, h);
  const Complex fg = inner_product(space, f, g);
  const Complex hf = inner_product(space, h, f);

  CarResiduals r;
  for (BasisState l = 0; l < dim; ++l) {
    const SparseState basis = SparseState::basis(l);
    const SparseState af = apply_smeared(df, false, basis, m);
    const SparseState agd = apply_smeared(dg, true, basis, m);
    const SparseState ag = apply_smeared(dg, false, basis, m);
    const SparseState ah = apply_smeared(dh, false, basis, m);

    // {a(f), a(g)*} |l> vs <f,g> |l>
    SparseState lhs = add(apply_smeared(df, false, agd, m), apply_smeared(dg, true, af, m));
    SparseState rhs = basis;
    rhs *= fg;
    r.mixed_anti += distance_squared(lhs, rhs);

    // {a(f), a(g)} |l>
    lhs = add(apply_smeared(df, false, ag, m), apply_smeared(dg, false, af, m));
    r.plain_anti += distance_squared(lhs, SparseState{});

    // [a(f)* a(g), a(h)] |l> vs -<h,f> a(g) |l>
    const SparseState x = apply_smeared(df, true, apply_smeared(dg, false, ah, m), m);
    const SparseState y = apply_smeared(dh, false, apply_smeared(df, true, ag, m), m);
    SparseState commutator = y;
    commutator *= Complex{-1.0, 0.0};
    lhs = add(x, commutator);
    rhs = ag;
    rhs *= -hf;
    r.mixed_comm += distance_squared(lhs, rhs);
  }
  return r;
}

// ||a(f)||: exact Hermitian eigensolve up to 8 modes; beyond that, power
// iteration on a(f)* a(f) through the structured vector applies, so raised
// caps stay usable.
double smeared_norm_estimate(const ModeSpace& space, const FieldVector& f) {
  const int m = space.mode_count();
  if (m <= 8) return operator_norm(smear(space, f));
  const Vector d = to_standard(space, f);
  const std::size_t dim = fock_dimension(m);
  Rng rng(0x5eedULL);
  Vector v(dim), tmp(dim), w(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = random_complex_gaussian(rng);
  v /= v.norm();
  double lambda = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    apply_smeared(d, false, v, tmp);
    apply_smeared(d, true, tmp, w);
    const double next = std::real(v.dot(w));
    const double scale = w.norm();
    if (scale < 1e-300) return 0.0;
    v = w / scale;
    if (iter > 0 && std::abs(next - lambda) <= 1e-15 * std::max(next, 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

}  // namespace

int run_verify_car(const Json& config, std::ostream& out) {
  require_allowed_keys(config, "verify-car config",
                       {"mode_space", "seed", "triples", "tolerance"});
  Json resolved;
  const ModeSpace space = parse_mode_space(config, 6, 1, resolved);
  const std::uint64_t seed = parse_seed(config, resolved);
  const int triples = config.value("triples", 200);
  if (triples < 1) throw std::invalid_argument("config: triples must be >= 1");
  const double tolerance = config.value("tolerance", 1e-12);
  if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
  resolved["triples"] = triples;
  resolved["tolerance"] = tolerance;
  fock_dimension(space.mode_count());  // enforce the dense cap up front

  Rng rng(seed);
  CarResiduals worst;
  double antilinearity = 0.0;
  double norm_identity = 0.0;
  for (int t = 0; t < triples; ++t) {
    const FieldVector f = random_field(space, rng);
    const FieldVector g = random_field(space, rng);
    const FieldVector h = random_field(space, rng);
    const CarResiduals r = car_residuals(space, f, g, h);
    worst.mixed_anti = std::max(worst.mixed_anti, std::sqrt(r.mixed_anti));
    worst.plain_anti = std::max(worst.plain_anti, std::sqrt(r.plain_anti));
    worst.mixed_comm = std::max(worst.mixed_comm, std::sqrt(r.mixed_comm));
  }
  {
    Rng extra(mix_seed(seed, 1));
    for (int t = 0; t < std::min(triples, 100); ++t) {
      const FieldVector f = random_field(space, extra);
      const FieldVector g = random_field(space, extra);
      const Complex c = random_complex_gaussian(extra);
      const Matrix lhs = smear(space, FieldVector(c * f + g));
      const Matrix rhs = std::conj(c) * smear(space, f) + smear(space, g);
      antilinearity = std::max(antilinearity, (lhs - rhs).norm());
      norm_identity = std::max(
          norm_identity, std::abs(smeared_norm_estimate(space, f) - field_norm(space, f)));
    }
  }

  CsvReport report("verify-car", canonical(resolved));
  report.set_columns({"check", "cases", "max_residual", "tolerance", "pass"});
  bool all_pass = true;
  const auto row = [&](const std::string& name, std::int64_t cases, double residual) {
    const bool pass = residual < tolerance;
    all_pass = all_pass && pass;
    report.add_row({name, cases, residual, tolerance, pass});
  };
  row("anticommutator_mixed", triples, worst.mixed_anti);
  row("anticommutator_plain", triples, worst.plain_anti);
  row("mixed_commutator", triples, worst.mixed_comm);
  row("antilinearity", std::min(triples, 100), antilinearity);
  row("norm_identity", std::min(triples, 100), norm_identity);
  report.write(out);
  return all_pass ? 0 : 1;
}

int run_twirl_bound(const Json& config, std::ostream& out) {
  require_allowed_keys(config, "twirl-bound config",
                       {"mode_space", "seed", "degree", "schedule", "uniform_field",
                        "mc_samples"});
  Json resolved;
  const ModeSpace space = parse_mode_space(config, 8, 1, resolved);
  const std::uint64_t seed = parse_seed(config, resolved);
  const int m = space.mode_count();
  const int degree = config.value("degree", 1);
  if (degree < 1 || degree > 3) throw std::invalid_argument("config: degree must be 1, 2 or 3");
  const bool uniform_field = config.value("uniform_field", true);
  const int mc_samples = config.value("mc_samples", 2000);
  if (mc_samples < 2) throw std::invalid_argument("config: mc_samples must be >= 2");

  std::vector<int> schedule;
  if (config.contains("schedule")) {
    for (const Json& r : config.at("schedule")) schedule.push_back(r.get<int>());
  } else {
    for (int r = 1; r <= m; ++r)
      if (m % r == 0) schedule.push_back(r);  // divisors: equal block masses
  }
  for (int r : schedule)
    if (r < 1 || r > m) throw std::invalid_argument("config: schedule entries must lie in [1, m]");
  resolved["degree"] = degree;
  resolved["schedule"] = schedule;
  resolved["uniform_field"] = uniform_field;
  resolved["mc_samples"] = mc_samples;

  Rng rng(seed);
  WeightedMonomial term;
  for (int i = 0; i < degree; ++i) {
    term.monomial.creators.push_back(random_field(space, rng));
    term.monomial.annihilators.push_back(random_field(space, rng));
  }
  FieldVector f;
  if (uniform_field) {
    f = FieldVector::Constant(m, Complex{1.0, 0.0});
    f /= field_norm(space, f);
  } else {
    f = random_unit_field(space, rng);
  }
  const Matrix a_op = monomial_operator(space, term.monomial);

  CsvReport report("twirl-bound", canonical(resolved));
  report.set_columns({"blocks", "max_block_norm", "lhs", "bound_constant", "rhs", "holds",
                      "mc_deviation", "mc_three_sigma", "mc_ok"});
  bool all_pass = true;
  for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
    const int r = schedule[idx];
    const Partition p = equipartition(m, r);
    const auto bound = commutator_bound_report(space, {term}, f, p);

    // Monte-Carlo column: mean over samples with a running error estimate.
    const Matrix exact = twirl(space, p, a_op);
    Matrix mean = Matrix::Zero(a_op.rows(), a_op.cols());
    double sum_sq = 0.0;
    std::vector<double> angles(p.block_count());
    for (int s = 0; s < mc_samples; ++s) {
      Rng sample_rng(mix_seed(seed + idx + 1, s));
      std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
      for (double& theta : angles) theta = uniform(sample_rng);
      const Matrix sample = apply_torus_point(space, p, angles, a_op);
      mean += sample;
      sum_sq += sample.squaredNorm();
    }
    mean /= static_cast<double>(mc_samples);
    const double spread =
        std::max(0.0, sum_sq - static_cast<double>(mc_samples) * mean.squaredNorm()) /
        static_cast<double>(mc_samples - 1);
    const double three_sigma = 3.0 * std::sqrt(spread / static_cast<double>(mc_samples));
    const double deviation = (mean - exact).norm();
    const bool mc_ok = deviation <= three_sigma;

    bool holds = bound.holds;
    if (uniform_field && m % r == 0) {
      // Equal masses: the bound's right side is exactly C_A r^{-1/2}.
      holds = holds && bound.lhs <= bound.bound_constant / std::sqrt(double(r)) + 1e-9;
    }
    all_pass = all_pass && holds && mc_ok;
    report.add_row({std::int64_t{r}, bound.max_block_norm, bound.lhs, bound.bound_constant,
                    bound.rhs, holds, deviation, three_sigma, mc_ok});
  }
  report.write(out);
  return all_pass ? 0 : 1;
}

int run_localize(const Json& config, std::ostream& out) {
  require_allowed_keys(config, "localize config",
                       {"mode_space", "seed", "region_sites", "corpus", "tolerance"});
  Json resolved;
  const ModeSpace space = parse_mode_space(config, 6, 1, resolved);
  const std::uint64_t seed = parse_seed(config, resolved);
  std::vector<int> first_half(space.site_count() / 2);
  std::iota(first_half.begin(), first_half.end(), 0);
  const Region w = parse_region(config, space, "region_sites", std::move(first_half), resolved);
  const int corpus = config.value("corpus", 50);
  if (corpus < 1) throw std::invalid_argument("config: corpus must be >= 1");
  const double tolerance = config.value("tolerance", 1e-9);
  if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
  resolved["corpus"] = corpus;
  resolved["tolerance"] = tolerance;

  const int m = space.mode_count();
  const std::size_t dim = fock_dimension(m);
  const Region wc = region_complement(space, w);
  const Matrix p_w = mode_projection(space, w);
  const Matrix pbar = vacuum_projection(space, w);

  Rng rng(seed);
  double monomial_formula = 0.0;
  double expansion_route = 0.0;
  double equivariance = 0.0;
  double compression_identity = 0.0;
  double local_isometry = 0.0;
  bool ideal_accepts = true;
  bool ideal_rejects = true;

  std::uniform_int_distribution<int> pick_degree(0, 2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < corpus; ++t) {
    const Monomial mono = random_monomial(space, pick_degree(rng), pick_degree(rng), rng);
    const Matrix op = monomial_operator(space, mono);
    const Matrix compressed = restrict_to_region(space, op, w);
    Monomial projected;
    for (const auto& fv : mono.creators) projected.creators.push_back(p_w * fv);
    for (const auto& gv : mono.annihilators) projected.annihilators.push_back(p_w * gv);
    monomial_formula =
        std::max(monomial_formula,
                 operator_norm(compressed - monomial_operator(space, projected)));
    if (m <= 8)
      expansion_route =
          std::max(expansion_route, operator_norm(compressed - restrict_oracle(space, op, w)));

    const Matrix a = random_operator(dim, rng);
    if (!wc.sites.empty()) {
      std::vector<double> phases(wc.sites.size());
      for (double& phi : phases) phi = angle(rng);
      const Matrix h = region_phase_unitary(space, wc, phases);
      equivariance = std::max(
          equivariance, operator_norm(restrict_to_region(space, apply_alpha(space, h, a), w) -
                                      restrict_to_region(space, a, w)));
    }
    compression_identity =
        std::max(compression_identity,
                 (nu_tilde(space, a, w) - pbar * restrict_to_region(space, a, w) * pbar).norm());

    // A local polynomial: random monomial in fields supported inside W.
    Monomial local;
    for (int i = 0, n = 1 + t % 2; i < n; ++i) {
      FieldVector fi = FieldVector::Zero(m);
      FieldVector gi = FieldVector::Zero(m);
      for (int mode : region_modes(space, w)) {
        fi[mode] = random_complex_gaussian(rng);
        gi[mode] = random_complex_gaussian(rng);
      }
      local.creators.push_back(fi);
      local.annihilators.push_back(gi);
    }
    const Matrix local_op = monomial_operator(space, local);
    const double norm = operator_norm(local_op);
    if (norm > 1e-12) {
      local_isometry = std::max(
          local_isometry, std::abs(operator_norm(nu_tilde(space, local_op, w)) - norm) / norm);
    }

    if (!wc.sites.empty()) {
      FieldVector outside = FieldVector::Zero(m);
      for (int mode : region_modes(space, wc)) outside[mode] = random_complex_gaussian(rng);
      ideal_accepts = ideal_accepts && ideal_member(space, smear(space, outside), w, tolerance);
      ideal_accepts = ideal_accepts &&
                      ideal_member(space, Matrix(a * smear(space, outside)), w, tolerance);
    }
    if (!w.sites.empty()) {
      FieldVector inside = FieldVector::Zero(m);
      for (int mode : region_modes(space, w)) inside[mode] = random_complex_gaussian(rng);
      ideal_rejects = ideal_rejects && !ideal_member(space, smear(space, inside), w, tolerance);
    }
  }
  ideal_rejects =
      ideal_rejects && !ideal_member(space, Matrix(Matrix::Identity(dim, dim)), w, tolerance);

  CsvReport report("localize", canonical(resolved));
  report.set_columns({"check", "cases", "max_residual", "tolerance", "pass"});
  bool all_pass = true;
  const auto row = [&](const std::string& name, std::int64_t cases, double residual,
                       double tol) {
    const bool pass = residual < tol;
    all_pass = all_pass && pass;
    report.add_row({name, cases, residual, tol, pass});
  };
  row("monomial_formula", corpus, monomial_formula, 1e-10);
  if (m <= 8) row("expansion_route", corpus, expansion_route, tolerance);
  row("equivariance", corpus, equivariance, tolerance);
  row("compression_identity", corpus, compression_identity, tolerance);
  row("local_isometry", corpus, local_isometry, tolerance);
  const auto flag_row = [&](const std::string& name, bool pass) {
    all_pass = all_pass && pass;
    report.add_row({name, std::int64_t{corpus}, pass ? 0.0 : 1.0, 0.5, pass});
  };
  flag_row("ideal_accepts", ideal_accepts);
  flag_row("ideal_rejects", ideal_rejects);
  report.write(out);
  return all_pass ? 0 : 1;
}

int run_net_fixed_points(const Json& config, std::ostream& out) {
  require_allowed_keys(config, "net-fixed-points config",
                       {"mode_space", "seed", "region_sites", "gauge_presets", "tolerance"});
  Json resolved;
  const ModeSpace space = parse_mode_space(config, 2, 1, resolved);
  const std::uint64_t seed = parse_seed(config, resolved);
  const Region w = parse_region(config, space, "region_sites", {0}, resolved);
  const double tolerance = config.value("tolerance", 1e-8);
  if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
  resolved["tolerance"] = tolerance;
  std::vector<std::string> presets = {"full", "tsu"};
  if (config.contains("gauge_presets")) {
    presets.clear();
    for (const Json& p : config.at("gauge_presets")) presets.push_back(p.get<std::string>());
  }
  resolved["gauge_presets"] = presets;

  const int m = space.mode_count();
  if (m > 6)
    throw std::domain_error("net-fixed-points: the fixed-point solver is capped at 6 modes");
  const std::size_t dim = fock_dimension(m);
  const Region wc = region_complement(space, w);
  const BasisState w_mask = region_mask(space, w);

  CsvReport report("net-fixed-points", canonical(resolved));
  report.set_columns({"section", "name", "value", "threshold", "pass"});
  bool all_pass = true;
  const auto row = [&](const std::string& section, const std::string& name, double value,
                       double threshold, bool pass) {
    all_pass = all_pass && pass;
    report.add_row({section, name, value, threshold, pass});
  };

  // Fixed space of the per-site phase torus outside W.
  std::vector<Matrix> fixed;
  if (wc.sites.empty()) {
    // No constraint: the fixed space is the whole operator algebra.
    for (BasisState i = 0; i < dim; ++i)
      for (BasisState j = 0; j < dim; ++j) {
        Matrix e = Matrix::Zero(dim, dim);
        e(i, j) = 1.0;
        fixed.push_back(e);
      }
  } else {
    fixed = fixed_point_algebra(site_phase_torus_generators(space, wc), tolerance);
  }

  const std::size_t dim_local = std::size_t{1} << (2 * std::popcount(w_mask));
  std::size_t balanced_count = 0;
  std::vector<BasisState> site_masks;
  for (int site : wc.sites) {
    BasisState mask = 0;
    for (int fiber = 0; fiber < space.fiber_dim(); ++fiber)
      mask |= BasisState{1} << space.mode_index(site, fiber);
    site_masks.push_back(mask);
  }
  const auto balanced_outside = [&](BasisState i, BasisState j) {
    for (BasisState mask : site_masks)
      if (std::popcount(i & mask) != std::popcount(j & mask)) return false;
    return true;
  };
  for (BasisState i = 0; i < dim; ++i)
    for (BasisState j = 0; j < dim; ++j)
      if (balanced_outside(i, j)) ++balanced_count;

  row("net", "dim_local_algebra", static_cast<double>(dim_local), 0.0, true);
  row("net", "dim_phase_fixed", static_cast<double>(fixed.size()), 0.0, true);
  row("net", "dim_excess", static_cast<double>(fixed.size() - dim_local), 0.0, true);
  row("net", "dim_combinatorial", static_cast<double>(balanced_count),
      static_cast<double>(fixed.size()), fixed.size() == balanced_count);

  // A(W) lies inside the fixed space; the balanced monomials span it exactly.
  double local_residual = 0.0;
  double balanced_residual = 0.0;
  for (BasisState i = 0; i < dim; ++i) {
    for (BasisState j = 0; j < dim; ++j) {
      if (((i | j) & ~w_mask) == 0) {
        const Matrix mono = basis_monomial(m, i, j);
        local_residual = std::max(local_residual,
                                  hs_projection_residual(fixed, mono) / mono.norm());
      }
      if (balanced_outside(i, j)) {
        const Matrix mono = basis_monomial(m, i, j);
        balanced_residual = std::max(balanced_residual,
                                     hs_projection_residual(fixed, mono) / mono.norm());
      }
    }
  }
  row("net", "local_in_fixed_residual", local_residual, tolerance, local_residual < tolerance);
  row("net", "balanced_in_fixed_residual", balanced_residual, tolerance,
      balanced_residual < tolerance);

  // Gauge presets: the gauge-fixed space sits inside the site-phase-fixed
  // space once the preset contains the central circle.
  std::vector<Matrix> all_phase_fixed;
  {
    Region everything;
    everything.sites.resize(space.site_count());
    std::iota(everything.sites.begin(), everything.sites.end(), 0);
    all_phase_fixed =
        fixed_point_algebra(site_phase_torus_generators(space, everything), tolerance);
  }
  Rng rng(seed);
  for (const std::string& name : presets) {
    const GaugePreset preset = gauge_preset_from_name(name);
    std::vector<GaugeElement> generators;
    for (int t = 0; t < 3; ++t) generators.push_back(random_gauge_element(space, preset, rng));
    if (preset_contains_central_torus(preset)) {
      for (int site = 0; site < space.site_count(); ++site)
        generators.push_back(central_phase_element(
            space, preset, site, std::numbers::pi * (std::sqrt(5.0) - 1.0)));
    }
    const auto gauge_fixed = gauge_invariant_subspace(space, generators, tolerance);
    row("gauge_" + name, "dim_gauge_fixed", static_cast<double>(gauge_fixed.size()), 0.0, true);
    if (preset_contains_central_torus(preset)) {
      double inclusion = 0.0;
      for (const Matrix& b : gauge_fixed)
        inclusion = std::max(inclusion, hs_projection_residual(all_phase_fixed, b));
      row("gauge_" + name, "inclusion_residual", inclusion, tolerance, inclusion < tolerance);
    }
  }
  report.write(out);
  return all_pass ? 0 : 1;
}

int run_partition(const Json& config, std::ostream& out) {
  require_allowed_keys(config, "partition config", {"mode_space", "seed", "trials", "epsilon"});
  Json resolved;
  const ModeSpace space = parse_mode_space(config, 16, 1, resolved);
  const std::uint64_t seed = parse_seed(config, resolved);
  const int trials = config.value("trials", 100);
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  resolved["trials"] = trials;
  const bool fixed_eps = config.contains("epsilon");
  double epsilon = 0.0;
  if (fixed_eps) {
    epsilon = require_positive(config.at("epsilon"), "epsilon");
    resolved["epsilon"] = epsilon;
  } else {
    resolved["epsilon"] = nullptr;
  }

  CsvReport report("partition", canonical(resolved));
  report.set_columns(
      {"kind", "trial", "epsilon", "atom_floor", "blocks", "max_block_norm", "pass"});
  bool all_pass = true;

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const FieldVector v = random_field(space, rng);
    const double atom_floor = mass_profile(space, v).atom_floor();
    const double total = field_norm(space, v);
    const double eps =
        fixed_eps ? epsilon : atom_floor + (total - atom_floor) * (0.05 + 0.9 * unit(rng));
    if (eps <= atom_floor) {
      // Below the atom floor the constructor must refuse.
      bool raised = false;
      try {
        refine_for_vector(space, v, eps);
      } catch (const AtomTooLarge&) {
        raised = true;
      }
      all_pass = all_pass && raised;
      report.add_row({std::string("atom"), std::int64_t{t}, eps, atom_floor, std::int64_t{0},
                      0.0, raised});
      continue;
    }
    const Partition p = refine_for_vector(space, v, eps);
    const double worst = max_block_norm(space, p, v);
    const bool pass = worst < eps;
    all_pass = all_pass && pass;
    report.add_row({std::string("refine"), std::int64_t{t}, eps, atom_floor,
                    std::int64_t{p.block_count()}, worst, pass});
  }

  // Two deliberate obstruction probes: epsilon at half the atom floor.
  for (int t = 0; t < 2; ++t) {
    const FieldVector v = random_field(space, rng);
    const double atom_floor = mass_profile(space, v).atom_floor();
    const double eps = 0.5 * atom_floor;
    bool raised = false;
    try {
      refine_for_vector(space, v, eps);
    } catch (const AtomTooLarge& e) {
      raised = e.mass() >= eps * eps;
    }
    all_pass = all_pass && raised;
    report.add_row(
        {std::string("atom"), std::int64_t{trials + t}, eps, atom_floor, std::int64_t{0}, 0.0,
         raised});
  }
  report.write(out);
  return all_pass ? 0 : 1;
}

}  // namespace carlab
