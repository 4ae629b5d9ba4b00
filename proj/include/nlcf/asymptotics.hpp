#pragma once

#include <string>
#include <vector>

#include "nlcf/curvature.hpp"
#include "nlcf/geom.hpp"
#include "nlcf/oracles.hpp"

namespace nlcf {

// Parameter-limit sweeps for the curvature family. Every sweep evaluates row
// n on a perturbed copy E_n of the target set (an additive radial bump of
// amplitude 10⁻²/n fixing the boundary point), so the measured limits are
// exercised along genuinely varying set sequences rather than a constant one.
enum class SweepMode {
  SToZeroOrder0,    // s_n·H^{s_n}(x, E_n) → d·ω_d
  SToZeroOrder1,    // H^{s_n}(x, E_n) - d·ω_d/s_n → H⁰(x, E)
  SToOne,           // (1-s_n)·H^{s_n}(x, E_n) → ω_{d-1}·κ(x, E)
  RieszOrder0,      // s_n·K^{s_n}(x, E_n) → d·ω_d      (s_n < 0)
  RieszOrder1,      // K^{s_n}(x, E_n) - d·ω_d/s_n → H⁰(x, E)
  MinkowskiToZero,  // κ^f_{r_n}(x, E_n) → c_f·κ(x, E)
};

enum class FlowLimitMode {
  FracToConstant,        // time scale s_n; limit speed d·ω_d
  FracRenormToZero,      // no rescaling; limit kind Zero
  FracToClassical,       // time scale 1-s_n; limit speed ω_{d-1}·κ
  RieszToConstant,       // time scale -s_n; limit speed -d·ω_d (expansion)
  RieszRenormToZero,     // no rescaling; limit kind Zero
  MinkowskiToClassical,  // no rescaling; limit speed c_f·κ
};

enum class FlowTier { Ode, Grid };

std::string sweep_mode_name(SweepMode mode);
std::string flow_limit_mode_name(FlowLimitMode mode);

struct SweepSpec {
  SweepMode mode = SweepMode::SToZeroOrder0;
  std::vector<double> params;  // strictly monotone toward the limit, ≥ 4
  SetHandle set;               // target set (boundary point at theta)
  double theta = 0.0;
  QuadratureSettings quad;
};

struct ConvergenceRow {
  int n = 0;
  double param = 0.0;
  double measured = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
};

struct ConvergenceTable {
  std::string mode;
  std::string tier;  // "param", "ode", or "grid"
  std::vector<ConvergenceRow> rows;
  // Least-squares slope of log|error| against log(param) over the last
  // three rows; diagnostic only, never asserted beyond monotonicity.
  double decay_exponent = 0.0;
  // Three-row fit measured = A + B·(1-s)^p (SToOne only): the extrapolated
  // limit A, used to decide which recovery constant the data selects.
  double extrapolated_limit = 0.0;
  // Set when the abs_error column fails to decrease strictly over the final
  // three rows; the table is still returned (callers report the condition).
  bool non_monotone = false;
};

// The perturbed copy used by the sweeps: r_n(θ) = r(θ) + a·(1 - cos(θ-θ_x))
// for star-shaped sets (vanishing to second order at θ_x, so the boundary
// point and its normal stay fixed); segments grow by 2a at the far end.
SetHandle bumped_set(const SetHandle& base, double theta_x, double a);

// Validation shared with --dry-run: parameter count, range, and direction.
void validate_sweep_spec(const SweepSpec& spec);

ConvergenceTable sweep_curvature_limit(const SweepSpec& spec);

struct FlowLimitSpec {
  FlowLimitMode mode = FlowLimitMode::FracToConstant;
  std::vector<double> params;  // s_n (fractional/Riesz) or r_n (Minkowski)
  FlowTier tier = FlowTier::Ode;
  double rho0 = 1.0;    // initial circle radius
  double t_star = 0.05; // evaluation time (before extinction)
  double ode_dt = 0.0;  // 0: 1e-4 (2e-4 for the Minkowski mode)
  // Grid-tier controls (fractional modes with s ∈ [0.1, 0.6] only):
  double grid_extent = 2.0;
  double grid_h = 0.04;
  double grid_R_cut = 0.0;  // 0: grid diagonal (mismatch check vacuous)
  double cfl = 0.4;
};

// Validation shared with --dry-run (tier restrictions included).
void validate_flow_limit_spec(const FlowLimitSpec& spec);

// Rescaled circle flows against their limit flow: measured = front radius at
// t_star under the kind with the mode's time scale; reference = the limit
// kind's radius at t_star (integrated by the same ODE tier).
ConvergenceTable flow_limit_experiment(const FlowLimitSpec& spec);

// Randomized structural checks of one curvature kind.
struct AxiomReport {
  bool monotonicity_pass = false;  // nested tangent disks, value order
  bool translation_pass = false;   // invariance under set+point shifts
  bool symmetry_pass = false;      // complement handle = exact negation
  double max_translation_dev = 0.0;
  double max_symmetry_dev = 0.0;
  // Smallest K ≥ 0 with ball_curvature(ρ) ≥ -K·ρ over the scan ρ ∈ [0.25, 8]
  // (linear lower bound on the blow-down of ball speeds).
  double growth_constant = 0.0;
  // Negative ball curvatures growing super-linearly in ρ (no linear K can
  // hold for large balls; Riesz exponents below -1).
  bool superlinear_blowdown = false;
  int trials = 0;
};
AxiomReport axiom_property_check(const CurvatureKind& kind, unsigned seed);

}  // namespace nlcf
