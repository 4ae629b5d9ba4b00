#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlcf/geom.hpp"
#include "nlcf/kernelmath.hpp"

namespace nlcf {

// The curvature family. Sign conventions: all kinds are positive on convex
// sets at convex boundary points (the unit disk has positive curvature of
// every kind except Riesz, whose value on the disk is negative by its
// definition below).
//
//   Classical                sum of principal curvatures (1/R on circles)
//   Fractional(s), s∈(0,1)   principal value of ∫ (χ_{E^c} - χ_E)|x-y|^{-d-s}
//   Zero                     the same with kernel |x-y|^{-d}, truncated at a
//                            radius R > diam(E) and renormalized by
//                            -d·ω_d·ln R (compact side; +d·ω_d·ln R for
//                            complements), which removes the R dependence
//   Riesz(s), s∈(-d,0)       -2∫_E |x-y|^{-d-s} dy (compact side; the
//                            complement side is +2 over the compact core);
//                            integrable, no principal value
//   FractionalRenormalized   Fractional minus d·ω_d/s
//   RieszRenormalized        Riesz minus d·ω_d/s  (note d·ω_d/s < 0 here)
//   MinkowskiRegularized(r)  mollified two-sided Minkowski content average
//                            ∫₀¹ (-σ f'(σ)) [κ^ou_{rσ} + κ^in_{rσ}] dσ; on
//                            circles of radius R > r this equals c_f/R where
//                            c_f = ∫₀¹ f (un-normalized convention; divide by
//                            c_f for a mean-curvature-normalized reading)
//   Constant(c)              the constant speed c
enum class KindTag {
  Classical,
  Fractional,
  FractionalRenormalized,
  Zero,
  Riesz,
  RieszRenormalized,
  MinkowskiRegularized,
  Constant,
};

struct CurvatureKind {
  KindTag tag = KindTag::Classical;
  double param = 0.0;  // s (fractional/Riesz), r (Minkowski), c (constant)

  static CurvatureKind classical() { return {KindTag::Classical, 0.0}; }
  static CurvatureKind fractional(double s);
  static CurvatureKind fractional_renormalized(double s);
  static CurvatureKind zero() { return {KindTag::Zero, 0.0}; }
  static CurvatureKind riesz(double s, int d = 2);
  static CurvatureKind riesz_renormalized(double s, int d = 2);
  static CurvatureKind minkowski(double r);
  static CurvatureKind constant(double c) { return {KindTag::Constant, c}; }

  // Riesz exponents below -1 are legal to evaluate but generate flows whose
  // ball speeds grow super-linearly; they carry this advisory flag.
  bool no_global_flow() const {
    return tag == KindTag::Riesz || tag == KindTag::RieszRenormalized
               ? param < -1.0
               : false;
  }
  bool is_riesz_family() const {
    return tag == KindTag::Riesz || tag == KindTag::RieszRenormalized;
  }
  bool is_fractional_family() const {
    return tag == KindTag::Fractional ||
           tag == KindTag::FractionalRenormalized;
  }
  std::string name() const;
};

struct CurvatureResult {
  double value = 0.0;
  double estimated_abs_error = 0.0;
  int angular_nodes = 0;      // pair directions actually evaluated
  int crossings = 0;          // total boundary crossings located
  double tail_contribution = 0.0;
  bool no_global_flow = false;
};

// Angular/radial quadrature controls for the parametric evaluators.
struct QuadratureSettings {
  // Angular budget: the evaluator spends n_theta Gauss pair-nodes (each pair
  // covers two antipodal directions), concentrated toward the two tangent
  // directions where the integrand peaks. Must be even and at least 64.
  int n_theta = 512;
  double rho_max = 0.0;      // 0: auto = 2·diam(E) + max_y∈∂E |x - y|
  double coarse_step = 0.0;  // crossing scan step; 0: diam(E)/64
  void validate() const;
};

// Classical curvature (sum of principal curvatures) at boundary parameter θ.
// For complemented handles the sign flips (the complement's outward normal is
// the inward normal of the set).
CurvatureResult classical_param(const SetHandle& set, double theta);

// Fractional curvature, s ∈ (0, 1): antipodal-pair principal value plus the
// analytic far tail d·ω_d·ρ_max^{-s}/s carried by the far-field phase.
CurvatureResult frac_pv_param(double s, const SetHandle& set, double theta,
                              const QuadratureSettings& q = {});

// Renormalization-invariant curvature at s = 0 (logarithmic kernel).
CurvatureResult zero_param(const SetHandle& set, double theta,
                           const QuadratureSettings& q = {});

// Riesz curvature, s ∈ (-d, 0): -2∫_E (compact side) / +2 over the compact
// core (complement side); realized by integrating the kernel over the
// set-side radial intervals directly, which is value-identical to the
// "full-space annulus minus set" split and needs no principal value.
CurvatureResult riesz_param(double s, const SetHandle& set, double theta,
                            const QuadratureSettings& q = {});

// Regularized Minkowski curvature at mollification radius r. The one-sided
// contents κ^ou_ρ = (1+ρκ)/(2ρ) and κ^in_ρ = -(1-ρκ)/(2ρ) enter only where
// the respective tangency condition d(x ± ρν, ·) = ρ holds (checked against
// the cached boundary sampling with local refinement, ties within a relative
// 1e-6 counting as satisfied), and 0 otherwise.
CurvatureResult minkowski_param(double r, const SetHandle& set, double theta);

// Dispatch on the curvature kind for parametric sets (segments use θ = 0).
// Renormalized kinds subtract d·ω_d/s with a compensated difference.
CurvatureResult curvature_eval(const CurvatureKind& kind, const SetHandle& set,
                               double theta, const QuadratureSettings& q = {});

// --- Grid evaluation -------------------------------------------------------

// Reusable per-field state for grid curvature: the offset/weight tables for
// one (kind, h, R_cut) and the sorted-value ladders used to decide the
// phase-mismatch test exactly. Build once per field version and share across
// cells; the plain curvature_grid overload builds it on the fly.
class GridEvalContext {
 public:
  GridEvalContext(const CurvatureKind& kind, const GridField& field,
                  double R_cut);
  const CurvatureKind& kind() const { return kind_; }
  double cutoff() const { return R_cut_; }

  // Rebuild the value ladders for a new version of the same field (same
  // kind, spacing, cutoff); cheaper than reconstructing the context.
  void refresh(const GridField& field);

  // True when some in-grid cell farther than R_cut from cell i carries a
  // phase different from the far-field phase at this level (the analytic
  // tail would then be wrong): exactly the CutoffTooSmall condition.
  bool phase_mismatch_beyond_cutoff(std::array<int, 2> i, double level) const;

  double evaluate(const GridField& field, double level,
                  std::array<int, 2> i) const;

 private:
  CurvatureKind kind_;
  double R_cut_;
  double tail_ = 0.0;
  double renorm_shift_ = 0.0;
  double c0_ = 0.0;                  // far constant of the field at build time
  double r2max_cells_ = 0.0;         // (R_cut/h)² plus matching slack
  std::vector<int> off_x_, off_y_;   // antipodal-pair representatives
  std::vector<double> weights_;
  // Farthest-cell queries: cells sorted by value, with running maxima of the
  // projections onto 8 directions (an octagonal bound on every value prefix).
  // "Does any cell with value ≤/≥ level lie farther than R_cut from i?" is
  // answered by the octagon bound in O(1) in the clear cases; when the bound
  // straddles R_cut an exact scan of the prefix decides before any raise.
  struct ValueLadder {
    std::vector<double> values;                  // sorted
    std::vector<std::array<int, 2>> cells;       // cells in the same order
    std::vector<std::array<double, 8>> support;  // prefix maxima of p·u_k
  };
  ValueLadder ascending_;   // prefixes are sublevel sets
  ValueLadder descending_;  // prefixes are superlevel sets
  void build_ladders(const GridField& field);
  bool ladder_reaches_beyond(const ValueLadder& ladder, size_t count,
                             std::array<int, 2> i) const;
};

// Curvature of the superlevel set {u ≥ level} at cell i from cell-center
// phases g = -sign(u_j - level) ∈ {-1, 0, +1} (ties are phase-neutral):
//   fractional/zero:  Σ_{antipodal pairs, 0 < |z|h ≤ R_cut} w(z)(g_+ + g_-)
//                     plus the far-phase tail (d·ω_d·R_cut^{-s}/s, or the
//                     -d·ω_d·ln R_cut renormalization at s = 0)
//   Riesz:            Σ w(z)(g_+ + g_- - 2 g_far), no tail
// Classical and Minkowski kinds have no grid realization (UnsupportedOnGrid);
// a phase mismatch beyond R_cut raises CutoffTooSmall.
double curvature_grid(const CurvatureKind& kind, const GridField& field,
                      double level, std::array<int, 2> i, double R_cut);
double curvature_grid(const GridEvalContext& ctx, const GridField& field,
                      double level, std::array<int, 2> i);

}  // namespace nlcf
