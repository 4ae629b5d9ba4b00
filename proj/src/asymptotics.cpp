#include "nlcf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <utility>

#include "nlcf/errors.hpp"
#include "nlcf/flow.hpp"
#include "nlcf/kernelmath.hpp"
#include "nlcf/threads.hpp"

namespace nlcf {
namespace {

constexpr double kPi = 3.14159265358979323846;

const Mollifier& shared_mollifier() {
  static const Mollifier moll;
  return moll;
}

// Strictly monotone toward the mode's limit; range-checked per mode.
void validate_params(const std::vector<double>& params, bool decreasing,
                     double lo, double hi, const char* what) {
  if (params.size() < 4) {
    fail(Errc::ConfigParse, "parameter sweeps need at least four rows");
  }
  for (size_t i = 0; i < params.size(); ++i) {
    if (!(params[i] > lo) || !(params[i] < hi)) {
      std::ostringstream os;
      os << what << " (got " << params[i] << ")";
      fail(Errc::ConfigParse, os.str());
    }
    if (i > 0) {
      const bool ok = decreasing ? params[i] < params[i - 1]
                                 : params[i] > params[i - 1];
      if (!ok) {
        fail(Errc::ConfigParse,
              "sweep parameters must move strictly monotonically toward the "
              "limit");
      }
    }
  }
}

// Distance of a row parameter from the mode's limit point, the regressor of
// the decay fit (|p| for limits at 0, 1-p for limits at 1).
double limit_gap(double p, bool limit_at_one) {
  return limit_at_one ? 1.0 - p : std::abs(p);
}

void finish_table(ConvergenceTable& table, bool limit_at_one) {
  const auto& rows = table.rows;
  const size_t m = rows.size();
  if (m >= 3) {
    // Least-squares slope of log(error) against log(gap) over the last three
    // rows; left at 0 when an error vanishes (nothing to fit).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    bool usable = true;
    for (size_t i = m - 3; i < m; ++i) {
      const double g = limit_gap(rows[i].param, limit_at_one);
      if (!(rows[i].abs_error > 0.0) || !(g > 0.0)) {
        usable = false;
        break;
      }
      const double lx = std::log(g), ly = std::log(rows[i].abs_error);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double var = sxx - sx * sx / 3.0;
    if (usable && var > 0.0) {
      table.decay_exponent = (sxy - sx * sy / 3.0) / var;
    }
    table.non_monotone = !(rows[m - 3].abs_error > rows[m - 2].abs_error &&
                           rows[m - 2].abs_error > rows[m - 1].abs_error);
    // Aitken extrapolation of the measured column through the last three
    // rows (exact for geometric convergence, diagnostic otherwise).
    const double d1 = rows[m - 2].measured - rows[m - 3].measured;
    const double d2 = rows[m - 1].measured - rows[m - 2].measured;
    const double den = d2 - d1;
    table.extrapolated_limit =
        std::abs(den) > 1e-300 * std::abs(d2)
            ? rows[m - 1].measured - d2 * d2 / den
            : rows[m - 1].measured;
  }
}

void run_rows_parallel(size_t m,
                       const std::function<void(size_t)>& eval_row) {
  std::vector<std::exception_ptr> errs(m);
  parallel_for(static_cast<long>(m), [&](long i) {
    try {
      eval_row(static_cast<size_t>(i));
    } catch (...) {
      errs[static_cast<size_t>(i)] = std::current_exception();
    }
  });
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string sweep_mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::SToZeroOrder0: return "s_to_zero_order0";
    case SweepMode::SToZeroOrder1: return "s_to_zero_order1";
    case SweepMode::SToOne: return "s_to_one";
    case SweepMode::RieszOrder0: return "riesz_order0";
    case SweepMode::RieszOrder1: return "riesz_order1";
    case SweepMode::MinkowskiToZero: return "minkowski_to_zero";
  }
  return "unknown";
}

std::string flow_limit_mode_name(FlowLimitMode mode) {
  switch (mode) {
    case FlowLimitMode::FracToConstant: return "frac_to_constant";
    case FlowLimitMode::FracRenormToZero: return "frac_renorm_to_zero";
    case FlowLimitMode::FracToClassical: return "frac_to_classical";
    case FlowLimitMode::RieszToConstant: return "riesz_to_constant";
    case FlowLimitMode::RieszRenormToZero: return "riesz_renorm_to_zero";
    case FlowLimitMode::MinkowskiToClassical: return "minkowski_to_classical";
  }
  return "unknown";
}

SetHandle bumped_set(const SetHandle& base, double theta_x, double a) {
  if (base.is_segment()) {
    // The far endpoint is the antipode of the boundary point, where the bump
    // profile 1 - cos reaches 2.
    return SetHandle::segment(base.as_segment().length + 2.0 * a,
                              base.complemented);
  }
  if (base.is_polar()) {
    const PolarSet2D& p = base.as_polar();
    const int deg = std::max(p.degree(), 1);
    std::vector<double> ak(static_cast<size_t>(deg), 0.0);
    std::vector<double> bk(static_cast<size_t>(deg), 0.0);
    for (int k = 1; k <= p.degree(); ++k) {
      ak[static_cast<size_t>(k - 1)] = p.coeff_a(k);
      bk[static_cast<size_t>(k - 1)] = p.coeff_b(k);
    }
    // a·(1 - cos(θ - θ_x)) = a - a·cosθ_x·cosθ - a·sinθ_x·sinθ.
    const double a0 = p.coeff_a(0) + a;
    ak[0] -= a * std::cos(theta_x);
    bk[0] -= a * std::sin(theta_x);
    return SetHandle::polar(PolarSet2D(p.center(), a0, ak, bk),
                            base.complemented);
  }
  fail(Errc::UnsupportedOnGrid, "sweep targets must be parametric sets");
}

void validate_sweep_spec(const SweepSpec& spec) {
  spec.quad.validate();
  const int d = spec.set.dimension();
  switch (spec.mode) {
    case SweepMode::SToZeroOrder0:
    case SweepMode::SToZeroOrder1:
      validate_params(spec.params, true, 0.0, 1.0,
                      "fractional sweeps need s in (0, 1) decreasing to 0");
      break;
    case SweepMode::SToOne:
      validate_params(spec.params, false, 0.0, 1.0,
                      "the s to one sweep needs s in (0, 1) increasing to 1");
      break;
    case SweepMode::RieszOrder0:
    case SweepMode::RieszOrder1:
      validate_params(spec.params, false, -double(d), 0.0,
                      "riesz sweeps need s in (-d, 0) increasing to 0");
      break;
    case SweepMode::MinkowskiToZero:
      validate_params(spec.params, true, 0.0, 1e30,
                      "the minkowski sweep needs radii decreasing to 0");
      break;
  }
}

ConvergenceTable sweep_curvature_limit(const SweepSpec& spec) {
  validate_sweep_spec(spec);
  const int d = spec.set.dimension();
  const double domega = d * unit_ball_volume(d);

  // The reference column is the limit value on the unperturbed target,
  // computed from the independent evaluators (never from the sweep itself).
  double reference = 0.0;
  switch (spec.mode) {
    case SweepMode::SToZeroOrder0:
    case SweepMode::RieszOrder0:
      reference = domega;
      break;
    case SweepMode::SToZeroOrder1:
    case SweepMode::RieszOrder1:
      reference = zero_param(spec.set, spec.theta, spec.quad).value;
      break;
    case SweepMode::SToOne:
      reference = unit_ball_volume(d - 1) *
                  classical_param(spec.set, spec.theta).value;
      break;
    case SweepMode::MinkowskiToZero:
      reference = shared_mollifier().cf() *
                  classical_param(spec.set, spec.theta).value;
      break;
  }

  ConvergenceTable table;
  table.mode = sweep_mode_name(spec.mode);
  table.tier = "param";
  table.rows.resize(spec.params.size());

  run_rows_parallel(spec.params.size(), [&](size_t i) {
    const double p = spec.params[i];
    const double amplitude = 1e-2 / static_cast<double>(i + 1);
    const SetHandle en = bumped_set(spec.set, spec.theta, amplitude);
    double measured = 0.0;
    switch (spec.mode) {
      case SweepMode::SToZeroOrder0:
        measured = p * frac_pv_param(p, en, spec.theta, spec.quad).value;
        break;
      case SweepMode::SToZeroOrder1:
        measured = curvature_eval(CurvatureKind::fractional_renormalized(p),
                                  en, spec.theta, spec.quad)
                       .value;
        break;
      case SweepMode::SToOne:
        measured =
            (1.0 - p) * frac_pv_param(p, en, spec.theta, spec.quad).value;
        break;
      case SweepMode::RieszOrder0:
        measured = p * riesz_param(p, en, spec.theta, spec.quad).value;
        break;
      case SweepMode::RieszOrder1:
        measured = curvature_eval(CurvatureKind::riesz_renormalized(p, d), en,
                                  spec.theta, spec.quad)
                       .value;
        break;
      case SweepMode::MinkowskiToZero:
        measured = minkowski_param(p, en, spec.theta).value;
        break;
    }
    table.rows[i] = {static_cast<int>(i + 1), p, measured, reference,
                     std::abs(measured - reference)};
  });

  finish_table(table, spec.mode == SweepMode::SToOne);
  return table;
}

namespace {

struct FlowLimitRow {
  CurvatureKind kind;
  double lambda_time = 1.0;
};

FlowLimitRow flow_limit_row(FlowLimitMode mode, double p) {
  switch (mode) {
    case FlowLimitMode::FracToConstant:
      return {CurvatureKind::fractional(p), p};
    case FlowLimitMode::FracRenormToZero:
      return {CurvatureKind::fractional_renormalized(p), 1.0};
    case FlowLimitMode::FracToClassical:
      return {CurvatureKind::fractional(p), 1.0 - p};
    case FlowLimitMode::RieszToConstant:
      return {CurvatureKind::riesz(p), -p};
    case FlowLimitMode::RieszRenormToZero:
      return {CurvatureKind::riesz_renormalized(p), 1.0};
    case FlowLimitMode::MinkowskiToClassical:
      return {CurvatureKind::minkowski(p), 1.0};
  }
  fail(Errc::ConfigParse, "unknown flow limit mode");
}

FlowLimitRow flow_limit_target(FlowLimitMode mode, double domega,
                               double cf) {
  switch (mode) {
    case FlowLimitMode::FracToConstant:
      return {CurvatureKind::constant(domega), 1.0};
    case FlowLimitMode::FracRenormToZero:
    case FlowLimitMode::RieszRenormToZero:
      return {CurvatureKind::zero(), 1.0};
    case FlowLimitMode::FracToClassical:
      // ω_{d-1}·κ in the plane: twice the classical speed.
      return {CurvatureKind::classical(), 2.0};
    case FlowLimitMode::RieszToConstant:
      return {CurvatureKind::constant(-domega), 1.0};
    case FlowLimitMode::MinkowskiToClassical:
      return {CurvatureKind::classical(), cf};
  }
  fail(Errc::ConfigParse, "unknown flow limit mode");
}

}  // namespace

void validate_flow_limit_spec(const FlowLimitSpec& spec) {
  switch (spec.mode) {
    case FlowLimitMode::FracToConstant:
    case FlowLimitMode::FracRenormToZero:
      validate_params(spec.params, true, 0.0, 1.0,
                      "fractional sweeps need s in (0, 1) decreasing to 0");
      break;
    case FlowLimitMode::FracToClassical:
      validate_params(spec.params, false, 0.0, 1.0,
                      "the s to one sweep needs s in (0, 1) increasing to 1");
      break;
    case FlowLimitMode::RieszToConstant:
    case FlowLimitMode::RieszRenormToZero:
      validate_params(spec.params, false, -2.0, 0.0,
                      "riesz sweeps need s in (-2, 0) increasing to 0");
      break;
    case FlowLimitMode::MinkowskiToClassical:
      validate_params(spec.params, true, 0.0, 1e30,
                      "the minkowski sweep needs radii decreasing to 0");
      break;
  }
  if (!(spec.rho0 > 0.0) || !(spec.t_star > 0.0)) {
    fail(Errc::ConfigParse, "flow limits need rho0 > 0 and t_star > 0");
  }
  if (spec.tier == FlowTier::Grid) {
    const bool fractional = spec.mode == FlowLimitMode::FracToConstant ||
                            spec.mode == FlowLimitMode::FracRenormToZero ||
                            spec.mode == FlowLimitMode::FracToClassical;
    if (!fractional) {
      fail(Errc::ConfigParse, "the grid tier covers the fractional kinds only");
    }
    for (double p : spec.params) {
      if (p < 0.1 || p > 0.6) {
        fail(Errc::ConfigParse,
             "the grid tier covers exponents s in [0.1, 0.6]");
      }
    }
  }
}

ConvergenceTable flow_limit_experiment(const FlowLimitSpec& spec) {
  validate_flow_limit_spec(spec);

  const double domega = 2.0 * unit_ball_volume(2);  // planar flows
  const double cf = shared_mollifier().cf();
  const double base_dt =
      spec.ode_dt > 0.0
          ? spec.ode_dt
          : (spec.mode == FlowLimitMode::MinkowskiToClassical ? 2e-4 : 1e-4);

  // Reference: the limit kind's own circle evolution at t_star, integrated by
  // the ODE tier regardless of the measurement tier.
  const FlowLimitRow target = flow_limit_target(spec.mode, domega, cf);
  const BallOde ref_ode = ball_ode_evolve(BallSpeed(target.kind), spec.rho0,
                                          spec.t_star, base_dt,
                                          target.lambda_time);
  const double reference = ref_ode.radii.back();

  ConvergenceTable table;
  table.mode = flow_limit_mode_name(spec.mode);
  table.tier = spec.tier == FlowTier::Ode ? "ode" : "grid";
  table.rows.resize(spec.params.size());

  for (size_t i = 0; i < spec.params.size(); ++i) {
    const double p = spec.params[i];
    const FlowLimitRow row = flow_limit_row(spec.mode, p);
    double measured = 0.0;
    if (spec.tier == FlowTier::Ode) {
      const BallOde ode = ball_ode_evolve(BallSpeed(row.kind), spec.rho0,
                                          spec.t_star, base_dt,
                                          row.lambda_time);
      measured = ode.radii.back();
    } else {
      GridField initial = [&] {
        ProfileSpec profile;
        profile.kind = ProfileSpec::Kind::Cone;
        profile.radius = spec.rho0;
        return grid_sample(spec.grid_extent, spec.grid_h, profile);
      }();
      FlowConfig cfg;
      cfg.kind = row.kind;
      cfg.R_cut = spec.grid_R_cut > 0.0
                      ? spec.grid_R_cut
                      : 2.0 * spec.grid_extent * std::sqrt(2.0);
      cfg.cfl = spec.cfl;
      cfg.lambda_time = row.lambda_time;
      cfg.t_end = spec.t_star;
      const FlowResult run = flow_run(cfg, initial);
      if (run.trace.front_lost) {
        fail(Errc::FrontNotFound, "the traced front vanished before t_star");
      }
      measured = run.trace.mean_radius.back();
    }
    table.rows[i] = {static_cast<int>(i + 1), p, measured, reference,
                     std::abs(measured - reference)};
  }

  finish_table(table, spec.mode == FlowLimitMode::FracToClassical);
  return table;
}

AxiomReport axiom_property_check(const CurvatureKind& kind, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  AxiomReport report;
  report.trials = 8;
  const QuadratureSettings quad;

  // Monotonicity on internally tangent disk pairs sharing the boundary point
  // x = (R1, 0) and its outward normal: the value on the larger disk must
  // not exceed the value on the smaller one.
  report.monotonicity_pass = true;
  for (int t = 0; t < report.trials; ++t) {
    const double r1 = 0.5 + u01(rng);
    const double r2 = r1 * (1.1 + 0.9 * u01(rng));
    const SetHandle small_disk =
        SetHandle::polar(PolarSet2D::disk({0.0, 0.0}, r1));
    const SetHandle big_disk =
        SetHandle::polar(PolarSet2D::disk({r1 - r2, 0.0}, r2));
    const CurvatureResult v1 = curvature_eval(kind, small_disk, 0.0, quad);
    const CurvatureResult v2 = curvature_eval(kind, big_disk, 0.0, quad);
    const double tol = v1.estimated_abs_error + v2.estimated_abs_error +
                       1e-9 * (1.0 + std::abs(v1.value) + std::abs(v2.value));
    if (v2.value > v1.value + tol) report.monotonicity_pass = false;
  }

  // Translation invariance and complement symmetry on random star-shaped
  // sets (gentle higher harmonics keep the radius positive).
  report.translation_pass = true;
  report.symmetry_pass = true;
  for (int t = 0; t < 4; ++t) {
    const double a0 = 1.2 + 0.3 * u01(rng);
    std::vector<double> ak = {0.0, 0.15 * (u01(rng) - 0.5)};
    std::vector<double> bk = {0.0, 0.0, 0.1 * (u01(rng) - 0.5)};
    const PolarSet2D base({0.0, 0.0}, a0, ak, bk);
    const double theta = 2.0 * kPi * u01(rng);
    const CurvatureResult v =
        curvature_eval(kind, SetHandle::polar(base), theta, quad);

    const Vec2 shift{6.0 * (u01(rng) - 0.5), 6.0 * (u01(rng) - 0.5)};
    const CurvatureResult vt = curvature_eval(
        kind, SetHandle::polar(base.translated(shift)), theta, quad);
    const double tdev = std::abs(vt.value - v.value);
    report.max_translation_dev = std::max(report.max_translation_dev, tdev);
    if (tdev > 1e-10 * (1.0 + std::abs(v.value))) {
      report.translation_pass = false;
    }

    if (kind.tag != KindTag::Constant) {
      const CurvatureResult vc =
          curvature_eval(kind, SetHandle::polar(base, true), theta, quad);
      const double sdev = std::abs(vc.value + v.value);
      report.max_symmetry_dev = std::max(report.max_symmetry_dev, sdev);
      if (sdev > 1e-12 * (1.0 + std::abs(v.value))) {
        report.symmetry_pass = false;
      }
    }
  }

  // Ball-speed scan on ρ ∈ [0.25, 8]: the smallest K ≥ 0 with
  // curvature(B_ρ) ≥ -K·ρ across the scan, plus a super-linear blow-down
  // flag when negative speeds grow faster than linearly.
  const BallSpeed speed(kind, 2);
  const int n_scan = 16;
  std::vector<double> rhos(n_scan), values(n_scan);
  for (int i = 0; i < n_scan; ++i) {
    rhos[i] = 0.25 * std::pow(32.0, i / double(n_scan - 1));
    values[i] = speed(rhos[i]);
    report.growth_constant =
        std::max(report.growth_constant, -values[i] / rhos[i]);
  }
  if (values[n_scan - 1] < 0.0 && values[n_scan - 2] < 0.0) {
    const double slope =
        std::log(values[n_scan - 1] / values[n_scan - 2]) /
        std::log(rhos[n_scan - 1] / rhos[n_scan - 2]);
    report.superlinear_blowdown = slope > 1.05;
  }
  return report;
}

}  // namespace nlcf
