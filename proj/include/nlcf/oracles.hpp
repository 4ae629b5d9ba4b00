#pragma once

#include <vector>

#include "nlcf/curvature.hpp"

namespace nlcf {

// Closed-form curvature of the segment [-L, 0] at its endpoint 0 (d = 1):
//   fractional / Riesz   2·L^{-s}/s
//   zero                 -2·ln L
//   renormalized kinds   2·(L^{-s} - 1)/s
//   constant             c
// Classical and Minkowski kinds have no segment realization.
double segment_oracle_1d(const CurvatureKind& kind, double L);

// Curvature of the unit disk for the radial kernel family, exact via the
// Gamma function: (2^{1-s}/s)·√π·Γ((1-s)/2)/Γ(1-s/2) for s ∈ (-2,1)\{0},
// and 0 at s = 0 (the logarithmic kind vanishes on the unit disk).
double disk_kernel_curvature(double s);

// Curvature of centered balls as a function of the radius. The unit-ball
// value is computed once (closed form where one exists); all other radii
// follow from the exact scaling laws
//   fractional/Riesz  ρ^{-s}·V₁          zero         V₁ - d·ω_d·ln ρ
//   renormalized      ρ^{-s}·V₁ + d·ω_d·(ρ^{-s} - 1)/s
//   classical         (d-1)/ρ            constant     c
//   minkowski(r)      (1/ρ)·[minkowski at radius r/ρ on the unit ball]
// (the Minkowski kind keeps its finite mollification radius, so it is
// re-evaluated per radius rather than scaled from a single number).
class BallSpeed {
 public:
  explicit BallSpeed(const CurvatureKind& kind, int dimension = 2);
  double operator()(double rho) const;
  const CurvatureKind& kind() const { return kind_; }
  int dimension() const { return d_; }

 private:
  CurvatureKind kind_;
  int d_;
  double unit_value_ = 0.0;
};

// Convenience wrapper constructing the BallSpeed on the fly.
double ball_speed(const CurvatureKind& kind, double rho, int dimension = 2);

// Radius evolution of a centered ball under dρ/dt = -λ·speed(ρ), classical
// fourth-order Runge-Kutta with fixed dt. Stops early if the radius falls
// below 1e-9 (extinct) or exceeds 1e9 (blew_up).
struct BallOde {
  std::vector<double> times;
  std::vector<double> radii;
  bool extinct = false;
  bool blew_up = false;
};
BallOde ball_ode_evolve(const BallSpeed& speed, double rho0, double t_end,
                        double dt, double lambda_time = 1.0);

// Exact radius of a circle shrinking by dR/dt = -c/R: √(R₀² - 2ct).
double mcf_circle_exact(double r0, double c, double t);

// Exponential barrier radius r₀·e^{Kt} used in confinement checks.
double barrier_radius(double r0, double growth_rate, double t);

}  // namespace nlcf
