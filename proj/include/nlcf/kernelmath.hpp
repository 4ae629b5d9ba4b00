#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "nlcf/errors.hpp"

namespace nlcf {

// Compensated (Kahan) accumulator. Used wherever a sum must be reproducible
// and insensitive to a long tail of small terms.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Volume of the unit ball in dimension d: ω₁ = 2, ω₂ = π, ω₃ = 4π/3.
double unit_ball_volume(int d);

// ∫_a^b ρ^{-1-s} dρ with the logarithmic limit at s = 0:
//   s ≠ 0 : (a^{-s} - b^{-s}) / s
//   s = 0 : ln(b / a)
// Stable for |s| → 0 (evaluated via expm1 below |s| = 1e-3). Requires
// 0 ≤ a < b; a = 0 is allowed only for s < 0, otherwise DivergentPrimitive.
double radial_primitive(double s, double a, double b);

// ∫_{|y| > R} |y|^{-(d+s)} dy = d·ω_d·R^{-s}/s for s > 0 (DivergentTail
// otherwise).
double tail_integral(int d, double s, double R);

// Integral of |y|^{-(2+s)} over the square cell of side h centered at h·z,
// z ∈ ℤ² \ {0}, by a 3×3 tensor Gauss rule (relative error ≤ 1e-4 for
// |z| ≥ 2, growing to ≈ 5e-4 on the touching ring |z| = 1). A midpoint
// fallback h²·|hz|^{-(2+s)} backs the rule at |z| = 1 in the (unreachable for
// valid inputs) event the tensor rule fails to produce a finite value.
// Requesting z = 0 is DivergentPrimitive territory: CenterCell.
double cell_weight(double s, std::array<int, 2> z, double h);

// Gauss–Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre recurrence (deterministic).
const std::vector<double>& gauss_legendre_nodes(int n);
const std::vector<double>& gauss_legendre_weights(int n);

// Recursive adaptive Simpson integration to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

// Smooth even bump supported on [-w, w] (default w = 1):
//   f(σ) = exp(-1 / (1 - (σ/w)²)) for |σ| < w, 0 otherwise.
// Width is the only admissible configuration knob for the regularized
// Minkowski curvature; all members are deterministic and cached.
class Mollifier {
 public:
  explicit Mollifier(double width = 1.0);

  double width() const { return width_; }
  double value(double sigma) const;       // f(σ)
  double derivative(double sigma) const;  // f'(σ)

  // c_f = ∫₀¹ f(σ) dσ, computed by adaptive Simpson to 1e-12 (cached).
  double cf() const { return cf_; }

  // Σ over the fixed 64-node Gauss rule on [0,1] of (-σ f'(σ)); this is the
  // quadrature's reproduction of c_f (they agree to ≈ 7e-13 at width 1) and
  // the exact constant the regularized-curvature quadrature reproduces on
  // circles.
  double weight_gl64() const { return weight_gl64_; }

  // Nodes of the 64-point rule mapped to [0, 1], with weights.
  const std::array<double, 64>& nodes01() const { return nodes01_; }
  const std::array<double, 64>& weights01() const { return weights01_; }

 private:
  double width_;
  double cf_;
  double weight_gl64_;
  std::array<double, 64> nodes01_;
  std::array<double, 64> weights01_;
};

}  // namespace nlcf
