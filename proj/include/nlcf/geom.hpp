#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nlcf/errors.hpp"

namespace nlcf {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  Vec2() = default;
  Vec2(double px, double py) : x(px), y(py) {}
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {c * x, c * y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

// One-dimensional model set E = [-L, 0] with boundary point x = 0 and outward
// direction +1.
struct Segment1D {
  double length;
  explicit Segment1D(double L);
};

// Star-shaped planar set given by a truncated Fourier radius
//   r(θ) = a₀ + Σ_{k=1..K} (a_k cos kθ + b_k sin kθ),   K ≤ 8,
// around a center point. Construction validates r(θ) ≥ r_min > 0 on a dense
// sample and caches boundary geometry used for distance queries.
class PolarSet2D {
 public:
  static constexpr int kMaxDegree = 8;

  PolarSet2D(Vec2 center, double a0, const std::vector<double>& ak,
             const std::vector<double>& bk);

  static PolarSet2D disk(Vec2 center, double radius);
  // Fourier truncation (degree K) of the polar radius of the axis-aligned
  // ellipse x²/a² + y²/b² ≤ 1. Note the truncated curve is the object every
  // downstream computation sees; e.g. for a = 2, b = 1, K = 8 its curvature
  // at θ = 0 is ≈ 1.88195, not the ideal a/b² = 2.
  static PolarSet2D ellipse(double a, double b, int degree = kMaxDegree);

  double radius(double theta) const;
  double radius_d1(double theta) const;
  double radius_d2(double theta) const;

  Vec2 center() const { return center_; }
  int degree() const { return degree_; }
  double coeff_a(int k) const { return ak_[k]; }  // k = 0..degree
  double coeff_b(int k) const { return bk_[k]; }  // b₀ unused (0)

  bool contains(Vec2 p) const;
  double min_radius() const { return r_min_; }
  double max_radius() const { return r_max_; }
  // Largest pairwise distance between boundary samples (512-sample estimate,
  // used only to scale cutoffs and tolerances).
  double diameter() const { return diameter_; }
  // max_y∈∂E |x - y| over the cached boundary samples.
  double farthest_boundary_distance(Vec2 x) const;

  // Minimum distance from p to the boundary curve: coarse pass over the
  // cached samples, then local parabolic refinement in θ.
  double boundary_distance(Vec2 p) const;

  // Scaled copy λ·E (about the origin: center and radius both scale).
  PolarSet2D scaled(double lambda) const;
  // Translated copy E + v.
  PolarSet2D translated(Vec2 v) const;

 private:
  Vec2 center_;
  int degree_;
  std::array<double, kMaxDegree + 1> ak_{};
  std::array<double, kMaxDegree + 1> bk_{};
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  double diameter_ = 0.0;
  std::vector<Vec2> boundary_samples_;  // dense cache for distance queries
  std::vector<double> sample_thetas_;
};

// Uniform cell-centered scalar field on [origin, origin + n·h]² with a
// constant far-field value C₀; values are stored row-major (index
// iy * n1 + ix). Reads outside the grid return C₀.
struct GridField {
  Vec2 origin;
  double h = 0.0;
  int n1 = 0;
  int n2 = 0;
  double far_constant = 0.0;
  std::vector<double> values;

  double at(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= n1 || iy >= n2) return far_constant;
    return values[static_cast<size_t>(iy) * n1 + ix];
  }
  double& cell(int ix, int iy) {
    return values[static_cast<size_t>(iy) * n1 + ix];
  }
  Vec2 cell_center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * h, origin.y + (iy + 0.5) * h};
  }
  bool in_grid(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < n1 && iy < n2;
  }
};

// Grid set representation: superlevel set {u ≥ level} of a field.
struct GridLevelSet {
  GridField field;
  double level = 0.0;
};

// A set for curvature evaluation: one of the concrete representations plus a
// complement flag (the complement of a star-shaped or grid set is handled by
// phase flips, never materialized).
struct SetHandle {
  std::variant<Segment1D, PolarSet2D, GridLevelSet> rep;
  bool complemented = false;

  static SetHandle segment(double L, bool compl_ = false) {
    return {Segment1D(L), compl_};
  }
  static SetHandle polar(PolarSet2D s, bool compl_ = false) {
    return {std::move(s), compl_};
  }
  static SetHandle grid(GridLevelSet g, bool compl_ = false) {
    return {std::move(g), compl_};
  }
  bool is_segment() const { return std::holds_alternative<Segment1D>(rep); }
  bool is_polar() const { return std::holds_alternative<PolarSet2D>(rep); }
  bool is_grid() const { return std::holds_alternative<GridLevelSet>(rep); }
  const Segment1D& as_segment() const { return std::get<Segment1D>(rep); }
  const PolarSet2D& as_polar() const { return std::get<PolarSet2D>(rep); }
  const GridLevelSet& as_grid() const { return std::get<GridLevelSet>(rep); }
  int dimension() const { return is_segment() ? 1 : 2; }

  // Membership including the complement flag (grid sets: u(nearest cell) ≥
  // level, far field C₀ outside).
  bool contains(Vec2 p) const;
};

// Boundary point data of a star-shaped set at parameter θ: position, outward
// unit normal, and signed curvature (sum-of-principal-curvatures convention;
// positive for convex sets, κ = 1/R on the radius-R circle).
struct BoundaryPoint {
  Vec2 position;
  Vec2 normal;
  Vec2 tangent;
  double curvature = 0.0;
};

BoundaryPoint boundary_data(const PolarSet2D& set, double theta);

// Radial membership profile of a set along the ray x + ρ·e, ρ ∈ (0, ρ_max):
// sorted crossing radii plus the membership of the first interval. Crossings
// are bracketed by a coarse scan (step `coarse_step`, refined geometrically
// below it down to `near_floor` for grazing rays) and bisected to
// 1e-12·diam(E). More than 64 crossings raises CrossingOverflow.
struct Crossings {
  std::vector<double> radii;
  bool first_inside = false;
};

struct RayOptions {
  double coarse_step = 0.0;  // 0: diam/64
  double near_floor = 0.0;   // smallest probed radius (0: coarse_step/1024)
};

Crossings ray_crossings(const SetHandle& set, Vec2 x, Vec2 e, double rho_max,
                        const RayOptions& opts = {});

// Synthetic field profiles for grid experiments.
struct ProfileSpec {
  enum class Kind {
    Cone,           // min(|y - c| - R, C₀): signed cone, capped above
    Circle,         // clamp(|y - c| - R, -C₀, C₀): capped both sides
    SmoothedDisk,   // C₀·tanh((|y - c| - R)/w): smoothed indicator
  };
  Kind kind = Kind::Cone;
  double radius = 1.0;
  double far_constant = 0.5;
  double smoothing = 0.0;          // SmoothedDisk width; 0 → 4h
  std::array<int, 2> shift{0, 0};  // exact integer-cell shift of the profile
  double scale = 1.0;              // overall multiplier (e.g. -1 to flip sign)
};

// Sample a profile on the 2A×2A grid of spacing h centered at the origin.
// Cell (ix, iy) is centered at (-A + (ix+0.5)h, -A + (iy+0.5)h); the shift is
// applied inside the coordinate expression so shifted fields are bitwise
// translates. The outermost two cell layers are clamped to C₀. A/h > 1024
// raises GridTooLarge.
GridField grid_sample(double A, double h, const ProfileSpec& profile);

// Closed polyline extracted from the level line {u = level} by marching
// squares with linear interpolation on cell-center edges, plus distance
// statistics about a reference center.
struct Contour {
  std::vector<Vec2> points;  // closed loop; points.front() != points.back()
  double mean_radius = 0.0;
  double min_radius = 0.0;
  double max_radius = 0.0;
  double perimeter = 0.0;
};

Contour extract_front(const GridField& field, double level,
                      Vec2 center_ref = {0.0, 0.0});

// Binary grid file format (little endian): magic "NLCF", u32 n1, u32 n2,
// f64 h, f64 origin.x, f64 origin.y, f64 C₀, then n1·n2 row-major f64 values.
void write_grid_file(const GridField& field, const std::string& path);
GridField read_grid_file(const std::string& path);

}  // namespace nlcf
