#include <cmath>

#include "nlcf/oracles.hpp"

namespace nlcf {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

double segment_oracle_1d(const CurvatureKind& kind, double L) {
  if (!(L > 0.0)) fail(Errc::ConfigParse, "segment length must be positive");
  switch (kind.tag) {
    case KindTag::Constant:
      return kind.param;
    case KindTag::Zero:
      return -2.0 * std::log(L);
    case KindTag::Fractional:
    case KindTag::Riesz:
      return 2.0 * std::pow(L, -kind.param) / kind.param;
    case KindTag::FractionalRenormalized:
    case KindTag::RieszRenormalized:
      return 2.0 * (std::pow(L, -kind.param) - 1.0) / kind.param;
    case KindTag::Classical:
    case KindTag::MinkowskiRegularized:
      fail(Errc::UnsupportedKind,
           kind.name() + " curvature has no segment realization");
  }
  fail(Errc::UnsupportedKind, "unknown curvature kind");
}

double disk_kernel_curvature(double s) {
  if (s == 0.0) return 0.0;
  if (!(s > -2.0) || !(s < 1.0))
    fail(Errc::UnsupportedKind,
         "disk kernel curvature requires s in (-2, 1)");
  return std::pow(2.0, 1.0 - s) / s * kSqrtPi *
         std::tgamma(0.5 * (1.0 - s)) / std::tgamma(1.0 - 0.5 * s);
}

BallSpeed::BallSpeed(const CurvatureKind& kind, int dimension)
    : kind_(kind), d_(dimension) {
  if (d_ != 1 && d_ != 2)
    fail(Errc::ConfigParse, "ball speeds are available in d = 1 and d = 2");
  switch (kind_.tag) {
    case KindTag::Constant:
      unit_value_ = kind_.param;
      break;
    case KindTag::Classical:
      unit_value_ = static_cast<double>(d_ - 1);
      break;
    case KindTag::Zero:
      // Unit-ball value: 0 in the plane, -2·ln 2 for the interval of
      // radius 1 (= length 2).
      unit_value_ = d_ == 2 ? 0.0 : -2.0 * std::log(2.0);
      break;
    case KindTag::Fractional:
    case KindTag::Riesz:
      unit_value_ = d_ == 2 ? disk_kernel_curvature(kind_.param)
                            : 2.0 * std::pow(2.0, -kind_.param) / kind_.param;
      break;
    case KindTag::FractionalRenormalized:
    case KindTag::RieszRenormalized: {
      const double s = kind_.param;
      const double domega = d_ == 2 ? 2.0 * kPi : 2.0;
      unit_value_ = (d_ == 2 ? disk_kernel_curvature(s)
                             : 2.0 * std::pow(2.0, -s) / s) -
                    domega / s;
      break;
    }
    case KindTag::MinkowskiRegularized:
      if (d_ != 2)
        fail(Errc::UnsupportedKind,
             "minkowski curvature has no segment realization");
      break;  // evaluated per radius in operator()
  }
  if (kind_.is_riesz_family() && kind_.param <= -d_)
    fail(Errc::UnsupportedKind, "riesz kind: s must exceed -d");
}

double BallSpeed::operator()(double rho) const {
  if (!(rho > 0.0)) fail(Errc::ConfigParse, "ball radius must be positive");
  const double s = kind_.param;
  const double domega = d_ == 2 ? 2.0 * kPi : 2.0;
  switch (kind_.tag) {
    case KindTag::Constant:
      return unit_value_;
    case KindTag::Classical:
      return unit_value_ / rho;
    case KindTag::Zero:
      return unit_value_ - domega * std::log(rho);
    case KindTag::Fractional:
    case KindTag::Riesz:
      return std::pow(rho, -s) * unit_value_;
    case KindTag::FractionalRenormalized:
    case KindTag::RieszRenormalized: {
      // Scaling of the un-renormalized value, with the constant shift
      // re-applied: ρ^{-s}(V₁ + dω_d/s) - dω_d/s.
      const double raw_unit = unit_value_ + domega / s;
      return std::pow(rho, -s) * raw_unit - domega / s;
    }
    case KindTag::MinkowskiRegularized: {
      SetHandle disk = SetHandle::polar(PolarSet2D::disk({0.0, 0.0}, 1.0));
      CurvatureResult r = minkowski_param(kind_.param / rho, disk, 0.0);
      return r.value / rho;
    }
  }
  fail(Errc::UnsupportedKind, "unknown curvature kind");
}

double ball_speed(const CurvatureKind& kind, double rho, int dimension) {
  return BallSpeed(kind, dimension)(rho);
}

BallOde ball_ode_evolve(const BallSpeed& speed, double rho0, double t_end,
                        double dt, double lambda_time) {
  if (!(rho0 > 0.0) || !(t_end > 0.0) || !(dt > 0.0))
    fail(Errc::ConfigParse,
         "ball evolution needs positive radius, horizon, and step");
  BallOde out;
  out.times.push_back(0.0);
  out.radii.push_back(rho0);
  auto rhs = [&](double rho) { return -lambda_time * speed(rho); };
  double t = 0.0, rho = rho0;
  const double floor = 1e-9, ceiling = 1e9;
  while (t < t_end - 1e-15) {
    const double step = std::min(dt, t_end - t);
    bool degenerate = false;
    auto guard = [&](double r) {
      if (r <= floor) {
        out.extinct = true;
        degenerate = true;
      } else if (r >= ceiling) {
        out.blew_up = true;
        degenerate = true;
      }
      return r;
    };
    const double k1 = rhs(rho);
    const double r2 = guard(rho + 0.5 * step * k1);
    if (degenerate) break;
    const double k2 = rhs(r2);
    const double r3 = guard(rho + 0.5 * step * k2);
    if (degenerate) break;
    const double k3 = rhs(r3);
    const double r4 = guard(rho + step * k3);
    if (degenerate) break;
    const double k4 = rhs(r4);
    rho = guard(rho + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    if (degenerate) break;
    t += step;
    out.times.push_back(t);
    out.radii.push_back(rho);
  }
  return out;
}

double mcf_circle_exact(double r0, double c, double t) {
  const double arg = r0 * r0 - 2.0 * c * t;
  return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

double barrier_radius(double r0, double growth_rate, double t) {
  return r0 * std::exp(growth_rate * t);
}

}  // namespace nlcf
