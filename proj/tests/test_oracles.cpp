#include "doctest.h"

#include <cmath>
#include <functional>

#include "nlcf/errors.hpp"
#include "nlcf/kernelmath.hpp"
#include "nlcf/oracles.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

bool throws_code(nlcf::Errc expected, const std::function<void()>& f) {
  try {
    f();
  } catch (const nlcf::NlcfError& e) {
    return e.code() == expected;
  }
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("oracles");

TEST_CASE("segment endpoint formulas") {
  using nlcf::CurvatureKind;
  const double L = std::exp(1.0);
  CHECK(nlcf::segment_oracle_1d(CurvatureKind::fractional(0.5), L) ==
        doctest::Approx(2.0 * std::exp(-0.5) / 0.5).epsilon(1e-14));
  CHECK(nlcf::segment_oracle_1d(CurvatureKind::zero(), L) ==
        doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(nlcf::segment_oracle_1d(CurvatureKind::riesz(-0.5, 1), L) ==
        doctest::Approx(-4.0 * std::exp(0.5)).epsilon(1e-14));
  CHECK(nlcf::segment_oracle_1d(CurvatureKind::fractional_renormalized(0.5),
                                L) ==
        doctest::Approx(2.0 * (std::exp(-0.5) - 1.0) / 0.5).epsilon(1e-14));
  CHECK(nlcf::segment_oracle_1d(CurvatureKind::constant(-2.2), 0.5) == -2.2);
  CHECK(throws_code(nlcf::Errc::UnsupportedKind, [] {
    nlcf::segment_oracle_1d(nlcf::CurvatureKind::classical(), 1.0);
  }));
  CHECK(throws_code(nlcf::Errc::UnsupportedKind, [] {
    nlcf::segment_oracle_1d(nlcf::CurvatureKind::minkowski(0.1), 1.0);
  }));
  CHECK(throws_code(nlcf::Errc::ConfigParse, [] {
    nlcf::segment_oracle_1d(nlcf::CurvatureKind::zero(), 0.0);
  }));
}

TEST_CASE("unit disk closed form across the exponent range") {
  // (2^{1-s}/s)·√π·Γ((1-s)/2)/Γ(1-s/2), checked against frozen
  // high-precision values.
  CHECK(std::abs(nlcf::disk_kernel_curvature(0.5) - 14.832597418410975) <=
        1e-12 * 14.832597418410975);
  CHECK(std::abs(nlcf::disk_kernel_curvature(0.95) - 45.08256225910663) <=
        1e-12 * 45.08256225910663);
  CHECK(std::abs(nlcf::disk_kernel_curvature(0.05) - 125.79788493554858) <=
        1e-12 * 125.79788493554858);
  CHECK(std::abs(nlcf::disk_kernel_curvature(-0.5) + 13.555409356703665) <=
        1e-12 * 13.555409356703665);
  CHECK(std::abs(nlcf::disk_kernel_curvature(-0.05) + 125.78841896395936) <=
        1e-12 * 125.78841896395936);
  CHECK(std::abs(nlcf::disk_kernel_curvature(-1.5) + 6.5922655192937668) <=
        1e-12 * 6.5922655192937668);
  CHECK(nlcf::disk_kernel_curvature(0.0) == 0.0);
  CHECK(throws_code(nlcf::Errc::UnsupportedKind,
                    [] { nlcf::disk_kernel_curvature(1.0); }));
  CHECK(throws_code(nlcf::Errc::UnsupportedKind,
                    [] { nlcf::disk_kernel_curvature(-2.0); }));
}

TEST_CASE("ball speeds follow the exact scaling laws") {
  using nlcf::CurvatureKind;
  const double v_half = nlcf::disk_kernel_curvature(0.5);

  CHECK(nlcf::ball_speed(CurvatureKind::fractional(0.5), 4.0) ==
        doctest::Approx(0.5 * v_half).epsilon(1e-13));
  CHECK(nlcf::ball_speed(CurvatureKind::zero(), std::exp(1.0)) ==
        doctest::Approx(-2.0 * kPi).epsilon(1e-13));
  CHECK(nlcf::ball_speed(CurvatureKind::classical(), 2.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(nlcf::ball_speed(CurvatureKind::constant(-3.3), 17.0) == -3.3);

  const double vr = nlcf::disk_kernel_curvature(-0.5);
  CHECK(nlcf::ball_speed(CurvatureKind::riesz(-0.5), 4.0) ==
        doctest::Approx(2.0 * vr).epsilon(1e-13));

  // Renormalized scaling: ρ^{-s}(V₁ + dω_d/s) - dω_d/s.
  const double s = 0.4;
  const double raw = nlcf::disk_kernel_curvature(s);
  const double expect =
      std::pow(3.0, -s) * raw - 2.0 * kPi * (1.0 - std::pow(3.0, -s)) / s;
  CHECK(nlcf::ball_speed(CurvatureKind::fractional_renormalized(s), 3.0) ==
        doctest::Approx(expect).epsilon(1e-12));

  // One-dimensional balls are intervals of length 2ρ.
  CHECK(nlcf::ball_speed(CurvatureKind::fractional(0.5), 1.0, 1) ==
        doctest::Approx(2.0 * std::pow(2.0, -0.5) / 0.5).epsilon(1e-13));
  CHECK(nlcf::ball_speed(CurvatureKind::zero(), 1.0, 1) ==
        doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-13));

  CHECK(throws_code(nlcf::Errc::ConfigParse, [] {
    nlcf::ball_speed(CurvatureKind::classical(), -1.0);
  }));
}

TEST_CASE("minkowski ball speed keeps its finite mollification radius") {
  const nlcf::Mollifier moll;
  // Full tangency: r/ρ < 1, value = weight/ρ regardless of r.
  CHECK(std::abs(nlcf::ball_speed(nlcf::CurvatureKind::minkowski(0.4), 2.0) -
                 moll.weight_gl64() / 2.0) <= 1e-12);
  CHECK(std::abs(nlcf::ball_speed(nlcf::CurvatureKind::minkowski(0.05), 2.0) -
                 moll.weight_gl64() / 2.0) <= 1e-12);
  // Partial overlap: r/ρ = 1.5 engages the clipped inward content.
  CHECK(std::abs(nlcf::ball_speed(nlcf::CurvatureKind::minkowski(3.0), 2.0) -
                 0.21284878301510922 / 2.0) <= 1e-9);
}

TEST_CASE("ball evolution matches closed-form flows") {
  using nlcf::CurvatureKind;

  // Constant speed: linear radius decay, integrated exactly by the stepper.
  {
    const nlcf::BallOde ode = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::constant(2.0 * kPi)), 1.0, 0.1, 1e-4);
    CHECK(!ode.extinct);
    CHECK(!ode.blew_up);
    CHECK(ode.times.back() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(ode.radii.back() ==
          doctest::Approx(1.0 - 2.0 * kPi * 0.1).epsilon(1e-12));
  }

  // Fractional shrinking: ρ(t) = (1 - (1+s)·V₁·t)^{1/(1+s)}.
  {
    const double s = 0.5;
    const double v = nlcf::disk_kernel_curvature(s);
    const nlcf::BallOde ode = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::fractional(s)), 1.0, 0.02, 1e-4);
    const double exact = std::pow(1.0 - 1.5 * v * 0.02, 2.0 / 3.0);
    CHECK(std::abs(ode.radii.back() - exact) <= 1e-8 * exact);
  }

  // Classical shrinking reproduces the exact circle solution.
  {
    const nlcf::BallOde ode = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::classical()), 1.0, 0.3, 1e-4);
    CHECK(std::abs(ode.radii.back() - nlcf::mcf_circle_exact(1.0, 1.0, 0.3)) <=
          1e-10);
  }

  // Riesz expansion: dρ/dt = |V₁|·ρ^{1/2} gives ρ = (1 + |V₁|t/2)².
  {
    const double v = nlcf::disk_kernel_curvature(-0.5);
    const nlcf::BallOde ode = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::riesz(-0.5)), 1.0, 0.1, 1e-4);
    const double exact = std::pow(1.0 - 0.5 * v * 0.1, 2.0);
    CHECK(std::abs(ode.radii.back() - exact) <= 1e-8 * exact);
    CHECK(ode.radii.back() > 1.0);
  }

  // Time rescaling multiplies the speed.
  {
    const nlcf::BallOde a = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::constant(1.0)), 1.0, 0.1, 1e-4, 3.0);
    CHECK(a.radii.back() == doctest::Approx(0.7).epsilon(1e-12));
  }

  // Extinction and blow-up sentinels.
  {
    const nlcf::BallOde gone = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::constant(2.0 * kPi)), 1.0, 0.2, 1e-4);
    CHECK(gone.extinct);
    CHECK(!gone.blew_up);
  }
  {
    const nlcf::BallOde burst = nlcf::ball_ode_evolve(
        nlcf::BallSpeed(CurvatureKind::riesz(-1.5)), 1.0, 0.4, 1e-4);
    CHECK(burst.blew_up);
    CHECK(!burst.extinct);
  }

  CHECK(throws_code(nlcf::Errc::ConfigParse, [] {
    nlcf::ball_ode_evolve(nlcf::BallSpeed(nlcf::CurvatureKind::classical()),
                          1.0, 0.0, 1e-4);
  }));
}

TEST_CASE("exact circle solution and the exponential barrier") {
  CHECK(std::abs(nlcf::mcf_circle_exact(1.0, 0.22199690808403972, 1.0) -
                 0.7456582219) <= 1e-9);
  CHECK(nlcf::mcf_circle_exact(2.0, 1.0, 0.0) == 2.0);
  CHECK(nlcf::mcf_circle_exact(1.0, 1.0, 0.5) == 0.0);
  CHECK(nlcf::barrier_radius(2.0, 0.7, 0.3) ==
        doctest::Approx(2.0 * std::exp(0.21)).epsilon(1e-14));
}

TEST_SUITE_END();
