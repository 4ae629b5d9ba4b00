#include "nlcf/kernelmath.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace nlcf {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double unit_ball_volume(int d) {
  if (d < 1) fail(Errc::DivergentPrimitive, "dimension must be positive");
  if (d == 1) return 2.0;
  if (d == 2) return kPi;
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double radial_primitive(double s, double a, double b) {
  if (!(a >= 0.0) || !(b > a))
    fail(Errc::DivergentPrimitive,
         "radial primitive needs 0 <= a < b, got a=" + fmt_double(a) +
             " b=" + fmt_double(b));
  if (a == 0.0) {
    if (s < 0.0) return -std::pow(b, -s) / s;
    fail(Errc::DivergentPrimitive,
         "radial primitive diverges at 0 for s=" + fmt_double(s));
  }
  if (s == 0.0) return std::log(b / a);
  if (std::fabs(s) < 1e-3) {
    // (a^{-s} - b^{-s})/s = a^{-s} (1 - (b/a)^{-s})/s, stable via expm1.
    return std::pow(a, -s) * (-std::expm1(-s * std::log(b / a))) / s;
  }
  return (std::pow(a, -s) - std::pow(b, -s)) / s;
}

double tail_integral(int d, double s, double R) {
  if (!(R > 0.0)) fail(Errc::DivergentTail, "tail radius must be positive");
  if (!(s > 0.0))
    fail(Errc::DivergentTail,
         "far-field tail diverges for s=" + fmt_double(s));
  return d * unit_ball_volume(d) * std::pow(R, -s) / s;
}

double cell_weight(double s, std::array<int, 2> z, double h) {
  if (z[0] == 0 && z[1] == 0)
    fail(Errc::CenterCell, "cell weight is undefined for the center cell");
  if (!(h > 0.0)) fail(Errc::DivergentPrimitive, "cell size must be positive");
  const double cx = h * z[0];
  const double cy = h * z[1];
  const double half = 0.5 * h;
  // 3-point Gauss nodes/weights on [-1, 1].
  const double r = std::sqrt(3.0 / 5.0);
  const double n3[3] = {-r, 0.0, r};
  const double w3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double p = -0.5 * (2.0 + s);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double x = cx + half * n3[i];
    for (int j = 0; j < 3; ++j) {
      const double y = cy + half * n3[j];
      acc += w3[i] * w3[j] * std::pow(x * x + y * y, p);
    }
  }
  double value = acc * half * half;
  if (!std::isfinite(value)) {
    value = h * h * std::pow(cx * cx + cy * cy, p);  // midpoint fallback
  }
  return value;
}

namespace {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        // One clean-up step keeps the roots symmetric to full precision.
        double q0 = 1.0, q1 = x;
        for (int k = 2; k <= n; ++k) {
          double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        dp = n * (x * q1 - q0) / (x * x - 1.0);
        x -= q1 / dp;
        break;
      }
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int n) {
  return gauss_rule(n).nodes;
}

const std::vector<double>& gauss_legendre_weights(int n) {
  return gauss_rule(n).weights;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

Mollifier::Mollifier(double width) : width_(width) {
  if (!(width > 0.0) || width > 1.0)
    fail(Errc::ConfigParse, "mollifier width must lie in (0, 1]");
  // c_f scales linearly in the width: ∫₀^w f(σ/w) dσ = w ∫₀¹ exp(-1/(1-u²)) du.
  static const double unit_cf = adaptive_simpson(
      [](double u) {
        double d = 1.0 - u * u;
        return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
      },
      0.0, 1.0, 1e-13);
  cf_ = width_ * unit_cf;
  const auto& nodes = gauss_legendre_nodes(64);
  const auto& weights = gauss_legendre_weights(64);
  KahanSum acc;
  for (int i = 0; i < 64; ++i) {
    nodes01_[i] = 0.5 * (nodes[i] + 1.0);
    weights01_[i] = 0.5 * weights[i];
    acc.add(weights01_[i] * (-nodes01_[i] * derivative(nodes01_[i])));
  }
  weight_gl64_ = acc.value();
}

double Mollifier::value(double sigma) const {
  double u = sigma / width_;
  double d = 1.0 - u * u;
  if (!(d > 0.0)) return 0.0;
  return std::exp(-1.0 / d);
}

double Mollifier::derivative(double sigma) const {
  double u = sigma / width_;
  double d = 1.0 - u * u;
  if (!(d > 0.0)) return 0.0;
  // d/dσ exp(-1/(1-u²)) = exp(·) · (-2u/(1-u²)²) / w.
  return std::exp(-1.0 / d) * (-2.0 * u / (d * d)) / width_;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CrossingOverflow: return "CrossingOverflow";
    case Errc::NonBoundaryPoint: return "NonBoundaryPoint";
    case Errc::GridTooLarge: return "GridTooLarge";
    case Errc::FrontNotFound: return "FrontNotFound";
    case Errc::FrontOpen: return "FrontOpen";
    case Errc::DivergentPrimitive: return "DivergentPrimitive";
    case Errc::DivergentTail: return "DivergentTail";
    case Errc::CenterCell: return "CenterCell";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::UnsupportedOnGrid: return "UnsupportedOnGrid";
    case Errc::CutoffTooSmall: return "CutoffTooSmall";
    case Errc::StalledFlow: return "StalledFlow";
    case Errc::NonMonotoneErrors: return "NonMonotoneErrors";
    case Errc::ConfigParse: return "ConfigParse";
    case Errc::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

bool errc_is_validation(Errc c) {
  switch (c) {
    case Errc::GridTooLarge:
    case Errc::UnsupportedKind:
    case Errc::UnsupportedOnGrid:
    case Errc::ConfigParse:
      return true;
    default:
      return false;
  }
}

}  // namespace nlcf
