#include "nlcf/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>

namespace nlcf {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kDenseSamples = 4096;
constexpr int kDiameterSamples = 512;
constexpr int kMaxCrossings = 64;
}  // namespace

Segment1D::Segment1D(double L) : length(L) {
  if (!(L > 0.0)) fail(Errc::ConfigParse, "segment length must be positive");
}

PolarSet2D::PolarSet2D(Vec2 center, double a0, const std::vector<double>& ak,
                       const std::vector<double>& bk)
    : center_(center), degree_(static_cast<int>(std::max(ak.size(), bk.size()))) {
  if (degree_ > kMaxDegree)
    fail(Errc::ConfigParse, "polar set degree exceeds the supported maximum 8");
  ak_[0] = a0;
  for (size_t k = 0; k < ak.size(); ++k) ak_[k + 1] = ak[k];
  for (size_t k = 0; k < bk.size(); ++k) bk_[k + 1] = bk[k];

  r_min_ = 1e300;
  r_max_ = 0.0;
  boundary_samples_.resize(kDenseSamples);
  sample_thetas_.resize(kDenseSamples);
  for (int i = 0; i < kDenseSamples; ++i) {
    double th = 2.0 * kPi * i / kDenseSamples;
    double r = radius(th);
    r_min_ = std::min(r_min_, r);
    r_max_ = std::max(r_max_, r);
    sample_thetas_[i] = th;
    boundary_samples_[i] = {center_.x + r * std::cos(th),
                            center_.y + r * std::sin(th)};
  }
  if (!(r_min_ > 0.0))
    fail(Errc::ConfigParse, "polar radius must stay strictly positive");
  double d2 = 0.0;
  const int stride = kDenseSamples / kDiameterSamples;
  for (int i = 0; i < kDenseSamples; i += stride) {
    for (int j = i + stride; j < kDenseSamples; j += stride) {
      Vec2 d = boundary_samples_[i] - boundary_samples_[j];
      d2 = std::max(d2, d.dot(d));
    }
  }
  diameter_ = std::sqrt(d2);
}

PolarSet2D PolarSet2D::disk(Vec2 center, double radius) {
  return PolarSet2D(center, radius, {}, {});
}

PolarSet2D PolarSet2D::ellipse(double a, double b, int degree) {
  if (!(a > 0.0) || !(b > 0.0))
    fail(Errc::ConfigParse, "ellipse semi-axes must be positive");
  if (degree < 0 || degree > kMaxDegree)
    fail(Errc::ConfigParse, "ellipse degree must lie in [0, 8]");
  // Project r(θ) = ab / sqrt(a² sin²θ + b² cos²θ) onto the cosine series by
  // the periodic trapezoid rule (spectrally accurate).
  const int N = 8192;
  std::vector<double> ak(degree, 0.0);
  double a0 = 0.0;
  for (int j = 0; j < N; ++j) {
    double th = 2.0 * kPi * j / N;
    double s = std::sin(th), c = std::cos(th);
    double r = a * b / std::sqrt(a * a * s * s + b * b * c * c);
    a0 += r;
    for (int k = 1; k <= degree; ++k) ak[k - 1] += r * std::cos(k * th);
  }
  a0 /= N;
  for (int k = 0; k < degree; ++k) {
    ak[k] *= 2.0 / N;
    if (std::fabs(ak[k]) < 1e-12) ak[k] = 0.0;  // symmetry: odd modes vanish
  }
  return PolarSet2D({0.0, 0.0}, a0, ak, std::vector<double>(degree, 0.0));
}

double PolarSet2D::radius(double theta) const {
  double r = ak_[0];
  for (int k = 1; k <= degree_; ++k)
    r += ak_[k] * std::cos(k * theta) + bk_[k] * std::sin(k * theta);
  return r;
}

double PolarSet2D::radius_d1(double theta) const {
  double r = 0.0;
  for (int k = 1; k <= degree_; ++k)
    r += k * (-ak_[k] * std::sin(k * theta) + bk_[k] * std::cos(k * theta));
  return r;
}

double PolarSet2D::radius_d2(double theta) const {
  double r = 0.0;
  for (int k = 1; k <= degree_; ++k)
    r += -k * k * (ak_[k] * std::cos(k * theta) + bk_[k] * std::sin(k * theta));
  return r;
}

bool PolarSet2D::contains(Vec2 p) const {
  Vec2 v = p - center_;
  double rho2 = v.dot(v);
  if (rho2 == 0.0) return true;
  double r = radius(std::atan2(v.y, v.x));
  return rho2 <= r * r;
}

double PolarSet2D::farthest_boundary_distance(Vec2 x) const {
  double best = 0.0;
  for (const Vec2& p : boundary_samples_) {
    Vec2 d = p - x;
    best = std::max(best, d.dot(d));
  }
  return std::sqrt(best);
}

double PolarSet2D::boundary_distance(Vec2 p) const {
  int best = 0;
  double bd = 1e300;
  for (int i = 0; i < kDenseSamples; ++i) {
    Vec2 d = boundary_samples_[i] - p;
    double q = d.dot(d);
    if (q < bd) {
      bd = q;
      best = i;
    }
  }
  // Golden-section refinement of |p - γ(θ)|² over the bracketing window.
  auto dist2 = [&](double th) {
    double r = radius(th);
    Vec2 q{center_.x + r * std::cos(th) - p.x,
           center_.y + r * std::sin(th) - p.y};
    return q.dot(q);
  };
  const double step = 2.0 * kPi / kDenseSamples;
  double lo = sample_thetas_[best] - step;
  double hi = sample_thetas_[best] + step;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dist2(x1), f2 = dist2(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dist2(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dist2(x2);
    }
  }
  return std::sqrt(std::min(f1, f2));
}

PolarSet2D PolarSet2D::scaled(double lambda) const {
  if (!(lambda > 0.0)) fail(Errc::ConfigParse, "scale factor must be positive");
  std::vector<double> ak(degree_), bk(degree_);
  for (int k = 1; k <= degree_; ++k) {
    ak[k - 1] = lambda * ak_[k];
    bk[k - 1] = lambda * bk_[k];
  }
  return PolarSet2D(center_ * lambda, lambda * ak_[0], ak, bk);
}

PolarSet2D PolarSet2D::translated(Vec2 v) const {
  std::vector<double> ak(degree_), bk(degree_);
  for (int k = 1; k <= degree_; ++k) {
    ak[k - 1] = ak_[k];
    bk[k - 1] = bk_[k];
  }
  return PolarSet2D(center_ + v, ak_[0], ak, bk);
}

bool SetHandle::contains(Vec2 p) const {
  bool inside;
  if (is_segment()) {
    const Segment1D& s = as_segment();
    inside = p.x >= -s.length && p.x <= 0.0;
  } else if (is_polar()) {
    inside = as_polar().contains(p);
  } else {
    const GridLevelSet& g = as_grid();
    int ix = static_cast<int>(std::floor((p.x - g.field.origin.x) / g.field.h));
    int iy = static_cast<int>(std::floor((p.y - g.field.origin.y) / g.field.h));
    inside = g.field.at(ix, iy) >= g.level;
  }
  return inside != complemented;
}

BoundaryPoint boundary_data(const PolarSet2D& set, double theta) {
  double r = set.radius(theta);
  double r1 = set.radius_d1(theta);
  double r2 = set.radius_d2(theta);
  double c = std::cos(theta), s = std::sin(theta);
  BoundaryPoint out;
  out.position = {set.center().x + r * c, set.center().y + r * s};
  Vec2 t{r1 * c - r * s, r1 * s + r * c};
  double tn = t.norm();
  out.tangent = {t.x / tn, t.y / tn};
  out.normal = {out.tangent.y, -out.tangent.x};
  double g = r * r + r1 * r1;
  out.curvature = (r * r + 2.0 * r1 * r1 - r * r2) / (g * std::sqrt(g));
  return out;
}

namespace {

double handle_diameter(const SetHandle& set) {
  if (set.is_segment()) return set.as_segment().length;
  if (set.is_polar()) return set.as_polar().diameter();
  const GridField& f = set.as_grid().field;
  return std::hypot(f.n1 * f.h, f.n2 * f.h);
}

}  // namespace

Crossings ray_crossings(const SetHandle& set, Vec2 x, Vec2 e, double rho_max,
                        const RayOptions& opts) {
  if (!(rho_max > 0.0))
    fail(Errc::DivergentPrimitive, "ray extent must be positive");
  const double diam = handle_diameter(set);
  const double step = opts.coarse_step > 0.0 ? opts.coarse_step : diam / 64.0;
  double floor_rho = opts.near_floor > 0.0 ? opts.near_floor : step / 1024.0;
  floor_rho = std::min(floor_rho, 0.25 * step);
  const double tol = 1e-12 * diam;

  auto member = [&](double rho) { return set.contains({x.x + rho * e.x, x.y + rho * e.y}); };

  Crossings out;
  double prev = floor_rho;
  bool prev_m = member(prev);
  out.first_inside = prev_m;
  auto advance = [&](double cur) {
    bool cur_m = member(cur);
    if (cur_m != prev_m) {
      double lo = prev, hi = cur;
      bool lo_m = prev_m;
      while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (member(mid) == lo_m)
          lo = mid;
        else
          hi = mid;
      }
      out.radii.push_back(0.5 * (lo + hi));
      if (out.radii.size() > kMaxCrossings)
        fail(Errc::CrossingOverflow,
             "more than 64 boundary crossings along one ray");
    }
    prev = cur;
    prev_m = cur_m;
  };

  // Geometric refinement zone near the origin (resolves grazing rays), then
  // a uniform march out to rho_max.
  for (double rho = prev * 1.6; rho < step; rho *= 1.6) advance(rho);
  for (double rho = step; rho < rho_max; rho += step) advance(rho);
  advance(rho_max);
  return out;
}

GridField grid_sample(double A, double h, const ProfileSpec& profile) {
  if (!(A > 0.0) || !(h > 0.0))
    fail(Errc::GridTooLarge, "grid extent and spacing must be positive");
  if (A / h > 1024.0)
    fail(Errc::GridTooLarge, "grid resolution exceeds the supported 2048^2");
  const long n = std::lround(2.0 * A / h);
  if (n < 8) fail(Errc::GridTooLarge, "grid must have at least 8 cells per side");

  GridField f;
  f.origin = {-A, -A};
  f.h = h;
  f.n1 = f.n2 = static_cast<int>(n);
  const double C0 = profile.far_constant;
  f.far_constant = profile.scale * C0;
  f.values.resize(static_cast<size_t>(n) * n);

  const double w =
      profile.smoothing > 0.0 ? profile.smoothing : 4.0 * h;
  for (int iy = 0; iy < f.n2; ++iy) {
    // The shift enters the coordinate expression itself so that a shifted
    // profile is a bitwise translate of the unshifted one.
    const double y = -A + (static_cast<double>(iy) + 0.5 - profile.shift[1]) * h;
    for (int ix = 0; ix < f.n1; ++ix) {
      const double x =
          -A + (static_cast<double>(ix) + 0.5 - profile.shift[0]) * h;
      const double rho = std::hypot(x, y);
      double u;
      switch (profile.kind) {
        case ProfileSpec::Kind::Cone:
          u = std::min(rho - profile.radius, C0);
          break;
        case ProfileSpec::Kind::Circle:
          u = std::clamp(rho - profile.radius, -C0, C0);
          break;
        case ProfileSpec::Kind::SmoothedDisk:
          u = C0 * std::tanh((rho - profile.radius) / w);
          break;
        default:
          u = C0;
      }
      f.cell(ix, iy) = profile.scale * u;
    }
  }
  // Far-field invariant: outermost two layers hold exactly C₀.
  for (int iy = 0; iy < f.n2; ++iy)
    for (int ix = 0; ix < f.n1; ++ix)
      if (ix < 2 || iy < 2 || ix >= f.n1 - 2 || iy >= f.n2 - 2)
        f.cell(ix, iy) = f.far_constant;
  return f;
}

namespace {

// Marching squares: edge of the dual grid whose corners are cell centers.
struct EdgeKey {
  int kind;  // 0: horizontal (between (i,j) and (i+1,j)), 1: vertical
  int i, j;
  bool operator<(const EdgeKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (j != o.j) return j < o.j;
    return i < o.i;
  }
};

struct MsSegment {
  EdgeKey a, b;
  bool used = false;
};

}  // namespace

Contour extract_front(const GridField& field, double level, Vec2 center_ref) {
  const int n1 = field.n1, n2 = field.n2;
  auto above = [&](int ix, int iy) { return field.at(ix, iy) > level; };

  std::vector<MsSegment> segments;
  std::map<EdgeKey, std::vector<int>> by_edge;
  auto add_segment = [&](EdgeKey a, EdgeKey b) {
    int idx = static_cast<int>(segments.size());
    segments.push_back({a, b, false});
    by_edge[a].push_back(idx);
    by_edge[b].push_back(idx);
  };

  for (int j = 0; j + 1 < n2; ++j) {
    for (int i = 0; i + 1 < n1; ++i) {
      int code = (above(i, j) ? 1 : 0) | (above(i + 1, j) ? 2 : 0) |
                 (above(i + 1, j + 1) ? 4 : 0) | (above(i, j + 1) ? 8 : 0);
      if (code == 0 || code == 15) continue;
      EdgeKey bottom{0, i, j}, top{0, i, j + 1}, left{1, i, j},
          right{1, i + 1, j};
      switch (code) {
        case 1: add_segment(left, bottom); break;
        case 2: add_segment(bottom, right); break;
        case 3: add_segment(left, right); break;
        case 4: add_segment(right, top); break;
        case 6: add_segment(bottom, top); break;
        case 7: add_segment(left, top); break;
        case 8: add_segment(top, left); break;
        case 9: add_segment(bottom, top); break;
        case 11: add_segment(right, top); break;
        case 12: add_segment(left, right); break;
        case 13: add_segment(bottom, right); break;
        case 14: add_segment(left, bottom); break;
        case 5: {  // saddle: resolve by the center average
          double c = 0.25 * (field.at(i, j) + field.at(i + 1, j) +
                             field.at(i + 1, j + 1) + field.at(i, j + 1));
          if (c > level) {
            add_segment(bottom, right);
            add_segment(top, left);
          } else {
            add_segment(left, bottom);
            add_segment(right, top);
          }
          break;
        }
        case 10: {
          double c = 0.25 * (field.at(i, j) + field.at(i + 1, j) +
                             field.at(i + 1, j + 1) + field.at(i, j + 1));
          if (c > level) {
            add_segment(left, bottom);
            add_segment(right, top);
          } else {
            add_segment(bottom, right);
            add_segment(top, left);
          }
          break;
        }
        default: break;
      }
    }
  }

  if (segments.empty())
    fail(Errc::FrontNotFound, "no level crossing found in the field");

  auto edge_point = [&](const EdgeKey& e) -> Vec2 {
    double ua = field.at(e.i, e.j);
    double ub = e.kind == 0 ? field.at(e.i + 1, e.j) : field.at(e.i, e.j + 1);
    double t = (level - ua) / (ub - ua);
    Vec2 p = field.cell_center(e.i, e.j);
    if (e.kind == 0)
      p.x += t * field.h;
    else
      p.y += t * field.h;
    return p;
  };

  // Stitch segments into loops; keep the longest closed one.
  std::vector<Vec2> best;
  bool found_closed = false;
  bool found_open = false;
  for (size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (segments[s0].used) continue;
    std::vector<Vec2> loop;
    int cur = static_cast<int>(s0);
    EdgeKey entry = segments[s0].a;
    bool closed = false;
    while (true) {
      segments[cur].used = true;
      loop.push_back(edge_point(entry));
      // Exit through the segment endpoint we did not enter by.
      const bool entry_is_a =
          !(segments[cur].a < entry) && !(entry < segments[cur].a);
      EdgeKey exit = entry_is_a ? segments[cur].b : segments[cur].a;
      const auto& cand = by_edge[exit];
      int next = -1;
      for (int idx : cand)
        if (!segments[idx].used) next = idx;
      if (next < 0) {
        // Either the loop closed onto its starting edge or the path is open.
        closed = !(exit < segments[s0].a) && !(segments[s0].a < exit);
        break;
      }
      cur = next;
      entry = exit;
    }
    if (closed && loop.size() >= 3) {
      found_closed = true;
      if (loop.size() > best.size()) best = std::move(loop);
    } else {
      found_open = true;
    }
  }
  if (!found_closed) {
    if (found_open)
      fail(Errc::FrontOpen, "level line does not close inside the grid");
    fail(Errc::FrontNotFound, "no closed level line found");
  }

  Contour c;
  c.points = std::move(best);
  double sum = 0.0, mn = 1e300, mx = 0.0, per = 0.0;
  for (size_t k = 0; k < c.points.size(); ++k) {
    double r = (c.points[k] - center_ref).norm();
    sum += r;
    mn = std::min(mn, r);
    mx = std::max(mx, r);
    per += (c.points[(k + 1) % c.points.size()] - c.points[k]).norm();
  }
  c.mean_radius = sum / c.points.size();
  c.min_radius = mn;
  c.max_radius = mx;
  c.perimeter = per;
  return c;
}

void write_grid_file(const GridField& field, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) fail(Errc::IoFailure, "cannot open for writing: " + path);
  bool ok = std::fwrite("NLCF", 1, 4, fp) == 4;
  uint32_t dims[2] = {static_cast<uint32_t>(field.n1),
                      static_cast<uint32_t>(field.n2)};
  ok = ok && std::fwrite(dims, sizeof(uint32_t), 2, fp) == 2;
  double header[4] = {field.h, field.origin.x, field.origin.y,
                      field.far_constant};
  ok = ok && std::fwrite(header, sizeof(double), 4, fp) == 4;
  ok = ok && std::fwrite(field.values.data(), sizeof(double),
                         field.values.size(), fp) == field.values.size();
  ok = (std::fclose(fp) == 0) && ok;
  if (!ok) fail(Errc::IoFailure, "short write: " + path);
}

GridField read_grid_file(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) fail(Errc::IoFailure, "cannot open for reading: " + path);
  char magic[4];
  GridField f;
  uint32_t dims[2];
  double header[4];
  bool ok = std::fread(magic, 1, 4, fp) == 4 &&
            std::memcmp(magic, "NLCF", 4) == 0 &&
            std::fread(dims, sizeof(uint32_t), 2, fp) == 2 &&
            std::fread(header, sizeof(double), 4, fp) == 4;
  if (ok) {
    if (dims[0] < 2 || dims[1] < 2 || dims[0] > 2048 || dims[1] > 2048) {
      std::fclose(fp);
      fail(Errc::IoFailure, "grid file has unsupported dimensions: " + path);
    }
    f.n1 = static_cast<int>(dims[0]);
    f.n2 = static_cast<int>(dims[1]);
    f.h = header[0];
    f.origin = {header[1], header[2]};
    f.far_constant = header[3];
    f.values.resize(static_cast<size_t>(f.n1) * f.n2);
    ok = std::fread(f.values.data(), sizeof(double), f.values.size(), fp) ==
         f.values.size();
  }
  std::fclose(fp);
  if (!ok) fail(Errc::IoFailure, "not a valid grid file: " + path);
  return f;
}

}  // namespace nlcf
