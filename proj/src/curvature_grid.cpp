#include <algorithm>
#include <cmath>

#include "nlcf/curvature.hpp"

namespace nlcf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtHalf = 0.7071067811865476;

// Support directions at 45° spacing, counterclockwise.
constexpr double kDirX[8] = {1.0, kSqrtHalf,  0.0, -kSqrtHalf,
                             -1.0, -kSqrtHalf, 0.0, kSqrtHalf};
constexpr double kDirY[8] = {0.0, kSqrtHalf,  1.0, kSqrtHalf,
                             0.0, -kSqrtHalf, -1.0, -kSqrtHalf};

}  // namespace

GridEvalContext::GridEvalContext(const CurvatureKind& kind,
                                 const GridField& field, double R_cut)
    : kind_(kind), R_cut_(R_cut) {
  if (kind.tag == KindTag::Classical ||
      kind.tag == KindTag::MinkowskiRegularized)
    fail(Errc::UnsupportedOnGrid,
         kind.name() + " curvature has no grid realization");
  if (kind.tag == KindTag::Constant) return;

  const double h = field.h;
  if (!(R_cut >= 2.0 * h))
    fail(Errc::ConfigParse, "cutoff radius must span at least two cells");

  const double s = kind.tag == KindTag::Zero ? 0.0 : kind.param;
  const double domega = 2.0 * kPi;  // d·ω_d in the plane
  if (kind.is_fractional_family())
    tail_ = tail_integral(2, s, R_cut);
  else if (kind.tag == KindTag::Zero)
    tail_ = -domega * std::log(R_cut);
  if (kind.tag == KindTag::FractionalRenormalized ||
      kind.tag == KindTag::RieszRenormalized)
    renorm_shift_ = domega / s;
  c0_ = field.far_constant;

  const double m = R_cut / h;
  r2max_cells_ = m * m + 1e-9;
  const int mi = static_cast<int>(std::floor(m + 1e-9));
  struct Off {
    int x, y, r2;
  };
  std::vector<Off> offs;
  offs.reserve(static_cast<size_t>(kPi * m * m / 2.0) + 8);
  for (int dx = 0; dx <= mi; ++dx) {
    const int lo = dx == 0 ? 1 : -mi;
    for (int dy = lo; dy <= mi; ++dy) {
      const int r2 = dx * dx + dy * dy;
      if (r2 > 0 && r2 <= r2max_cells_) offs.push_back({dx, dy, r2});
    }
  }
  std::sort(offs.begin(), offs.end(), [](const Off& a, const Off& b) {
    if (a.r2 != b.r2) return a.r2 < b.r2;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  off_x_.reserve(offs.size());
  off_y_.reserve(offs.size());
  weights_.reserve(offs.size());
  for (const Off& o : offs) {
    off_x_.push_back(o.x);
    off_y_.push_back(o.y);
    weights_.push_back(cell_weight(s, {o.x, o.y}, h));
  }
  build_ladders(field);
}

void GridEvalContext::refresh(const GridField& field) {
  if (kind_.tag == KindTag::Constant) return;
  c0_ = field.far_constant;
  build_ladders(field);
}

void GridEvalContext::build_ladders(const GridField& field) {
  const size_t n = field.values.size();
  std::vector<std::pair<double, std::array<int, 2>>> items;
  items.reserve(n);
  for (int iy = 0; iy < field.n2; ++iy)
    for (int ix = 0; ix < field.n1; ++ix)
      items.push_back({field.at(ix, iy), {ix, iy}});
  std::sort(items.begin(), items.end());

  auto fill = [](ValueLadder& ladder, auto begin, auto end) {
    ladder.values.clear();
    ladder.cells.clear();
    ladder.support.clear();
    std::array<double, 8> run;
    run.fill(-1e300);
    for (auto it = begin; it != end; ++it) {
      const double px = it->second[0], py = it->second[1];
      for (int k = 0; k < 8; ++k)
        run[k] = std::max(run[k], px * kDirX[k] + py * kDirY[k]);
      ladder.values.push_back(it->first);
      ladder.cells.push_back(it->second);
      ladder.support.push_back(run);
    }
  };
  fill(ascending_, items.begin(), items.end());
  fill(descending_, items.rbegin(), items.rend());
}

bool GridEvalContext::ladder_reaches_beyond(const ValueLadder& ladder,
                                            size_t count,
                                            std::array<int, 2> i) const {
  if (count == 0) return false;
  const std::array<double, 8>& c = ladder.support[count - 1];
  double s[8];
  for (int k = 0; k < 8; ++k)
    s[k] = c[k] - (i[0] * kDirX[k] + i[1] * kDirY[k]);
  // Distance bound: for any cell p of the prefix, the unit vector toward p
  // lies in some 45° sector [u_k, u_{k+1}], where |p - i| = (p-i)·e ≤
  // a(φ)s_k + b(φ)s_{k+1}, a single sinusoid in φ whose amplitude is
  // √(2(s_k² + s_j² - √2 s_k s_j)). If the largest sector amplitude stays
  // within the cutoff, no prefix cell lies beyond it.
  double best2 = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double sk = s[k], sj = s[(k + 1) & 7];
    const double amp2 =
        2.0 * (sk * sk + sj * sj - std::sqrt(2.0) * sk * sj);
    best2 = std::max(best2, amp2);
  }
  if (best2 <= r2max_cells_) return false;
  // The bound straddles the cutoff: decide exactly.
  for (size_t k = 0; k < count; ++k) {
    const double dx = ladder.cells[k][0] - i[0];
    const double dy = ladder.cells[k][1] - i[1];
    if (dx * dx + dy * dy > r2max_cells_) return true;
  }
  return false;
}

bool GridEvalContext::phase_mismatch_beyond_cutoff(std::array<int, 2> i,
                                                   double level) const {
  if (kind_.tag == KindTag::Constant) return false;
  const auto& av = ascending_.values;
  const auto& dv = descending_.values;
  const int gfar = (c0_ < level) ? 1 : (c0_ > level ? -1 : 0);
  if (gfar == 1) {
    // Far phase +1 (values below the level): any far cell at or above it
    // disagrees.
    const size_t count =
        std::upper_bound(dv.begin(), dv.end(), level, std::greater<double>()) -
        dv.begin();
    return ladder_reaches_beyond(descending_, count, i);
  }
  if (gfar == -1) {
    const size_t count = std::upper_bound(av.begin(), av.end(), level) -
                         av.begin();
    return ladder_reaches_beyond(ascending_, count, i);
  }
  // Far phase 0 (the far constant sits on the level): any far cell off the
  // level disagrees, on either side.
  const size_t below = std::lower_bound(av.begin(), av.end(), level) -
                       av.begin();
  const size_t above =
      std::lower_bound(dv.begin(), dv.end(), level, std::greater<double>()) -
      dv.begin();
  return ladder_reaches_beyond(ascending_, below, i) ||
         ladder_reaches_beyond(descending_, above, i);
}

double GridEvalContext::evaluate(const GridField& field, double level,
                                 std::array<int, 2> i) const {
  if (kind_.tag == KindTag::Constant) return kind_.param;
  const int ix = i[0], iy = i[1];
  if (ix < 0 || ix >= field.n1 || iy < 0 || iy >= field.n2)
    fail(Errc::ConfigParse, "cell index outside the grid");
  if (phase_mismatch_beyond_cutoff(i, level))
    fail(Errc::CutoffTooSmall,
         "a phase disagreeing with the far constant lies beyond the cutoff");
  const double c0 = field.far_constant;
  const int gfar = (c0 < level) - (c0 > level);
  const bool riesz = kind_.is_riesz_family();
  KahanSum acc;
  const size_t m = weights_.size();
  for (size_t k = 0; k < m; ++k) {
    const int dx = off_x_[k], dy = off_y_[k];
    const double up = field.at(ix + dx, iy + dy);
    const double um = field.at(ix - dx, iy - dy);
    int term = ((up < level) - (up > level)) + ((um < level) - (um > level));
    if (riesz) term -= 2 * gfar;
    if (term != 0) acc.add(weights_[k] * term);
  }
  if (gfar != 0) {
    acc.add(gfar * tail_);
    if (renorm_shift_ != 0.0) acc.add(-gfar * renorm_shift_);
  }
  return acc.value();
}

double curvature_grid(const CurvatureKind& kind, const GridField& field,
                      double level, std::array<int, 2> i, double R_cut) {
  GridEvalContext ctx(kind, field, R_cut);
  return ctx.evaluate(field, level, i);
}

double curvature_grid(const GridEvalContext& ctx, const GridField& field,
                      double level, std::array<int, 2> i) {
  return ctx.evaluate(field, level, i);
}

}  // namespace nlcf
