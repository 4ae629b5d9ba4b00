#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

#include "nlcf/flow.hpp"
#include "nlcf/threads.hpp"

namespace nlcf {

void FlowConfig::validate(const GridField& field) const {
  if (kind.tag == KindTag::Classical ||
      kind.tag == KindTag::MinkowskiRegularized)
    fail(Errc::UnsupportedOnGrid,
         kind.name() + " curvature has no grid realization");
  if (field.n1 > 512 || field.n2 > 512)
    fail(Errc::GridTooLarge, "flow grids are limited to 512 cells per side");
  if (field.n1 < 8 || field.n2 < 8)
    fail(Errc::ConfigParse, "flow grids need at least 8 cells per side");
  if (!(R_cut >= 10.0 * field.h))
    fail(Errc::ConfigParse,
         "cutoff radius must span at least ten cells for flows");
  if (!(cfl > 0.0) || cfl > 1.0)
    fail(Errc::ConfigParse, "cfl must lie in (0, 1]");
  if (!(t_end > 0.0)) fail(Errc::ConfigParse, "t_end must be positive");
  if (snapshot_interval < 0.0)
    fail(Errc::ConfigParse, "snapshot interval must be nonnegative");
  if (lambda_time == 0.0)
    fail(Errc::ConfigParse, "lambda_time must be nonzero");
}

double upwind_gradient_norm(const GridField& field, int ix, int iy,
                            int speed_sign) {
  const double u = field.at(ix, iy);
  const double h = field.h;
  const double dmx = (u - field.at(ix - 1, iy)) / h;
  const double dpx = (field.at(ix + 1, iy) - u) / h;
  const double dmy = (u - field.at(ix, iy - 1)) / h;
  const double dpy = (field.at(ix, iy + 1) - u) / h;
  double a, b, c, d;
  if (speed_sign > 0) {
    a = std::max(dmx, 0.0);
    b = std::min(dpx, 0.0);
    c = std::max(dmy, 0.0);
    d = std::min(dpy, 0.0);
  } else {
    a = std::min(dmx, 0.0);
    b = std::max(dpx, 0.0);
    c = std::min(dmy, 0.0);
    d = std::max(dpy, 0.0);
  }
  return std::sqrt(a * a + b * b + c * c + d * d);
}

double flow_speeds(const GridEvalContext& ctx, const GridField& field,
                   const FlowConfig& cfg, std::vector<double>& speed) {
  const int n1 = field.n1;
  const long n = static_cast<long>(n1) * field.n2;
  speed.assign(n, 0.0);

  std::atomic<bool> has_error{false};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  parallel_for(n, [&](long idx) {
    if (has_error.load(std::memory_order_relaxed)) return;
    try {
      const int ix = static_cast<int>(idx % n1);
      const int iy = static_cast<int>(idx / n1);
      const double u = field.values[idx];
      // When all four one-sided differences vanish, both Godunov branches
      // give |∇u| = 0 and the update is exactly zero: skip the evaluation.
      if (field.at(ix - 1, iy) == u && field.at(ix + 1, iy) == u &&
          field.at(ix, iy - 1) == u && field.at(ix, iy + 1) == u)
        return;
      speed[idx] = cfg.lambda_time * ctx.evaluate(field, u, {ix, iy});
    } catch (...) {
      std::lock_guard<std::mutex> g(err_mutex);
      if (!first_error) first_error = std::current_exception();
      has_error.store(true, std::memory_order_relaxed);
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  double vmax = 0.0;
  for (long i = 0; i < n; ++i) vmax = std::max(vmax, std::fabs(speed[i]));
  if (vmax < 1e-12) return std::numeric_limits<double>::infinity();
  double dt = cfg.cfl * field.h / vmax;
  if (ctx.kind().is_fractional_family())
    dt = std::min(dt, cfg.cfl * std::pow(field.h, 1.0 + ctx.kind().param));
  return dt;
}

void flow_apply(GridField& field, const std::vector<double>& speed, double dt,
                std::vector<double>& next) {
  const int n1 = field.n1, n2 = field.n2;
  const long n = static_cast<long>(n1) * n2;
  next.resize(n);
  parallel_for(n, [&](long idx) {
    const int ix = static_cast<int>(idx % n1);
    const int iy = static_cast<int>(idx / n1);
    if (ix < 2 || iy < 2 || ix >= n1 - 2 || iy >= n2 - 2) {
      next[idx] = field.far_constant;
      return;
    }
    const double sp = speed[idx];
    if (sp == 0.0) {
      next[idx] = field.values[idx];
      return;
    }
    const double grad = upwind_gradient_norm(field, ix, iy, sp > 0 ? 1 : -1);
    next[idx] = field.values[idx] - dt * sp * grad;
  });
  field.values.swap(next);
}

double flow_step(GridEvalContext& ctx, GridField& field,
                 const FlowConfig& cfg, double dt_cap, FlowScratch& scratch,
                 bool* stalled) {
  ctx.refresh(field);
  const double dt_cfl = flow_speeds(ctx, field, cfg, scratch.speed);
  if (stalled) *stalled = false;
  if (std::isinf(dt_cfl)) {
    if (stalled) *stalled = true;
    return dt_cap;
  }
  const double dt = std::min(std::max(dt_cfl, 1e-8), dt_cap);
  flow_apply(field, scratch.speed, dt, scratch.next);
  return dt;
}

FlowResult flow_run(const FlowConfig& cfg, const GridField& initial) {
  cfg.validate(initial);
  FlowResult out;
  out.field = initial;
  GridEvalContext ctx(cfg.kind, out.field, cfg.R_cut);
  FlowScratch scratch;
  const double interval =
      cfg.snapshot_interval > 0.0 ? cfg.snapshot_interval : cfg.t_end;

  auto record = [&](double time) {
    if (out.trace.front_lost) return;
    try {
      Contour c = extract_front(out.field, cfg.front_level);
      out.trace.times.push_back(time);
      out.trace.mean_radius.push_back(c.mean_radius);
      out.trace.min_radius.push_back(c.min_radius);
      out.trace.max_radius.push_back(c.max_radius);
      out.trace.perimeter.push_back(c.perimeter);
    } catch (const NlcfError& e) {
      if (e.code() == Errc::FrontNotFound || e.code() == Errc::FrontOpen)
        out.trace.front_lost = true;
      else
        throw;
    }
  };

  record(0.0);
  double t = 0.0;
  int snap_index = 1;
  while (t < cfg.t_end - 1e-12) {
    const double snap_t = std::min(interval * snap_index, cfg.t_end);
    if (snap_t <= t + 1e-15) {
      ++snap_index;
      continue;
    }
    bool stalled = false;
    const double dt = flow_step(ctx, out.field, cfg, snap_t - t, scratch,
                                &stalled);
    ++out.steps;
    if (stalled) {
      // The speeds of an unchanged field stay below threshold forever:
      // fill in the remaining snapshots and stop.
      out.stalled = true;
      record(snap_t);
      ++snap_index;
      for (; interval * snap_index < cfg.t_end - 1e-12; ++snap_index)
        record(interval * snap_index);
      if (snap_t < cfg.t_end - 1e-12) record(cfg.t_end);
      t = cfg.t_end;
      break;
    }
    t += dt;
    if (t >= snap_t - 1e-12) {
      record(snap_t);
      ++snap_index;
    }
  }
  return out;
}

}  // namespace nlcf
