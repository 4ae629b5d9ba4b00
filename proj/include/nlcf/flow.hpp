#pragma once

#include <vector>

#include "nlcf/curvature.hpp"
#include "nlcf/geom.hpp"

namespace nlcf {

// Level-set evolution u_t = -λ·H[u]·|∇u| on a grid: every cell moves with
// the curvature of its own level line ({u ≥ u_i} evaluated at cell i),
// forward Euler in time with Godunov upwinding in space.
struct FlowConfig {
  CurvatureKind kind;
  double R_cut = 0.0;             // grid-evaluator cutoff radius
  double cfl = 0.4;               // CFL safety factor in (0, 1]
  double lambda_time = 1.0;       // time rescaling multiplying the speed
  double t_end = 0.0;
  double snapshot_interval = 0.0;  // 0: record only t = 0 and t_end
  double front_level = 0.0;        // level line reported in the trace

  void validate(const GridField& field) const;
};

// Godunov upwind gradient magnitude at cell (ix, iy) for a front moving
// with speed of sign `speed_sign`:
//   speed > 0:  √( max(D⁻ˣ,0)² + min(D⁺ˣ,0)² + max(D⁻ʸ,0)² + min(D⁺ʸ,0)² )
//   speed < 0:  the mirrored choice.
double upwind_gradient_norm(const GridField& field, int ix, int iy,
                            int speed_sign);

// Pass 1 of a step: fills `speed` with λ·H at every cell (0 where all four
// one-sided differences vanish, since the update there is exactly zero under
// either Godunov branch) and returns the CFL-stable dt = cfl·h/max|speed|,
// additionally capped by cfl·h^{1+s} for the fractional family. Returns
// +infinity when every speed is below 1e-12 (a stalled front).
double flow_speeds(const GridEvalContext& ctx, const GridField& field,
                   const FlowConfig& cfg, std::vector<double>& speed);

// Pass 2: apply u ← u - dt·speed·|∇u|_godunov into `next` and swap it into
// the field; the outer two cell layers are re-pinned to the far constant.
void flow_apply(GridField& field, const std::vector<double>& speed, double dt,
                std::vector<double>& next);

// One full step: speeds, dt selection (clamped to [1e-8, dt_cap] when a
// finite CFL bound exists), update. Returns the dt actually taken; a stalled
// front takes dt_cap without moving and sets *stalled.
struct FlowScratch {
  std::vector<double> speed;
  std::vector<double> next;
};
double flow_step(GridEvalContext& ctx, GridField& field,
                 const FlowConfig& cfg, double dt_cap, FlowScratch& scratch,
                 bool* stalled);

// Front statistics per snapshot time.
struct FrontTrace {
  std::vector<double> times;
  std::vector<double> mean_radius;
  std::vector<double> min_radius;
  std::vector<double> max_radius;
  std::vector<double> perimeter;
  bool front_lost = false;  // the traced level line disappeared
};

struct FlowResult {
  GridField field;  // final state
  FrontTrace trace;
  int steps = 0;
  bool stalled = false;
};

// Run the flow from `initial` to t_end, recording the front trace at t = 0,
// every snapshot_interval, and t_end. The evaluation context is built once
// and refreshed per step (the mismatch ladders follow the evolving field).
FlowResult flow_run(const FlowConfig& cfg, const GridField& initial);

}  // namespace nlcf
