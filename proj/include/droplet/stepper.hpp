#pragma once

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "droplet/ale.hpp"
#include "droplet/diagnostics.hpp"
#include "droplet/mesh.hpp"
#include "droplet/params.hpp"
#include "droplet/sparse.hpp"

namespace droplet {

// Complete simulation state at one time level. v lives in the mini space
// (vertex components then one bubble pair per triangle), p is vertexwise, w is
// the P1 mesh velocity, equal to v's trace at every boundary vertex.
struct State {
  Mesh2D mesh;
  Eigen::VectorXd v;
  Eigen::VectorXd p;
  Eigen::VectorXd w;
  double t = 0.0;
};

struct StepControls {
  double tol_newton = 1e-9;  // relative to the first residual, absolute floor 1e-12
  int max_newton = 15;
  double tol_geom = 1e-8;  // max vertex displacement between geometry iterates
  int max_geom = 30;
};

struct StepReport {
  int newton_iters = 0;
  int geometry_iters = 0;
  double newton_residual = 0.0;
  double geometry_delta = 0.0;
  double dt_used = 0.0;
  double max_principle_excess = 0.0;
};

// Zero-velocity spherical-cap state: contact angle theta0, target edge h.
State initial_cap_state(double theta0, double h);

// Residual of the fully discrete momentum + continuity equations at (v, p),
// geometry frozen at `geo` (the motion from the previous accepted state's mesh
// by the current mesh-velocity iterate). Layout: velocity rows then pressure
// rows; constrained rows are zeroed. Single source of truth for step().
Eigen::VectorXd step_residual(const State& state_n, const AleStep& geo,
                              const Eigen::VectorXd& v, const Eigen::VectorXd& p,
                              const Params& params);

// Newton matrix of step_residual in the same layout, without constraints.
SpMat step_jacobian(const State& state_n, const AleStep& geo, const Eigen::VectorXd& v,
                    const Eigen::VectorXd& p, const Params& params);

// One step of the scheme: fixed point on the domain shape, Newton on the
// fluid unknowns with the shape frozen. The returned state's mesh is moved
// with the final mesh velocity, so w equals v's trace at boundary vertices
// exactly. Throws StepFailureError when either loop fails to converge.
std::pair<State, StepReport> step(const State& state_n, const Params& params, double dt,
                                  const StepControls& controls = {});

struct RunControls {
  StepControls step;
  double h_target = 0.1;
  int quality_cadence = 5;   // steps between mesh-quality checks
  double q_edge = 3.0;       // longest/shortest edge trigger
  double q_aspect = 4.0;     // circumscribed/inscribed-scale trigger
  int max_dt_halvings = 3;   // retries per step on failure
};

// Everything a per-step observer needs; `energy.remeshed` marks the first
// step after a mesh adaptation.
struct StepRecord {
  const State& prev;
  const State& next;
  StepReport report;
  EnergyReport energy;
};
using StepHook = std::function<void(const StepRecord&)>;

struct RunSummary {
  double t_final = 0.0;
  int steps = 0;
  int remesh_count = 0;
  int dt_halvings = 0;
  double max_balance_positive = 0.0;
  double max_vol_err = 0.0;
  double max_remesh_jump = 0.0;  // relative volume jump across adaptations
  bool steady = false;           // rms velocity <= 1e-3 at the end
  bool aborted = false;          // step kept failing after all dt halvings
  std::string abort_reason;
  State last;                    // final state, or the last good one on abort
};

// Advances to t_final with constant dt (the last step is clipped to land on
// t_final). Every quality_cadence accepted steps the mesh is offered to
// adapt_mesh; v0 for volume audits is the measured initial area. On step
// failure dt is halved for up to max_dt_halvings retries of that step, then
// restored. The hook runs after every accepted step; it may be empty.
RunSummary run(const State& initial, const Params& params, double dt, double t_final,
               const RunControls& controls = {}, const StepHook& hook = {});

}  // namespace droplet
