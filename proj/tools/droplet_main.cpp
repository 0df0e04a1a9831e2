// Batch driver. Exit codes: 0 success, 1 numerical failure, 2 config error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "droplet/ale.hpp"
#include "droplet/diagnostics.hpp"
#include "droplet/errors.hpp"
#include "droplet/forms.hpp"
#include "droplet/io.hpp"
#include "droplet/mesh.hpp"
#include "droplet/params.hpp"
#include "droplet/stepper.hpp"
#include "droplet/young_laplace.hpp"

namespace {

using namespace droplet;

std::string output_dir_for(const RunConfig& cfg) {
  if (const char* env = std::getenv("DROPLET_OUT")) return env;
  return cfg.output_dir;
}

std::string numbered(const std::string& dir, const std::string& stem, int index,
                     const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%06d.", index);
  return dir + "/" + stem + buf + ext;
}

// Shared run body: artifacts into `dir`, one summary line on stdout.
RunSummary drive(const RunConfig& cfg, const std::string& dir) {
  ensure_directory(dir);
  write_text_file(dir + "/config.cfg", cfg.source_text);

  const State initial = initial_cap_state(cfg.v0_theta, cfg.h);
  write_interface_csv(numbered(dir, "interface", 0, "csv"), initial.mesh);
  if (cfg.snapshot_every > 0)
    write_vtk(numbered(dir, "snapshot", 0, "vtk"), initial.mesh, &initial.v, &initial.p);

  EnergyCsv csv(dir + "/energies.csv");
  RunControls controls;
  controls.h_target = cfg.h;
  int accepted = 0;
  const StepHook hook = [&](const StepRecord& rec) {
    csv.append(rec.energy);
    ++accepted;
    if (cfg.snapshot_every > 0 && accepted % cfg.snapshot_every == 0) {
      write_interface_csv(numbered(dir, "interface", accepted, "csv"), rec.next.mesh);
      write_vtk(numbered(dir, "snapshot", accepted, "vtk"), rec.next.mesh, &rec.next.v,
                &rec.next.p);
    }
    if (accepted % 50 == 0)
      std::fprintf(stderr, "  t=%-8.4g E_k=%.3e vol_err=%.2e\n", rec.energy.t, rec.energy.e_k,
                   rec.energy.vol_rel_err);
  };

  const RunSummary summary = run(initial, cfg.params, cfg.dt, cfg.t_final, controls, hook);
  write_interface_csv(dir + "/interface_final.csv", summary.last.mesh);
  if (cfg.snapshot_every > 0)
    write_vtk(dir + "/snapshot_final.vtk", summary.last.mesh, &summary.last.v, &summary.last.p);
  write_summary_json(dir + "/summary.json", summary, cfg.seed);

  std::printf("%s: t=%g steps=%d steady=%d max_vol_err=%.3e max_balance_pos=%.3e remeshes=%d%s\n",
              dir.c_str(), summary.t_final, summary.steps, summary.steady ? 1 : 0,
              summary.max_vol_err, summary.max_balance_positive, summary.remesh_count,
              summary.aborted ? " ABORTED" : "");
  if (summary.aborted) std::fprintf(stderr, "abort: %s\n", summary.abort_reason.c_str());
  return summary;
}

int cmd_run(const std::string& cfg_path) {
  const RunConfig cfg = load_config(cfg_path);
  const RunSummary summary = drive(cfg, output_dir_for(cfg));
  return summary.aborted ? 1 : 0;
}

int cmd_validate_yl(const std::string& cfg_path) {
  const RunConfig cfg = load_config(cfg_path);
  if (!cfg.params.theta_s.is_constant())
    throw ConfigError("validate-yl needs a constant theta_s_expr");
  if (!(cfg.params.bo > 0.0)) throw ConfigError("validate-yl needs bo > 0");
  const double theta = cfg.params.theta_at(0.0);
  const std::string dir = output_dir_for(cfg);

  // The oracle volume is the measured initial area, not the nominal one, so
  // the comparison is against what the discrete run actually conserves.
  const double v0 = measures(initial_cap_state(cfg.v0_theta, cfg.h).mesh).area;
  const YLProfile oracle = young_laplace(cfg.params.bo, theta, v0);

  const RunSummary summary = drive(cfg, dir);
  if (summary.aborted) return 1;

  std::vector<Vec2> numeric;
  for (int vid : sigma_chain(summary.last.mesh)) numeric.push_back(summary.last.mesh.vertices[vid]);
  const std::vector<Vec2> aligned = align_contact_midpoint(numeric);
  const double dist = profile_distance(aligned, oracle.samples);

  write_profile_csv(dir + "/yl_oracle.csv", oracle.samples);
  write_profile_csv(dir + "/yl_numeric.csv", aligned);
  const bool pass = dist <= cfg.yl_threshold;
  std::printf("validate-yl: bo=%g theta_s=%g hausdorff=%.6g threshold=%g %s\n", cfg.params.bo,
              theta, dist, cfg.yl_threshold, pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

// Wall-preserving random affine motion w(x) = G x + b (zero y-velocity on the
// wall, so contact lines slide and Sigma stretches).
Eigen::VectorXd affine_motion(const Mesh2D& mesh, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::Matrix2d g;
  g << 0.35 * unif(rng), 0.35 * unif(rng), 0.0, 0.35 * unif(rng);
  const Vec2 b(0.3 * unif(rng), 0.0);
  Eigen::VectorXd w(2 * mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    const Vec2 wi = g * mesh.vertices[i] + b;
    w[2 * i] = wi.x();
    w[2 * i + 1] = wi.y();
  }
  return w;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

int cmd_audit_scl(long seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Mesh2D base = build_initial_cap(2.0, 0.3);
  const int nv = base.num_vertices();
  const int nt = base.num_triangles();

  double worst_vol = 0.0, worst_kin = 0.0, worst_grav = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::VectorXd w = affine_motion(base, rng);
    const double dt = 0.05 + 0.05 * unif(rng);
    const AleStep step = make_ale_step(base, w, dt);

    Eigen::VectorXd psi(nv);
    for (int i = 0; i < nv; ++i) psi[i] = 0.5 + unif(rng);
    const double va = transported_integral_difference(step, psi);
    const double vb = scl_volume_integral(step, psi);
    worst_vol = std::max(worst_vol, std::abs(va - vb) / std::max({1.0, std::abs(va)}));

    Eigen::VectorXd v(2 * (nv + nt));
    for (int i = 0; i < v.size(); ++i) v[i] = 2.0 * unif(rng) - 1.0;
    const double ka = kinetic_energy(step.mesh_next, v) - kinetic_energy(step.mesh_prev, v);
    const double kb = scl_kinetic_integral(step, v);
    worst_kin = std::max(worst_kin, std::abs(ka - kb) / std::max({1.0, std::abs(ka)}));

    const double bo = 0.2 + 0.8 * unif(rng);
    const double alpha = 0.6 * unif(rng);
    const double ga =
        potential_energy(step.mesh_next, bo, alpha) - potential_energy(step.mesh_prev, bo, alpha);
    const double gb = scl_gravity_integral(step, bo, alpha);
    worst_grav = std::max(worst_grav, std::abs(ga - gb) / std::max({1.0, std::abs(ga)}));
  }

  // Trapezoid-in-time routes: Richardson halving on smooth motions. Local
  // defect is O(dt^3), so halving dt should divide it by ~8.
  const Expr theta_s = Expr::parse("2.2 + 0.3*sin(x)");
  std::vector<double> surf_orders, cl_orders;
  for (int k = 0; k < 5; ++k) {
    const Eigen::VectorXd w = affine_motion(base, rng);
    const double r1 = std::abs(scl_surface_residual(make_ale_step(base, w, 0.2), 1.0));
    const double r2 = std::abs(scl_surface_residual(make_ale_step(base, w, 0.1), 1.0));
    surf_orders.push_back(std::log2(r1 / r2));
    const double c1 = std::abs(scl_contact_residual(make_ale_step(base, w, 0.2), theta_s, 1.0, 1.0));
    const double c2 = std::abs(scl_contact_residual(make_ale_step(base, w, 0.1), theta_s, 1.0, 1.0));
    cl_orders.push_back(std::log2(c1 / c2));
  }
  const double surf_order = median(surf_orders);
  const double cl_order = median(cl_orders);

  std::printf("audit-scl seed=%ld motions=100\n", seed);
  std::printf("  volume   defect max %.3e  (rel, bound 1e-12)\n", worst_vol);
  std::printf("  kinetic  defect max %.3e  (rel, bound 1e-12)\n", worst_kin);
  std::printf("  gravity  defect max %.3e  (rel, bound 1e-12)\n", worst_grav);
  std::printf("  surface  CN order %.3f    (median of 5, bound [2.7, 3.3])\n", surf_order);
  std::printf("  contact  CN order %.3f    (median of 5, bound [2.7, 3.3])\n", cl_order);
  const bool pass = worst_vol <= 1e-12 && worst_kin <= 1e-12 && worst_grav <= 1e-12 &&
                    surf_order >= 2.7 && surf_order <= 3.3 && cl_order >= 2.7 && cl_order <= 3.3;
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int cmd_sweep(const std::string& cfg_path, const std::string& key, const std::string& values) {
  const RunConfig base = load_config(cfg_path);
  const std::string base_dir = output_dir_for(base);

  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos <= values.size()) {
    const std::size_t comma = values.find(',', pos);
    const std::size_t end = (comma == std::string::npos) ? values.size() : comma;
    if (end > pos) tokens.push_back(values.substr(pos, end - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (tokens.empty()) throw ConfigError("sweep: --values is empty");

  bool all_ok = true;
  for (const std::string& tok : tokens) {
    RunConfig cfg = base;
    double val = 0.0;
    try {
      val = Expr::parse(tok)(0.0);
    } catch (const InvalidParameterError& e) {
      throw ConfigError("sweep: bad value '" + tok + "': " + e.what());
    }
    if (key == "bo")
      cfg.params.bo = val;
    else if (key == "la")
      cfg.params.la = val;
    else if (key == "alpha")
      cfg.params.alpha = val;
    else if (key == "h")
      cfg.h = val;
    else if (key == "dt")
      cfg.dt = val;
    else if (key == "t_final")
      cfg.t_final = val;
    else if (key == "v0_theta")
      cfg.v0_theta = val;
    else
      throw ConfigError("sweep: unsupported key '" + key + "'");
    cfg.params.validate();
    const RunSummary summary = drive(cfg, base_dir + "/" + key + "_" + tok);
    all_ok = all_ok && !summary.aborted;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D ALE droplet simulator: moving contact lines on an inclined wall"};
  app.require_subcommand(1);

  std::string cfg_path, sweep_key, sweep_values;
  long seed = 0;

  CLI::App* c_run = app.add_subcommand("run", "advance a config to t_final, write artifacts");
  c_run->add_option("config", cfg_path, "key = value config file")->required();

  CLI::App* c_yl =
      app.add_subcommand("validate-yl", "run to t_final, compare interface with the "
                                        "closed-form equilibrium profile");
  c_yl->add_option("config", cfg_path, "key = value config file")->required();

  CLI::App* c_audit =
      app.add_subcommand("audit-scl", "randomized mesh-motion conservation audit");
  c_audit->add_option("--seed", seed, "RNG seed");

  CLI::App* c_sweep = app.add_subcommand("sweep", "repeat a run over a list of values");
  c_sweep->add_option("config", cfg_path, "key = value config file")->required();
  c_sweep->add_option("--key", sweep_key, "config key to vary")->required();
  c_sweep->add_option("--values", sweep_values, "comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_run->parsed()) return cmd_run(cfg_path);
    if (c_yl->parsed()) return cmd_validate_yl(cfg_path);
    if (c_audit->parsed()) return cmd_audit_scl(seed);
    if (c_sweep->parsed()) return cmd_sweep(cfg_path, sweep_key, sweep_values);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const InvalidParameterError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
