#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "droplet/diagnostics.hpp"
#include "droplet/geometry.hpp"
#include "droplet/params.hpp"
#include "droplet/stepper.hpp"

namespace droplet {

// One simulation run as described by a flat key = value config file.
// Required keys: v0_theta, theta_s_expr, h, dt, t_final. Optional: la, bo,
// alpha, slip_expr, output_dir, snapshot_every, seed, yl_threshold. Numeric
// values may be constant expressions ("3*pi/4"). '#' starts a comment.
struct RunConfig {
  Params params;
  double v0_theta = 0.0;  // initial cap contact angle
  double h = 0.0;
  double dt = 0.0;
  double t_final = 0.0;
  std::string output_dir = "out";
  int snapshot_every = 0;  // 0 disables field snapshots
  long seed = 0;
  double yl_threshold = 0.05;
  std::string source_text;  // verbatim file content, copied into the run dir
};

// Throws ConfigError with a "line N:" prefix for malformed or unknown keys.
RunConfig load_config(const std::string& path);

// Append-per-step energies table; every row is flushed so an aborted run
// still leaves a usable file.
class EnergyCsv {
 public:
  explicit EnergyCsv(const std::string& path);
  ~EnergyCsv();
  EnergyCsv(const EnergyCsv&) = delete;
  EnergyCsv& operator=(const EnergyCsv&) = delete;
  void append(const EnergyReport& r);

 private:
  std::FILE* f_ = nullptr;
};

void write_summary_json(const std::string& path, const RunSummary& summary, long seed);
void write_profile_csv(const std::string& path, const std::vector<Vec2>& samples);
void write_text_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

}  // namespace droplet
