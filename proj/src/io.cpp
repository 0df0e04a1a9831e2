#include "droplet/io.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "droplet/errors.hpp"
#include "droplet/expression.hpp"

namespace droplet {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) { throw ConfigError(msg, line); }

double constant_value(int line, const std::string& key, const std::string& text) {
  Expr e;
  try {
    e = Expr::parse(text);
  } catch (const InvalidParameterError& err) {
    fail(line, key + ": " + err.what());
  }
  if (!e.is_constant()) fail(line, key + " must be a constant, got '" + text + "'");
  return e(0.0);
}

long integer_value(int line, const std::string& key, const std::string& text) {
  const double val = constant_value(line, key, text);
  const long rounded = std::lround(val);
  if (std::abs(val - static_cast<double>(rounded)) > 1e-9)
    fail(line, key + " must be an integer, got '" + text + "'");
  return rounded;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream whole;
  whole << in.rdbuf();

  RunConfig cfg;
  cfg.source_text = whole.str();
  cfg.params.slip = Expr::parse("0");

  std::map<std::string, int> seen;
  std::istringstream lines(cfg.source_text);
  std::string raw;
  int lineno = 0;
  bool have_theta = false, have_v0 = false, have_h = false, have_dt = false, have_t = false;
  while (std::getline(lines, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (value.empty()) fail(lineno, "empty value for key '" + key + "'");
    if (!seen.emplace(key, lineno).second)
      fail(lineno, "duplicate key '" + key + "' (first set on line " +
                       std::to_string(seen[key]) + ")");

    if (key == "la") {
      cfg.params.la = constant_value(lineno, key, value);
    } else if (key == "bo") {
      cfg.params.bo = constant_value(lineno, key, value);
    } else if (key == "alpha") {
      cfg.params.alpha = constant_value(lineno, key, value);
    } else if (key == "theta_s_expr") {
      try {
        cfg.params.theta_s = Expr::parse(value);
      } catch (const InvalidParameterError& err) {
        fail(lineno, std::string("theta_s_expr: ") + err.what());
      }
      have_theta = true;
    } else if (key == "slip_expr") {
      try {
        cfg.params.slip = Expr::parse(value);
      } catch (const InvalidParameterError& err) {
        fail(lineno, std::string("slip_expr: ") + err.what());
      }
    } else if (key == "v0_theta") {
      cfg.v0_theta = constant_value(lineno, key, value);
      have_v0 = true;
    } else if (key == "h") {
      cfg.h = constant_value(lineno, key, value);
      have_h = true;
    } else if (key == "dt") {
      cfg.dt = constant_value(lineno, key, value);
      have_dt = true;
    } else if (key == "t_final") {
      cfg.t_final = constant_value(lineno, key, value);
      have_t = true;
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "snapshot_every") {
      cfg.snapshot_every = static_cast<int>(integer_value(lineno, key, value));
      if (cfg.snapshot_every < 0) fail(lineno, "snapshot_every must be nonnegative");
    } else if (key == "seed") {
      cfg.seed = integer_value(lineno, key, value);
    } else if (key == "yl_threshold") {
      cfg.yl_threshold = (value == "inf") ? std::numeric_limits<double>::infinity()
                                          : constant_value(lineno, key, value);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!have_theta) throw ConfigError("missing required key 'theta_s_expr'");
  if (!have_v0) throw ConfigError("missing required key 'v0_theta'");
  if (!have_h) throw ConfigError("missing required key 'h'");
  if (!have_dt) throw ConfigError("missing required key 'dt'");
  if (!have_t) throw ConfigError("missing required key 't_final'");
  if (!(cfg.v0_theta > 0.0 && cfg.v0_theta < kPi))
    throw ConfigError("v0_theta must lie in (0, pi)");
  if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.t_final >= 0.0)) throw ConfigError("t_final must be nonnegative");
  cfg.params.validate();
  return cfg;
}

EnergyCsv::EnergyCsv(const std::string& path) {
  f_ = std::fopen(path.c_str(), "w");
  if (!f_) throw ConfigError("cannot open '" + path + "' for writing");
  std::fprintf(f_, "# energies-csv v1\n");
  std::fprintf(f_,
               "t,E_k,E_fs,E_w,E_p,P_v,P_fr,balance,euler_diss,vol_rel_err,theta_left,"
               "theta_right,vcm_x,vcm_y,scl_vol,scl_surf,scl_cl,scl_grav,remeshed\n");
  std::fflush(f_);
}

EnergyCsv::~EnergyCsv() {
  if (f_) std::fclose(f_);
}

void EnergyCsv::append(const EnergyReport& r) {
  std::fprintf(f_,
               "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
               "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
               r.t, r.e_k, r.e_fs, r.e_w, r.e_p, r.p_v, r.p_fr, r.balance, r.euler_diss,
               r.vol_rel_err, r.theta_left, r.theta_right, r.v_cm.x(), r.v_cm.y(), r.scl_vol,
               r.scl_surf, r.scl_cl, r.scl_grav, r.remeshed ? 1 : 0);
  std::fflush(f_);
}

void write_summary_json(const std::string& path, const RunSummary& summary, long seed) {
  nlohmann::json j;
  j["t_final"] = summary.t_final;
  j["steps"] = summary.steps;
  j["steady"] = summary.steady;
  j["max_balance_positive"] = summary.max_balance_positive;
  j["max_vol_err"] = summary.max_vol_err;
  j["remesh_count"] = summary.remesh_count;
  j["dt_halvings"] = summary.dt_halvings;
  j["max_remesh_jump"] = summary.max_remesh_jump;
  j["aborted"] = summary.aborted;
  j["abort_reason"] = summary.abort_reason;
  j["seed"] = seed;
  write_text_file(path, j.dump(2) + "\n");
}

void write_profile_csv(const std::string& path, const std::vector<Vec2>& samples) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  std::fprintf(f, "x,y\n");
  for (const Vec2& p : samples) std::fprintf(f, "%.17g,%.17g\n", p.x(), p.y());
  std::fclose(f);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw ConfigError("cannot create directory '" + path + "': " + ec.message());
}

}  // namespace droplet
