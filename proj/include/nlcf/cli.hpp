#pragma once

#include <string>
#include <vector>

#include "nlcf/geom.hpp"

namespace nlcf {

// Resolved run configuration: one flat bag of settings shared by every
// subcommand (each consumes the fields it understands). Defaults here are
// the documented defaults; a config file may override them and command-line
// flags override the file.
struct RunConfig {
  std::string subcommand;

  // Shared plumbing.
  std::string out_dir;   // artifact directory (manifest.json + files)
  std::string out_csv;   // single-file CSV target of `sweep --out`
  int workers = 0;       // 0: NLCF_WORKERS env or hardware count
  unsigned seed = 12345; // randomized property checks
  bool dry_run = false;  // validate, print the resolved plan, skip work

  // Curvature kind.
  std::string kind = "frac";  // classical|frac|frac-renorm|zero|riesz|
                              // riesz-renorm|minkowski|constant
  double s = 0.5;        // fractional/Riesz exponent
  double r = 0.1;        // Minkowski mollification radius
  double constant = 0.0; // value of the constant kind

  // Target set and evaluation point.
  std::string set = "disk:1";  // disk:R | segment:L | ellipse:A,B |
                               // polar:a0;a1,b1;... | gridfile:PATH,LEVEL
                               // (suffix !c complements)
  double theta = 0.0;
  int n_theta = 512;
  double rho_max = 0.0;
  int cell_x = -1;  // grid sets: evaluation cell
  int cell_y = -1;
  double R_cut = 0.0;

  // Sweeps (curvature limits and flow limits).
  std::string mode;
  std::vector<double> params;
  std::string tier;      // param|ode|grid; default per mode family
  double t_star = 0.05;

  // Ball ODE.
  double rho0 = 1.0;
  double t_end = 0.0;
  double dt = 1e-4;
  double lambda_time = 1.0;

  // Grid flows.
  std::string profile = "cone:1";  // cone:R | circle:R | smooth:R,W
  double extent = 2.0;
  double h = 0.02;
  double far_constant = 0.5;
  double cfl_factor = 0.4;
  double snapshot_interval = 0.0;
  double front_level = 0.0;
};

// Parse a `key = value` config file (one pair per line, `#` comments, blank
// lines ignored) onto default settings. Unknown keys, duplicate keys, and
// malformed values raise ConfigParse with the offending line number.
RunConfig load_config(const std::string& path);

// One output artifact: either a text payload or a grid binary.
struct ResultRecord {
  std::string name;  // file name inside the output directory
  std::string text;
  const GridField* grid = nullptr;
};

// Write every record into out_dir plus a manifest.json listing each artifact
// with its size and SHA-256, the hash of the resolved configuration, and the
// tool version. Returns the manifest path. Byte-stable: identical records
// and configuration produce identical bytes (no timestamps, no environment).
std::string write_results(const std::vector<ResultRecord>& records,
                          const std::string& out_dir,
                          const std::string& resolved_config_json);

// SHA-256 digest as lowercase hex.
std::string sha256_hex(const std::string& data);

// Shortest round-trip decimal rendering of a double (CSV cells).
std::string render_double(double v);

// Parse the set DSL used by --set (see RunConfig::set).
SetHandle parse_set_spec(const std::string& spec);

// Entry point behind main(): dispatches subcommands, maps NlcfError to a
// single-line JSON on stderr, and returns the exit code (0 success,
// 2 validation error, 3 numerical/runtime error).
int run_cli(int argc, const char* const* argv);

}  // namespace nlcf
