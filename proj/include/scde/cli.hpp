#pragma once

#include <string>
#include <vector>

namespace scde {

// Fully resolved invocation of one CLI command. The command-line front end
// fills this from flags and an optional key=value config file; tests can
// fill it directly and call run_command.
struct RunConfig {
  std::string command;

  // System description. Negative / empty fields count as unset; the keys
  // present decide between the single-type, two-type and protograph chains.
  int dv = 0;
  int dc = 0;  // 0 = 2*dv wherever a check degree is needed
  int L = 0;
  std::vector<double> nu;
  double alpha_upper = -1.0;
  double alpha_lower = -1.0;
  int b1 = -1;
  int b2 = -1;

  // Numeric controls shared by every command.
  double tol = 1e-5;
  double delta_conv = 1e-10;
  int max_iters = 50000;
  int workers = 0;

  // Command-specific knobs.
  double epsilon = -1.0;
  int displacement = 10;
  int window_size = 0;
  int window_iters = 0;
  double grid_step = 0.0;  // 0 = command default
  double sweep_tol = 1e-4;
  bool no_refine = false;
  double alpha_min = 0.0;
  double alpha_max = 0.5;
  double alpha_step = 0.0;
  std::vector<double> eps_list;
  int dv_min = 0;
  int dv_max = 0;
  std::string table_id;
  double max_dev = 0.0;  // 0 = table default gate

  // Outputs. Grid commands write CSV (stdout unless out_csv is set) and an
  // optional JSON summary; scalar commands write JSON (stdout unless
  // out_json is set).
  std::string out_csv;
  std::string out_json;
  std::string profile_csv;
  int profile_every = 0;
};

// Returns the process exit status: 0 success, 1 finished but negative
// outcome (no wave, published-value deviation), 2 invalid configuration,
// 3 computation fault.
int run_command(const RunConfig& cfg);

// Parse argv and run; parse failures map to status 2.
int run_cli(int argc, const char* const* argv);

}  // namespace scde
