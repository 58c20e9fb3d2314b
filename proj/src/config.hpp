#pragma once

// Flat key=value run configuration (a TOML-compatible subset: one key per
// line, '#' comments, optional quotes on strings).  Unknown keys are
// rejected; numeric parameters are range-checked here.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "assembly.hpp"

namespace fcy {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // optional in the file; must match the CLI verb

  int n = 2;
  int N = 8;

  std::string base = "identity";  // identity | diag | potential
  std::vector<double> base_diag;
  std::string potential_expr = "cos_x1";
  double potential_scale = 0.0;

  std::string f_expr = "zero";
  double f_amplitude = 0.0;
  std::string f_file;

  std::string init_expr;  // optional seeded initial iterate
  double init_amplitude = 0.0;

  std::string ustar_expr = "cos_x1";  // manufacture command
  double ustar_amplitude = 0.05;

  std::string psi_expr = "cos_x1";  // equivalence command
  double psi_scale = 0.01;

  int path_steps = 1;
  double newton_tol = 1e-10;
  int max_newton = 30;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string records_dir;  // report command
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Built-in field catalog: zero, cos_x1, cos_y1, cos_x2, cos_y2,
// cos_x1_cos_y1, cos_x1_cos_y2, sin_x1_sin_y1, random_band.  The result has
// grid sup-norm equal to |amplitude| (zero field excepted).
RealField eval_expression(const std::string& id, double amplitude,
                          const GridSpec& grid, std::uint64_t seed);

bool known_expression(const std::string& id);

// Assembles the Problem (f not yet normalized; solvers normalize against
// the assembled base).  Reads f from a field file when f_expr = "file".
Problem build_problem(const RunConfig& cfg);

}  // namespace fcy
