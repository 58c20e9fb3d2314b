#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "io.hpp"

namespace fcy {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(d)) throw std::exception();
    return d;
  } catch (...) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const std::int64_t i = std::stoll(value, &pos);
    if (pos != value.size()) throw std::exception();
    return i;
  } catch (...) {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const std::uint64_t i = std::stoull(value, &pos);
    if (pos != value.size()) throw std::exception();
    return i;
  } catch (...) {
    throw ConfigError("config: bad seed value for '" + key + "': " + value);
  }
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_double(key, trim(item)));
  }
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "command",        "n",
      "N",              "base",
      "base_diag",      "potential_expr",
      "potential_scale", "f_expr",
      "f_amplitude",    "f_file",
      "init_expr",      "init_amplitude",
      "ustar_expr",     "ustar_amplitude",
      "psi_expr",       "psi_scale",
      "path_steps",     "newton_tol",
      "max_newton",     "seed",
      "out",            "records_dir",
  };
  return keys;
}

void validate(const RunConfig& cfg) {
  try {
    GridSpec{cfg.n, cfg.N}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.base != "identity" && cfg.base != "diag" && cfg.base != "potential") {
    throw ConfigError("config: base must be identity, diag, or potential");
  }
  if (cfg.base == "diag") {
    if (static_cast<int>(cfg.base_diag.size()) != cfg.n) {
      throw ConfigError("config: base_diag needs exactly n entries");
    }
    for (double d : cfg.base_diag) {
      if (!(d > 0.0)) throw ConfigError("config: base_diag entries must be > 0");
    }
  }
  if (cfg.f_expr != "file" && !known_expression(cfg.f_expr)) {
    throw ConfigError("config: unknown f_expr '" + cfg.f_expr + "'");
  }
  if (cfg.f_expr == "file" && cfg.f_file.empty()) {
    throw ConfigError("config: f_expr = file requires f_file");
  }
  if (!cfg.init_expr.empty() && !known_expression(cfg.init_expr)) {
    throw ConfigError("config: unknown init_expr '" + cfg.init_expr + "'");
  }
  if (!known_expression(cfg.ustar_expr)) {
    throw ConfigError("config: unknown ustar_expr '" + cfg.ustar_expr + "'");
  }
  if (!known_expression(cfg.psi_expr)) {
    throw ConfigError("config: unknown psi_expr '" + cfg.psi_expr + "'");
  }
  if (!known_expression(cfg.potential_expr)) {
    throw ConfigError("config: unknown potential_expr '" + cfg.potential_expr +
                      "'");
  }
  if (cfg.path_steps < 1 || cfg.path_steps > 10000) {
    throw ConfigError("config: path_steps must be in 1..10000");
  }
  if (!(cfg.newton_tol > 0.0) || cfg.newton_tol > 1.0) {
    throw ConfigError("config: newton_tol must be in (0, 1]");
  }
  if (cfg.max_newton < 1 || cfg.max_newton > 1000) {
    throw ConfigError("config: max_newton must be in 1..1000");
  }
  for (double a : {cfg.f_amplitude, cfg.init_amplitude, cfg.ustar_amplitude,
                   cfg.psi_scale, cfg.potential_scale}) {
    if (!std::isfinite(a) || std::abs(a) > 100.0) {
      throw ConfigError("config: amplitude/scale out of range (|a| <= 100)");
    }
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config: line " << lineno << " is not key = value";
      throw ConfigError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (known_keys().count(key) == 0) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("config: empty value for '" + key + "'");
    }

    if (key == "command") cfg.command = value;
    else if (key == "n") cfg.n = static_cast<int>(parse_int(key, value));
    else if (key == "N") cfg.N = static_cast<int>(parse_int(key, value));
    else if (key == "base") cfg.base = value;
    else if (key == "base_diag") cfg.base_diag = parse_double_list(key, value);
    else if (key == "potential_expr") cfg.potential_expr = value;
    else if (key == "potential_scale") cfg.potential_scale = parse_double(key, value);
    else if (key == "f_expr") cfg.f_expr = value;
    else if (key == "f_amplitude") cfg.f_amplitude = parse_double(key, value);
    else if (key == "f_file") cfg.f_file = value;
    else if (key == "init_expr") cfg.init_expr = value;
    else if (key == "init_amplitude") cfg.init_amplitude = parse_double(key, value);
    else if (key == "ustar_expr") cfg.ustar_expr = value;
    else if (key == "ustar_amplitude") cfg.ustar_amplitude = parse_double(key, value);
    else if (key == "psi_expr") cfg.psi_expr = value;
    else if (key == "psi_scale") cfg.psi_scale = parse_double(key, value);
    else if (key == "path_steps") cfg.path_steps = static_cast<int>(parse_int(key, value));
    else if (key == "newton_tol") cfg.newton_tol = parse_double(key, value);
    else if (key == "max_newton") cfg.max_newton = static_cast<int>(parse_int(key, value));
    else if (key == "seed") cfg.seed = parse_uint(key, value);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "records_dir") cfg.records_dir = value;
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

bool known_expression(const std::string& id) {
  static const std::set<std::string> ids = {
      "zero",          "cos_x1",         "cos_y1",         "cos_x2",
      "cos_y2",        "cos_x1_cos_y1",  "cos_x1_cos_y2",  "sin_x1_sin_y1",
      "random_band",
  };
  return ids.count(id) > 0;
}

RealField eval_expression(const std::string& id, double amplitude,
                          const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  if (!known_expression(id)) {
    throw ConfigError("unknown field expression '" + id + "'");
  }
  if (id == "zero" || amplitude == 0.0) return RealField(grid);
  if (id == "random_band") {
    return random_bandlimited(grid, seed, 2, std::abs(amplitude));
  }

  // single cosine/sine products over specific axes
  struct AxisMode {
    int axis;
    bool sine;
  };
  std::vector<AxisMode> factors;
  if (id == "cos_x1") factors = {{0, false}};
  else if (id == "cos_y1") factors = {{1, false}};
  else if (id == "cos_x2") factors = {{2, false}};
  else if (id == "cos_y2") factors = {{3, false}};
  else if (id == "cos_x1_cos_y1") factors = {{0, false}, {1, false}};
  else if (id == "cos_x1_cos_y2") factors = {{0, false}, {3, false}};
  else if (id == "sin_x1_sin_y1") factors = {{0, true}, {1, true}};

  for (const AxisMode& f : factors) {
    if (f.axis >= grid.axes()) {
      throw ConfigError("expression '" + id + "' needs more axes than n = " +
                        std::to_string(grid.n) + " provides");
    }
  }

  RealField out(grid);
  const std::int64_t npts = grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    double val = amplitude;
    for (const AxisMode& f : factors) {
      const double x = axis_position(grid, p, f.axis);
      val *= f.sine ? std::sin(kTau * x) : std::cos(kTau * x);
    }
    out.v[static_cast<size_t>(p)] = val;
  }
  return out;
}

Problem build_problem(const RunConfig& cfg) {
  Problem prob;
  prob.grid = GridSpec{cfg.n, cfg.N};
  prob.grid.validate();

  if (cfg.base == "identity") {
    prob.g0 = MatC::Identity(cfg.n, cfg.n);
  } else if (cfg.base == "diag") {
    prob.g0 = MatC::Zero(cfg.n, cfg.n);
    for (int i = 0; i < cfg.n; ++i) prob.g0(i, i) = cfg.base_diag[i];
  } else {  // potential
    prob.g0 = MatC::Identity(cfg.n, cfg.n);
    prob.psi = eval_expression(cfg.potential_expr, 1.0, prob.grid,
                               cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    prob.psi_scale = cfg.potential_scale;
  }

  if (cfg.f_expr == "file") {
    const StoredField stored = read_field(cfg.f_file);
    if (!stored.is_real) {
      throw ConfigError("config: f field file must hold a real field");
    }
    if (!(stored.grid == prob.grid)) {
      throw ConfigError("config: f field file grid does not match n/N");
    }
    prob.f = to_real_field(stored);
  } else {
    prob.f = eval_expression(cfg.f_expr, cfg.f_amplitude, prob.grid, cfg.seed);
  }

  if (!cfg.init_expr.empty() && cfg.init_amplitude != 0.0) {
    prob.initial_guess = eval_expression(cfg.init_expr, cfg.init_amplitude,
                                         prob.grid, cfg.seed + 1);
  }

  prob.path_steps = cfg.path_steps;
  prob.newton_tol = cfg.newton_tol;
  prob.max_newton = cfg.max_newton;
  prob.seed = cfg.seed;
  return prob;
}

}  // namespace fcy
