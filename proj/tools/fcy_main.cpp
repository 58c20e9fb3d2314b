// Command-line front end; talks to the solver library through the C API
// only.  Exit codes: 0 ok, 2 config error, 3 solve failure, 4 check failure,
// 1 anything else.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcy/fcy.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolve = 3;
constexpr int kExitCheck = 4;

int status_to_exit(fcy_status s) {
  switch (s) {
    case FCY_OK:
      return 0;
    case FCY_ERR_CONFIG:
      return kExitConfig;
    case FCY_ERR_SOLVE:
      return kExitSolve;
    case FCY_ERR_CHECK:
      return kExitCheck;
    default:
      return kExitError;
  }
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

struct ProblemHandle {
  fcy_problem* p = nullptr;
  ~ProblemHandle() { fcy_problem_free(p); }
};

struct ResultHandle {
  fcy_result* r = nullptr;
  ~ResultHandle() { fcy_result_free(r); }
};

struct FieldHandle {
  fcy_field* f = nullptr;
  ~FieldHandle() { fcy_field_free(f); }
};

int load_problem(const CommonOpts& opts, const char* command,
                 ProblemHandle& handle) {
  fcy_status s = fcy_problem_load(opts.config_path.c_str(), &handle.p);
  if (s != FCY_OK) {
    std::cerr << "error: " << fcy_last_error() << "\n";
    return status_to_exit(s);
  }
  s = fcy_problem_override_command(handle.p, command);
  if (s != FCY_OK) {
    std::cerr << "error: " << fcy_last_error() << "\n";
    return status_to_exit(s);
  }
  if (opts.seed) {
    s = fcy_problem_override_seed(handle.p, *opts.seed);
    if (s != FCY_OK) {
      std::cerr << "error: " << fcy_last_error() << "\n";
      return status_to_exit(s);
    }
  }
  return 0;
}

void write_result_artifacts(const fs::path& out_dir, const fcy_result* r) {
  fs::create_directories(out_dir);
  write_file(out_dir / "result.json", fcy_result_record(r));
  write_file(out_dir / "convergence.csv", fcy_result_history_csv(r));
  FieldHandle u;
  if (fcy_result_solution(r, &u.f) == FCY_OK) {
    fcy_field_write(u.f, (out_dir / "u").string().c_str());
  }
}

int cmd_solve(const CommonOpts& opts) {
  ProblemHandle prob;
  if (int rc = load_problem(opts, "solve", prob); rc != 0) return rc;

  ResultHandle result;
  const fcy_status s = fcy_solve(prob.p, &result.r);
  if (s != FCY_OK) {
    std::cerr << "error: " << fcy_last_error() << "\n";
    return status_to_exit(s);
  }
  write_result_artifacts(opts.out_dir, result.r);
  if (!fcy_result_converged(result.r)) {
    std::cerr << "solve failed: " << fcy_result_message(result.r) << "\n";
    return kExitSolve;
  }
  std::cout << "converged: constant " << fcy_result_constant(result.r)
            << ", residual " << fcy_result_residual_sup(result.r)
            << ", oscillation " << fcy_result_oscillation(result.r) << "\n"
            << "artifacts written to " << opts.out_dir << "\n";
  return 0;
}

int cmd_manufacture(const CommonOpts& opts) {
  ProblemHandle prob;
  if (int rc = load_problem(opts, "manufacture", prob); rc != 0) return rc;

  ResultHandle result;
  FieldHandle ustar;
  FieldHandle f;
  double recovery = 0.0;
  const fcy_status s =
      fcy_manufacture(prob.p, &result.r, &ustar.f, &f.f, &recovery);
  if (s != FCY_OK) {
    std::cerr << "error: " << fcy_last_error() << "\n";
    return status_to_exit(s);
  }
  const fs::path out_dir(opts.out_dir);
  write_result_artifacts(out_dir, result.r);
  fcy_field_write(ustar.f, (out_dir / "u_star").string().c_str());
  fcy_field_write(f.f, (out_dir / "f").string().c_str());
  if (!fcy_result_converged(result.r)) {
    std::cerr << "solve failed: " << fcy_result_message(result.r) << "\n";
    return kExitSolve;
  }
  std::cout << "recovery sup error " << recovery << ", residual "
            << fcy_result_residual_sup(result.r) << "\n"
            << "artifacts written to " << opts.out_dir << "\n";
  return 0;
}

int cmd_selftest(const CommonOpts& opts) {
  std::uint64_t seed = opts.seed.value_or(0);
  if (!opts.config_path.empty()) {
    ProblemHandle prob;
    const fcy_status s = fcy_problem_load(opts.config_path.c_str(), &prob.p);
    if (s != FCY_OK) {
      std::cerr << "error: " << fcy_last_error() << "\n";
      return status_to_exit(s);
    }
  }
  char* report = nullptr;
  const fcy_status s = fcy_selftest(seed, &report);
  int rc = status_to_exit(s);
  if (report != nullptr) {
    try {
      const json j = json::parse(report);
      for (const auto& line : j.at("lines")) {
        std::cout << (line.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ")
                  << line.at("name").get<std::string>() << ": "
                  << line.at("detail").get<std::string>() << "\n";
      }
      fs::create_directories(opts.out_dir);
      write_file(fs::path(opts.out_dir) / "selftest.json", report);
    } catch (const std::exception& e) {
      std::cerr << "error: bad selftest report: " << e.what() << "\n";
      rc = rc == 0 ? kExitError : rc;
    }
    fcy_string_free(report);
  }
  std::cout << (rc == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return rc;
}

int cmd_equivalence(const CommonOpts& opts) {
  ProblemHandle prob;
  if (int rc = load_problem(opts, "equivalence", prob); rc != 0) return rc;

  char* report = nullptr;
  const fcy_status s = fcy_equivalence(prob.p, &report);
  const int rc = status_to_exit(s);
  if (report != nullptr) {
    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "equivalence.json", report);
    try {
      const json j = json::parse(report);
      std::cout << (j.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ")
                << "base-change equivalence: "
                << j.at("message").get<std::string>() << "\n";
    } catch (const std::exception&) {
    }
    fcy_string_free(report);
  }
  if (rc != 0) std::cerr << "error: " << fcy_last_error() << "\n";
  return rc;
}

int cmd_report(const CommonOpts& opts) {
  // Aggregate result records into a summary table; pure file munging on the
  // CLI side.  The records directory is --out, unless a config file names
  // records_dir.
  fs::path dir(opts.out_dir);
  if (!opts.config_path.empty()) {
    ProblemHandle prob;
    const fcy_status s = fcy_problem_load(opts.config_path.c_str(), &prob.p);
    if (s != FCY_OK) {
      std::cerr << "error: " << fcy_last_error() << "\n";
      return status_to_exit(s);
    }
    const char* rd = fcy_problem_records_dir(prob.p);
    if (rd != nullptr && rd[0] != '\0') dir = rd;
  }
  if (!fs::is_directory(dir)) {
    std::cerr << "error: '" << dir.string() << "' is not a directory\n";
    return kExitConfig;
  }
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::ostringstream csv;
  csv.precision(17);
  csv << "file,command,n,N,converged,constant,residual_sup,oscillation\n";
  int rows = 0;
  for (const fs::path& p : paths) {
    json rec;
    try {
      std::ifstream in(p);
      rec = json::parse(in);
    } catch (const std::exception&) {
      continue;
    }
    if (!rec.contains("version") || !rec.contains("result")) continue;
    const json& r = rec["result"];
    csv << p.filename().string() << ',' << rec.value("command", "") << ','
        << rec["config"].value("n", 0) << ',' << rec["config"].value("N", 0)
        << ',' << (r.value("converged", false) ? 1 : 0) << ','
        << r.value("constant", 0.0) << ',' << r.value("residual_sup", 0.0)
        << ',' << r.value("oscillation", 0.0) << '\n';
    ++rows;
  }
  write_file(dir / "summary.csv", csv.str());
  std::cout << csv.str();
  std::cout << rows << " record(s) -> " << (dir / "summary.csv").string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("form-type Calabi-Yau solver (library ") +
               fcy_version() + ")"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opts.config_path,
                              "flat key=value configuration file");
    if (config_required) c->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    std::uint64_t seed_value = 0;
    sub->add_option_function<std::uint64_t>(
        "--seed", [&opts](std::uint64_t v) { opts.seed = v; },
        "master seed override");
    (void)seed_value;
  };

  auto* solve = app.add_subcommand("solve", "run the continuity solver");
  add_common(solve, true);
  auto* manufacture = app.add_subcommand(
      "manufacture", "manufactured-solution run with recovery report");
  add_common(manufacture, true);
  auto* selftest =
      app.add_subcommand("selftest", "run the property self-test suite");
  add_common(selftest, false);
  auto* equivalence = app.add_subcommand(
      "equivalence", "base-change equivalence cross-check");
  add_common(equivalence, true);
  auto* report = app.add_subcommand(
      "report", "aggregate result records into a summary table");
  add_common(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(opts);
    if (manufacture->parsed()) return cmd_manufacture(opts);
    if (selftest->parsed()) return cmd_selftest(opts);
    if (equivalence->parsed()) return cmd_equivalence(opts);
    if (report->parsed()) return cmd_report(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
