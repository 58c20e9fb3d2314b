#include "io.hpp"

#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "checks.hpp"
#include "config.hpp"
#include "version.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts need swapping");

namespace fcy {

namespace {

using nlohmann::json;

constexpr const char* kLayout = "row-major-x1y1...";

void write_header(const std::string& basepath, const GridSpec& grid,
                  bool is_real) {
  json h;
  h["n"] = grid.n;
  h["N"] = grid.N;
  h["kind"] = is_real ? "real" : "complex";
  h["layout"] = kLayout;
  write_text_file(basepath + ".json", h.dump(2) + "\n");
}

void write_raw(const std::string& basepath, const double* data, size_t count) {
  std::ofstream out(basepath + ".f64", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + basepath + ".f64");
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw std::runtime_error("short write to " + basepath + ".f64");
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_echo(const RunConfig& cfg) {
  json c;
  c["command"] = cfg.command;
  c["n"] = cfg.n;
  c["N"] = cfg.N;
  c["base"] = cfg.base;
  c["base_diag"] = cfg.base_diag;
  c["potential_expr"] = cfg.potential_expr;
  c["potential_scale"] = cfg.potential_scale;
  c["f_expr"] = cfg.f_expr;
  c["f_amplitude"] = cfg.f_amplitude;
  c["f_file"] = cfg.f_file;
  c["init_expr"] = cfg.init_expr;
  c["init_amplitude"] = cfg.init_amplitude;
  c["ustar_expr"] = cfg.ustar_expr;
  c["ustar_amplitude"] = cfg.ustar_amplitude;
  c["psi_expr"] = cfg.psi_expr;
  c["psi_scale"] = cfg.psi_scale;
  c["path_steps"] = cfg.path_steps;
  c["newton_tol"] = cfg.newton_tol;
  c["max_newton"] = cfg.max_newton;
  c["seed"] = cfg.seed;
  return c;
}

}  // namespace

void write_field(const std::string& basepath, const RealField& f) {
  write_header(basepath, f.grid, true);
  write_raw(basepath, f.v.data(), f.v.size());
}

void write_field(const std::string& basepath, const ComplexField& f) {
  write_header(basepath, f.grid, false);
  std::vector<double> raw;
  raw.reserve(f.v.size() * 2);
  for (const Cplx& z : f.v) {
    raw.push_back(z.real());
    raw.push_back(z.imag());
  }
  write_raw(basepath, raw.data(), raw.size());
}

void write_field(const std::string& basepath, const StoredField& f) {
  const size_t expect = static_cast<size_t>(f.grid.points()) *
                        (f.is_real ? 1 : 2);
  if (f.raw.size() != expect) {
    throw std::runtime_error("write_field: value count does not match grid");
  }
  write_header(basepath, f.grid, f.is_real);
  write_raw(basepath, f.raw.data(), f.raw.size());
}

StoredField read_field(const std::string& basepath) {
  json h;
  try {
    h = json::parse(read_text_file(basepath + ".json"));
  } catch (const json::exception& e) {
    throw std::runtime_error("bad field header " + basepath + ".json: " +
                             e.what());
  }
  StoredField out;
  out.grid.n = h.at("n").get<int>();
  out.grid.N = h.at("N").get<int>();
  out.grid.validate();
  const std::string kind = h.at("kind").get<std::string>();
  if (kind != "real" && kind != "complex") {
    throw std::runtime_error("bad field kind '" + kind + "'");
  }
  if (h.at("layout").get<std::string>() != kLayout) {
    throw std::runtime_error("unsupported field layout");
  }
  out.is_real = kind == "real";

  std::ifstream in(basepath + ".f64", std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + basepath + ".f64");
  const size_t count = static_cast<size_t>(out.grid.points()) *
                       (out.is_real ? 1 : 2);
  out.raw.resize(count);
  in.read(reinterpret_cast<char*>(out.raw.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<size_t>(in.gcount()) != count * sizeof(double)) {
    throw std::runtime_error("field data truncated: " + basepath + ".f64");
  }
  return out;
}

RealField to_real_field(const StoredField& stored) {
  if (!stored.is_real) {
    throw std::runtime_error("field is complex, expected real");
  }
  RealField f(stored.grid);
  f.v = stored.raw;
  return f;
}

std::string result_record_json(const RunConfig& cfg, const SolveResult& result,
                               const RecordExtras& extras) {
  json rec;
  rec["version"] = FCY_VERSION;
  rec["command"] = cfg.command;
  rec["config"] = config_echo(cfg);
  rec["seed"] = cfg.seed;
  rec["timestamp"] = timestamp_utc();

  json r;
  r["converged"] = result.converged;
  r["status"] = to_string(result.status);
  r["constant"] = result.constant;
  r["residual_sup"] = result.residual_sup;
  r["oscillation"] = result.oscillation;
  r["min_eig"] = result.min_eig;
  r["last_good_t"] = result.last_good_t;
  r["history_rows"] = result.history.size();
  if (!result.message.empty()) r["message"] = result.message;
  for (const auto& [key, value] : extras) r[key] = value;
  rec["result"] = r;
  return rec.dump(2) + "\n";
}

std::string history_csv(const SolveResult& result) {
  std::ostringstream os;
  os.precision(17);
  os << "t,iter,residual_sup,min_eig,constant\n";
  for (const HistoryRow& row : result.history) {
    os << row.t << ',' << row.iter << ',' << row.residual_sup << ','
       << row.min_eig << ',' << row.constant << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string aggregate_records(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ostringstream os;
  os.precision(17);
  os << "file,command,n,N,converged,constant,residual_sup,oscillation\n";
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const fs::path& p : paths) {
    json rec;
    try {
      rec = json::parse(read_text_file(p.string()));
    } catch (const json::exception&) {
      continue;
    }
    if (!rec.contains("version") || !rec.contains("result")) continue;
    const json& r = rec["result"];
    os << p.filename().string() << ',' << rec.value("command", "") << ','
       << rec["config"].value("n", 0) << ',' << rec["config"].value("N", 0)
       << ',' << (r.value("converged", false) ? 1 : 0) << ','
       << r.value("constant", 0.0) << ',' << r.value("residual_sup", 0.0)
       << ',' << r.value("oscillation", 0.0) << '\n';
  }
  return os.str();
}

std::string selftest_report_json(const checks::SelfTestReport& rep) {
  json j;
  j["version"] = FCY_VERSION;
  j["pass"] = rep.pass;
  json lines = json::array();
  for (const auto& line : rep.lines) {
    lines.push_back(
        {{"name", line.name}, {"pass", line.pass}, {"detail", line.detail}});
  }
  j["lines"] = lines;
  return j.dump(2) + "\n";
}

std::string equivalence_report_json(const checks::EquivalenceReport& rep) {
  json j;
  j["version"] = FCY_VERSION;
  j["pass"] = rep.pass;
  j["psi_gap"] = rep.psi_gap;
  j["tolerance"] = rep.tolerance;
  j["compatibility_gap"] = rep.compatibility_gap;
  j["base_converged"] = rep.base_solve.converged;
  j["shifted_converged"] = rep.shifted_solve.converged;
  j["message"] = rep.message;
  return j.dump(2) + "\n";
}

}  // namespace fcy
