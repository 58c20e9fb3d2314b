#include "fcy/fcy.h"

#include <cstring>
#include <string>

#include "checks.hpp"
#include "config.hpp"
#include "io.hpp"
#include "version.hpp"

using namespace fcy;

struct fcy_problem {
  RunConfig cfg;
  Problem prob;
};

struct fcy_result {
  SolveResult res;
  std::string record;
  std::string csv;
};

struct fcy_field {
  StoredField data;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ failures onto status codes; runs f and stores its status.
template <typename Fn>
fcy_status guarded(Fn&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    set_error(e.what());
    return FCY_ERR_CONFIG;
  } catch (const PositivityError& e) {
    set_error(e.what());
    return FCY_ERR_DOMAIN;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return FCY_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return FCY_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return FCY_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return FCY_ERR_INTERNAL;
  }
}

fcy_result* make_result(const RunConfig& cfg, SolveResult&& res,
                        const RecordExtras& extras = {}) {
  auto* out = new fcy_result;
  out->res = std::move(res);
  out->record = result_record_json(cfg, out->res, extras);
  out->csv = history_csv(out->res);
  return out;
}

}  // namespace

extern "C" {

const char* fcy_version(void) { return FCY_VERSION; }

const char* fcy_last_error(void) { return g_last_error.c_str(); }

void fcy_string_free(char* s) { std::free(s); }

fcy_status fcy_problem_parse(const char* config_text, fcy_problem** out) {
  if (config_text == nullptr || out == nullptr) {
    set_error("fcy_problem_parse: null argument");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    auto p = std::make_unique<fcy_problem>();
    p->cfg = parse_config_text(config_text);
    p->prob = build_problem(p->cfg);
    *out = p.release();
    return FCY_OK;
  });
}

fcy_status fcy_problem_load(const char* path, fcy_problem** out) {
  if (path == nullptr || out == nullptr) {
    set_error("fcy_problem_load: null argument");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    auto p = std::make_unique<fcy_problem>();
    p->cfg = load_config_file(path);
    p->prob = build_problem(p->cfg);
    *out = p.release();
    return FCY_OK;
  });
}

void fcy_problem_free(fcy_problem* p) { delete p; }

fcy_status fcy_problem_override_seed(fcy_problem* p, uint64_t seed) {
  if (p == nullptr) {
    set_error("fcy_problem_override_seed: null problem");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    p->cfg.seed = seed;
    p->prob = build_problem(p->cfg);  // seeded fields depend on the seed
    return FCY_OK;
  });
}

const char* fcy_problem_records_dir(const fcy_problem* p) {
  return p->cfg.records_dir.c_str();
}

fcy_status fcy_problem_override_command(fcy_problem* p, const char* command) {
  if (p == nullptr || command == nullptr) {
    set_error("fcy_problem_override_command: null argument");
    return FCY_ERR_ARGUMENT;
  }
  if (!p->cfg.command.empty() && p->cfg.command != command) {
    set_error("config command '" + p->cfg.command +
              "' conflicts with requested '" + std::string(command) + "'");
    return FCY_ERR_CONFIG;
  }
  p->cfg.command = command;
  return FCY_OK;
}

fcy_status fcy_solve(fcy_problem* p, fcy_result** out) {
  if (p == nullptr || out == nullptr) {
    set_error("fcy_solve: null argument");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    SpectralWorkspace ws(p->prob.grid);
    const BaseState base = make_base(ws, p->prob);
    Problem run = p->prob;
    run.f = normalize_f(run.f, base);
    SolveResult res = continuity_solve(ws, base, run);
    *out = make_result(p->cfg, std::move(res));
    return FCY_OK;
  });
}

fcy_status fcy_manufacture(fcy_problem* p, fcy_result** out,
                           fcy_field** ustar_out, fcy_field** f_out,
                           double* recovery_sup_error) {
  if (p == nullptr) {
    set_error("fcy_manufacture: null problem");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    SpectralWorkspace ws(p->prob.grid);
    const BaseState base = make_base(ws, p->prob);
    const RealField u_star =
        eval_expression(p->cfg.ustar_expr, p->cfg.ustar_amplitude,
                        p->prob.grid, p->cfg.seed);
    Problem run = p->prob;
    run.f = manufacture_f(ws, base, u_star);
    SolveResult res = continuity_solve(ws, base, run);

    const RealField ua = mean_zero(res.u);
    const RealField ub = mean_zero(u_star);
    double recovery = 0.0;
    for (size_t i = 0; i < ua.v.size(); ++i) {
      recovery = std::max(recovery, std::abs(ua.v[i] - ub.v[i]));
    }

    if (recovery_sup_error != nullptr) *recovery_sup_error = recovery;
    if (ustar_out != nullptr) {
      *ustar_out = new fcy_field{{u_star.grid, true, u_star.v}};
    }
    if (f_out != nullptr) {
      *f_out = new fcy_field{{run.f.grid, true, run.f.v}};
    }
    if (out != nullptr) {
      *out = make_result(p->cfg, std::move(res),
                         {{"recovery_sup_error", recovery}});
    }
    return FCY_OK;
  });
}

void fcy_result_free(fcy_result* r) { delete r; }

int fcy_result_converged(const fcy_result* r) {
  return r != nullptr && r->res.converged ? 1 : 0;
}

double fcy_result_constant(const fcy_result* r) { return r->res.constant; }

double fcy_result_residual_sup(const fcy_result* r) {
  return r->res.residual_sup;
}

double fcy_result_oscillation(const fcy_result* r) {
  return r->res.oscillation;
}

double fcy_result_min_eigenvalue(const fcy_result* r) { return r->res.min_eig; }

const char* fcy_result_message(const fcy_result* r) {
  return r->res.message.c_str();
}

const char* fcy_result_record(const fcy_result* r) {
  return r->record.c_str();
}

const char* fcy_result_history_csv(const fcy_result* r) {
  return r->csv.c_str();
}

size_t fcy_result_history_size(const fcy_result* r) {
  return r->res.history.size();
}

fcy_status fcy_result_history_row(const fcy_result* r, size_t i, double* t,
                                  int* iter, double* residual_sup,
                                  double* min_eig, double* constant) {
  if (r == nullptr || i >= r->res.history.size()) {
    set_error("fcy_result_history_row: index out of range");
    return FCY_ERR_ARGUMENT;
  }
  const HistoryRow& row = r->res.history[i];
  if (t != nullptr) *t = row.t;
  if (iter != nullptr) *iter = row.iter;
  if (residual_sup != nullptr) *residual_sup = row.residual_sup;
  if (min_eig != nullptr) *min_eig = row.min_eig;
  if (constant != nullptr) *constant = row.constant;
  return FCY_OK;
}

fcy_status fcy_result_solution(const fcy_result* r, fcy_field** out) {
  if (r == nullptr || out == nullptr) {
    set_error("fcy_result_solution: null argument");
    return FCY_ERR_ARGUMENT;
  }
  *out = new fcy_field{{r->res.u.grid, true, r->res.u.v}};
  return FCY_OK;
}

fcy_status fcy_field_read(const char* basepath, fcy_field** out) {
  if (basepath == nullptr || out == nullptr) {
    set_error("fcy_field_read: null argument");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    auto f = std::make_unique<fcy_field>();
    try {
      f->data = read_field(basepath);
    } catch (const std::runtime_error& e) {
      set_error(e.what());
      return FCY_ERR_IO;
    }
    *out = f.release();
    return FCY_OK;
  });
}

fcy_status fcy_field_write(const fcy_field* f, const char* basepath) {
  if (f == nullptr || basepath == nullptr) {
    set_error("fcy_field_write: null argument");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    try {
      write_field(basepath, f->data);
    } catch (const std::runtime_error& e) {
      set_error(e.what());
      return FCY_ERR_IO;
    }
    return FCY_OK;
  });
}

void fcy_field_free(fcy_field* f) { delete f; }

int fcy_field_dimension(const fcy_field* f) { return f->data.grid.n; }

int fcy_field_samples(const fcy_field* f) { return f->data.grid.N; }

int fcy_field_is_real(const fcy_field* f) { return f->data.is_real ? 1 : 0; }

size_t fcy_field_size(const fcy_field* f) { return f->data.raw.size(); }

fcy_status fcy_field_values(const fcy_field* f, double* buf, size_t cap) {
  if (f == nullptr || buf == nullptr) {
    set_error("fcy_field_values: null argument");
    return FCY_ERR_ARGUMENT;
  }
  if (cap < f->data.raw.size()) {
    set_error("fcy_field_values: buffer too small");
    return FCY_ERR_ARGUMENT;
  }
  std::memcpy(buf, f->data.raw.data(), f->data.raw.size() * sizeof(double));
  return FCY_OK;
}

fcy_status fcy_selftest(uint64_t seed, char** report_json) {
  return guarded([&]() {
    const checks::SelfTestReport rep = checks::run_selftest(seed);
    if (report_json != nullptr) {
      *report_json = dup_string(selftest_report_json(rep));
    }
    if (!rep.pass) {
      set_error("selftest failed");
      return FCY_ERR_CHECK;
    }
    return FCY_OK;
  });
}

fcy_status fcy_equivalence(fcy_problem* p, char** report_json) {
  if (p == nullptr) {
    set_error("fcy_equivalence: null problem");
    return FCY_ERR_ARGUMENT;
  }
  return guarded([&]() {
    SpectralWorkspace ws(p->prob.grid);
    const RealField psi = eval_expression(p->cfg.psi_expr, 1.0, p->prob.grid,
                                          p->cfg.seed ^ 0xabcd1234ULL);
    const checks::EquivalenceReport rep =
        checks::check_remark_equivalence(ws, p->prob, psi, p->cfg.psi_scale);
    if (report_json != nullptr) {
      *report_json = dup_string(equivalence_report_json(rep));
    }
    if (!rep.base_solve.converged || !rep.shifted_solve.converged) {
      set_error(rep.message);
      return FCY_ERR_SOLVE;
    }
    if (!rep.pass) {
      set_error(rep.message);
      return FCY_ERR_CHECK;
    }
    return FCY_OK;
  });
}

}  // extern "C"
