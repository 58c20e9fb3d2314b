#include "continuity.hpp"

#include <cmath>
#include <sstream>

namespace fcy {

namespace {

// Snapshot of everything Newton needs at one iterate.
struct Iterate {
  LinearState state;
  RealField r;
  double rsup = 0.0;
  EigenFloor floor;
  double constant = 0.0;
};

struct TContext {
  double t = 0.0;
  double rhs_shift = 0.0;   // log( int e^{tf} vol0 / V )
  double etf_mass = 0.0;    // int e^{tf} vol0
};

TContext make_t_context(const BaseState& base, const RealField& f, double t) {
  TContext ctx;
  ctx.t = t;
  RealField etf(f.grid);
  for (size_t i = 0; i < f.v.size(); ++i) etf.v[i] = std::exp(t * f.v[i]);
  ctx.etf_mass = integrate(etf, base.vol0);
  ctx.rhs_shift = std::log(ctx.etf_mass / base.V);
  return ctx;
}

RealField residual_from_volume(const BaseState& base, const RealField& f,
                               const TContext& ctx, const RealField& vol_u,
                               double v_u) {
  RealField r(f.grid);
  const double mass_shift = std::log(v_u / base.V);
  for (size_t i = 0; i < r.v.size(); ++i) {
    r.v[i] = std::log(vol_u.v[i] / base.vol0.v[i]) - mass_shift -
             ctx.t * f.v[i] + ctx.rhs_shift;
  }
  return r;
}

Iterate make_iterate(const SpectralWorkspace& ws, const BaseState& base,
                     const RealField& f, const TContext& ctx,
                     const RealField& u) {
  Iterate it;
  MatrixField psi_u = assemble_psi_u(ws, base.Psi0, u);
  it.floor = min_eigenvalue_over_grid(psi_u);
  if (it.floor.value <= 0.0) {
    throw PositivityError("newton iterate", it.floor.point, it.floor.value);
  }
  it.state = make_linear_state(std::move(psi_u));
  it.r = residual_from_volume(base, f, ctx, it.state.vol_u, it.state.V_u);
  it.rsup = sup_norm(it.r);
  it.constant = std::log(it.state.V_u) - std::log(ctx.etf_mass);
  return it;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kNewtonFailure:
      return "newton_failure";
    case SolveStatus::kLinearFailure:
      return "linear_failure";
    case SolveStatus::kStepUnderflow:
      return "step_underflow";
    case SolveStatus::kPositivityFailure:
      return "positivity_failure";
  }
  return "unknown";
}

NewtonOutcome newton_solve_at_t(const SpectralWorkspace& ws,
                                const BaseState& base, const RealField& f,
                                const RealField& u0, double t,
                                double newton_tol, int max_newton) {
  NewtonOutcome out;
  RealField u = u0;
  const TContext ctx = make_t_context(base, f, t);

  Iterate cur;
  try {
    cur = make_iterate(ws, base, f, ctx, u);
  } catch (const PositivityError& e) {
    out.message = e.what();
    out.u = mean_zero(u0);
    return out;
  }

  for (int iter = 0;; ++iter) {
    out.rows.push_back(
        {t, iter, cur.rsup, cur.floor.value, cur.constant});
    out.iterations = iter;
    out.residual_sup = cur.rsup;
    out.min_eig = cur.floor.value;
    if (cur.rsup <= newton_tol) {
      out.ok = true;
      break;
    }
    if (iter >= max_newton) {
      out.message = "newton iteration cap reached";
      break;
    }

    // Project the residual onto the solvable range before the linear solve.
    RealField rhs = cur.r;
    const double wmean = integrate(rhs, cur.state.vol_u) / cur.state.V_u;
    for (double& x : rhs.v) x = -(x - wmean);

    const double lin_target = std::max(0.02 * cur.rsup, 1e-13);
    const double lin_tol = lin_target / std::max(1.0, sup_norm(rhs));
    LinearSolveOutcome lin = solve_linear(ws, cur.state, rhs, lin_tol);
    if (!lin.ok) {
      out.message = "linear solve failed: " + lin.message;
      break;
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int halving = 0; halving <= 8; ++halving, alpha *= 0.5) {
      RealField trial = u;
      for (size_t i = 0; i < trial.v.size(); ++i) {
        trial.v[i] += alpha * lin.v.v[i];
      }
      MatrixField psi_trial = assemble_psi_u(ws, base.Psi0, trial);
      const EigenFloor floor_trial = min_eigenvalue_over_grid(psi_trial);
      if (floor_trial.value <= 0.0 ||
          floor_trial.value < 0.1 * cur.floor.value) {
        continue;
      }
      Iterate next;
      next.floor = floor_trial;
      next.state = make_linear_state(std::move(psi_trial));
      next.r = residual_from_volume(base, f, ctx, next.state.vol_u,
                                    next.state.V_u);
      next.rsup = sup_norm(next.r);
      next.constant = std::log(next.state.V_u) - std::log(ctx.etf_mass);
      if (next.rsup <= (1.0 - 0.25 * alpha) * cur.rsup ||
          next.rsup <= newton_tol) {
        u = std::move(trial);
        cur = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.message = "line search failed";
      break;
    }
  }

  out.u = mean_zero(u);
  return out;
}

SolveResult continuity_solve(const SpectralWorkspace& ws,
                             const BaseState& base, const Problem& prob) {
  SolveResult res;
  RealField u = prob.initial_guess ? mean_zero(*prob.initial_guess)
                                   : RealField(prob.grid);

  const int path_steps = std::max(1, prob.path_steps);

  // Solve at t = 0 first (exact for the zero start; seeded starts converge
  // to the t = 0 solution here).
  NewtonOutcome n0 = newton_solve_at_t(ws, base, prob.f, u, 0.0,
                                       prob.newton_tol, prob.max_newton);
  res.history.insert(res.history.end(), n0.rows.begin(), n0.rows.end());
  if (!n0.ok) {
    res.status = SolveStatus::kNewtonFailure;
    res.message = "failed at t = 0: " + n0.message;
    res.u = n0.u;
    res.last_good_t = 0.0;
    res.residual_sup = n0.residual_sup;
    res.min_eig = n0.min_eig;
    return res;
  }
  u = n0.u;

  double t = 0.0;
  double dt = 1.0 / path_steps;
  while (t < 1.0) {
    const double t_next = std::min(1.0, t + dt);
    NewtonOutcome step = newton_solve_at_t(ws, base, prob.f, u, t_next,
                                           prob.newton_tol, prob.max_newton);
    res.history.insert(res.history.end(), step.rows.begin(), step.rows.end());
    if (step.ok) {
      u = step.u;
      t = t_next;
      res.last_good_t = t;
      res.residual_sup = step.residual_sup;
      res.min_eig = step.min_eig;
      if (step.iterations <= 3) dt = std::min(1.0, dt * 2.0);
    } else {
      dt *= 0.5;
      if (dt < 1e-4) {
        res.status = SolveStatus::kStepUnderflow;
        std::ostringstream os;
        os << "continuation step underflow at t = " << t
           << " (last failure: " << step.message << ")";
        res.message = os.str();
        res.u = u;
        res.oscillation = field_max(u) - field_min(u);
        return res;
      }
    }
  }

  res.converged = true;
  res.status = SolveStatus::kConverged;
  res.u = u;
  const MatrixField psi_u = assemble_psi_u(ws, base.Psi0, u);
  const EigenFloor floor = min_eigenvalue_over_grid(psi_u);
  const RealField vol_u = volume_density(psi_u);
  res.constant = solve_constant(base, prob.f, vol_u);
  res.min_eig = floor.value;
  res.oscillation = field_max(u) - field_min(u);
  return res;
}

}  // namespace fcy
