#pragma once

// Continuity method over t in [0,1] with damped Newton inner iterations.
// Every accepted iterate keeps Psi_u positive definite pointwise (checked,
// not assumed); failure is a structured result, never a crash.

#include <string>
#include <vector>

#include "linearized.hpp"

namespace fcy {

struct HistoryRow {
  double t = 0.0;
  int iter = 0;
  double residual_sup = 0.0;
  double min_eig = 0.0;
  double constant = 0.0;
};

enum class SolveStatus {
  kConverged,
  kNewtonFailure,
  kLinearFailure,
  kStepUnderflow,
  kPositivityFailure,
};

const char* to_string(SolveStatus s);

struct NewtonOutcome {
  bool ok = false;
  RealField u;  // best iterate, re-gauged to zero eta-mean
  int iterations = 0;
  double residual_sup = 0.0;
  double min_eig = 0.0;
  std::string message;
  std::vector<HistoryRow> rows;
};

struct SolveResult {
  bool converged = false;
  SolveStatus status = SolveStatus::kNewtonFailure;
  RealField u;
  double constant = 0.0;
  double residual_sup = 0.0;
  double oscillation = 0.0;
  double min_eig = 0.0;
  double last_good_t = 0.0;
  std::vector<HistoryRow> history;
  std::string message;
};

// Damped Newton at fixed t.  Line search over alpha in {1, 1/2, ..., 2^-8}
// accepting the largest step that keeps the eigenvalue floor above 0.1x the
// current one and shrinks the residual sup-norm to at most (1 - alpha/4) of
// its value.
NewtonOutcome newton_solve_at_t(const SpectralWorkspace& ws,
                                const BaseState& base, const RealField& f,
                                const RealField& u0, double t,
                                double newton_tol, int max_newton);

SolveResult continuity_solve(const SpectralWorkspace& ws,
                             const BaseState& base, const Problem& prob);

}  // namespace fcy
