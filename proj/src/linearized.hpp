#pragma once

// Linearization of M at an iterate u:
//   L(v) = tr(Psi_u^{-1} Theta_v)/(n-1) - (its vol_u-weighted mean),
// where Theta_v = contract(hessian(v)).  The trace pairing reduces to the
// unconjugated entrywise sum  sum_{p,q} Theta_v[p][q] g_u[p][q] / det g_u,
// validated against the wedge oracle (constants are the kernel; the range
// integrates to zero against omega_u^n).

#include <vector>

#include "assembly.hpp"

namespace fcy {

struct LinearState {
  MatrixField Psi_u;
  MatrixField g_u;
  RealField vol_u;
  double V_u = 0.0;
};

LinearState make_linear_state(const MatrixField& psi_u);

RealField apply_Lt(const SpectralWorkspace& ws, const LinearState& state,
                   const RealField& v);

struct LinearSolveOutcome {
  bool ok = false;
  RealField v;  // best iterate, mean-zero against eta^n
  double achieved = 0.0;  // sup-norm of apply_Lt(v) - rhs
  int iterations = 0;
  bool used_dense = false;
  std::vector<double> history;  // estimated residual 2-norms
  std::string message;
};

// Matrix-free FGMRES on the constant-augmented operator, right-preconditioned
// by the inverse flat Laplacian on mean-zero modes; dense LU fallback when
// the grid has at most 4096 points.  rhs must integrate to ~0 against vol_u.
LinearSolveOutcome solve_linear(const SpectralWorkspace& ws,
                                const LinearState& state, const RealField& rhs,
                                double tol);

// Dense matrix of the raw operator (columns = apply_Lt of unit samples);
// grids up to 4096 points.
Eigen::MatrixXd assemble_dense(const SpectralWorkspace& ws,
                               const LinearState& state);

}  // namespace fcy
