#pragma once

// Field-level assembly for the equation
//   det[ Psi0 + (sqrt(-1)/2) ddbar(u) ^ eta^{n-2} ] = e^F det Psi0
// in its normalized form through the functional
//   M(u) = log(omega_u^n / omega_0^n) - log( (1/V) int omega_u^n ).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "spectral.hpp"

namespace fcy {

// Pointwise positivity loss; carries the worst grid point.
class PositivityError : public std::domain_error {
 public:
  PositivityError(const std::string& what, std::int64_t point,
                  double eigenvalue);

  std::int64_t point;
  double eigenvalue;
};

// One solve instance.  The base metric is either the constant Hermitian g0
// or, when psi_scale != 0, potential-generated from the flat metric.
struct Problem {
  GridSpec grid;
  MatC g0;  // constant positive Hermitian base metric
  RealField psi;
  double psi_scale = 0.0;
  RealField f;  // normalized at build time
  int path_steps = 1;
  double newton_tol = 1e-10;
  int max_newton = 30;
  std::uint64_t seed = 0;
  std::optional<RealField> initial_guess;
};

// Base quantities assembled once per problem; V is cached here.
struct BaseState {
  MatrixField Psi0;
  RealField vol0;
  RealField h;
  double V = 0.0;
};

// Psi0 = power_n1(identity) + scale * contract(hessian(psi)); throws
// PositivityError (worst point and eigenvalue) if the result is not
// positive definite everywhere.
MatrixField balanced_from_potential(const SpectralWorkspace& ws,
                                    const RealField& psi, double scale);

MatrixField constant_base(const GridSpec& grid, const MatC& g0);

BaseState make_base(const SpectralWorkspace& ws, const Problem& prob);

// Psi_u = Psi0 + contract(hessian(u)) pointwise; callers guard positivity.
MatrixField assemble_psi_u(const SpectralWorkspace& ws,
                           const MatrixField& Psi0, const RealField& u);

// h = n eta ^ omega_0^{n-1} / eta^n = trace of Psi0 for flat eta.
RealField h_field(const MatrixField& Psi0);

// omega_u^n / eta^n = det(Psi_u)^{1/(n-1)}; throws PositivityError with the
// offending point when Psi_u is not positive definite there.
RealField volume_density(const MatrixField& psi_u);

// Smallest eigenvalue over all grid points, with its location.
struct EigenFloor {
  double value = 0.0;
  std::int64_t point = 0;
};
EigenFloor min_eigenvalue_over_grid(const MatrixField& field);

RealField m_functional(const SpectralWorkspace& ws, const BaseState& base,
                       const RealField& u);

// M(u) - t f + log( int e^{t f} vol0 / V ); identically zero at a solution
// of the t-deformed equation.
RealField residual(const SpectralWorkspace& ws, const BaseState& base,
                   const RealField& f, const RealField& u, double t);

// Data for which u_star is the exact solution at t = 1: f = M(u_star).
RealField manufacture_f(const SpectralWorkspace& ws, const BaseState& base,
                        const RealField& u_star);

// Shift so that int e^f vol0 = V (the compatibility condition).
RealField normalize_f(const RealField& f_raw, const BaseState& base);

// log int omega_u^n - log int e^f omega_0^n, the realized constant.
double solve_constant(const BaseState& base, const RealField& f,
                      const RealField& vol_u);

}  // namespace fcy
