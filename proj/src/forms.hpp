#pragma once

// Pointwise multilinear algebra relating (1,1)-form metrics to the
// coefficient matrices of their (n-1)st wedge powers, in the convention
// where an (n-1,n-1)-form Theta is expanded over the basis obtained by
// deleting dz^p and dzbar^q from the full volume string, with the sign
// s(p,q) chosen so that dz^p ^ dzbar^q ^ s(p,q)*basis(p,q) is the volume
// string itself.  The (sqrt(-1)/2)^{n-1} (n-1)! prefactor is absorbed, so
// matrices here hold the bare Theta_{p qbar} coefficients.
//
// All functions are pure; dimensions 2 <= n <= 4.

#include <complex>

#include <Eigen/Dense>

namespace fcy {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;

// Coefficient matrix of a (1,1)-form (role: g_{i jbar}, eta, complex Hessian).
using HermitianMatrix = MatC;
// Coefficient matrix of an (n-1,n-1)-form (role: Psi, Psi_u, Theta).
using N1Matrix = MatC;

namespace forms {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 4;

// s(p,q) = -1 iff p > q, +1 otherwise.  1-based indices, 1 <= p,q <= n.
int sign_pq(int p, int q, int n);

// Relative deviation from Hermitian symmetry, max over entries.
double hermitian_defect(const MatC& m);

void require_hermitian(const MatC& m, const char* what, double tol = 1e-12);
void require_dimension(int n);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const MatC& m);

bool is_positive_definite(const MatC& m);

// Psi = det(g) * transposed-inverse(g); the coefficient matrix of
// omega^{n-1} for omega with coefficient matrix g.  g must be Hermitian
// positive definite.
N1Matrix power_n1(const HermitianMatrix& g);

// Inverse of power_n1: the unique positive g with power_n1(g) = Psi,
// g = (det Psi)^{1/(n-1)} * transposed-inverse(Psi).
HermitianMatrix root_n1(const N1Matrix& psi);

// det of the coefficient matrix; equals det(g)^{n-1} when Psi = power_n1(g).
double det_n1(const N1Matrix& psi);

// Coefficient matrix of (sqrt(-1)/2) ddbar(v) ^ eta^{n-2} for flat eta = I,
// given the complex Hessian H = (v_{i jbar}):
//   Theta_{i ibar} =  sum_{p != i} H_{p pbar} / (n-1)
//   Theta_{i jbar} = -H_{j ibar} / (n-1)          (i != j)
// The off-diagonal sign is fixed by the exterior-algebra expansion (see the
// wedge oracle in checks); it is what makes assemble(Psi0,u) the coefficient
// matrix of the actual perturbed form.
N1Matrix contract_hessian(const HermitianMatrix& hessian);

// Real trace sum_i Psi_{i ibar}.
double trace_n1(const N1Matrix& psi);

}  // namespace forms
}  // namespace fcy
