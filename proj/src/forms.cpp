#include "forms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fcy {
namespace forms {

int sign_pq(int p, int q, int n) {
  if (p < 1 || p > n || q < 1 || q > n) {
    std::ostringstream os;
    os << "sign_pq: index (" << p << "," << q << ") out of range 1.." << n;
    throw std::invalid_argument(os.str());
  }
  return p > q ? -1 : 1;
}

double hermitian_defect(const MatC& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

void require_hermitian(const MatC& m, const char* what, double tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix not square");
  }
  if (hermitian_defect(m) > tol) {
    throw std::invalid_argument(std::string(what) + ": matrix not Hermitian");
  }
}

void require_dimension(int n) {
  if (n < kMinDim || n > kMaxDim) {
    std::ostringstream os;
    os << "dimension n = " << n << " outside supported range " << kMinDim
       << ".." << kMaxDim;
    throw std::invalid_argument(os.str());
  }
}

double min_eigenvalue(const MatC& m) {
  Eigen::SelfAdjointEigenSolver<MatC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_positive_definite(const MatC& m) { return min_eigenvalue(m) > 0.0; }

N1Matrix power_n1(const HermitianMatrix& g) {
  require_dimension(static_cast<int>(g.rows()));
  if (!is_positive_definite(g)) {
    throw std::domain_error("power_n1: matrix not positive definite");
  }
  const Cplx det = g.determinant();
  return det.real() * g.inverse().transpose();
}

HermitianMatrix root_n1(const N1Matrix& psi) {
  const int n = static_cast<int>(psi.rows());
  require_dimension(n);
  if (!is_positive_definite(psi)) {
    throw std::domain_error("root_n1: matrix not positive definite");
  }
  const double det = psi.determinant().real();
  const double d = std::pow(det, 1.0 / (n - 1));
  return d * psi.inverse().transpose();
}

double det_n1(const N1Matrix& psi) { return psi.determinant().real(); }

N1Matrix contract_hessian(const HermitianMatrix& hessian) {
  const int n = static_cast<int>(hessian.rows());
  require_dimension(n);
  N1Matrix theta = MatC::Zero(n, n);
  const double inv = 1.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    Cplx diag = 0.0;
    for (int p = 0; p < n; ++p) {
      if (p != i) diag += hessian(p, p);
    }
    theta(i, i) = diag * inv;
    for (int j = 0; j < n; ++j) {
      if (j != i) theta(i, j) = -hessian(j, i) * inv;
    }
  }
  return theta;
}

double trace_n1(const N1Matrix& psi) { return psi.trace().real(); }

}  // namespace forms
}  // namespace fcy
