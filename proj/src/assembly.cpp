#include "assembly.hpp"

#include <cmath>
#include <sstream>

namespace fcy {

namespace {

std::string positivity_message(const std::string& what, std::int64_t point,
                               double eigenvalue) {
  std::ostringstream os;
  os << what << ": lost positivity at grid point " << point
     << " (smallest eigenvalue " << eigenvalue << ")";
  return os.str();
}

}  // namespace

PositivityError::PositivityError(const std::string& what, std::int64_t pt,
                                 double eig)
    : std::domain_error(positivity_message(what, pt, eig)),
      point(pt),
      eigenvalue(eig) {}

MatrixField balanced_from_potential(const SpectralWorkspace& ws,
                                    const RealField& psi, double scale) {
  const GridSpec& grid = ws.grid();
  require_same_grid(psi.grid, grid, "balanced_from_potential");
  const MatC identity_power =
      forms::power_n1(MatC::Identity(grid.n, grid.n));
  MatrixField out(grid);
  const MatrixField hess = ws.complex_hessian(psi);
  const std::int64_t npts = grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    out.at(p) = identity_power + scale * forms::contract_hessian(hess.at(p));
  }
  const EigenFloor floor = min_eigenvalue_over_grid(out);
  if (floor.value <= 0.0) {
    throw PositivityError("balanced_from_potential", floor.point, floor.value);
  }
  return out;
}

MatrixField constant_base(const GridSpec& grid, const MatC& g0) {
  forms::require_hermitian(g0, "constant_base");
  const N1Matrix psi0 = forms::power_n1(g0);
  MatrixField out(grid);
  const std::int64_t npts = grid.points();
  for (std::int64_t p = 0; p < npts; ++p) out.at(p) = psi0;
  return out;
}

BaseState make_base(const SpectralWorkspace& ws, const Problem& prob) {
  BaseState base;
  if (prob.psi_scale != 0.0) {
    base.Psi0 = balanced_from_potential(ws, prob.psi, prob.psi_scale);
  } else {
    base.Psi0 = constant_base(ws.grid(), prob.g0);
  }
  base.vol0 = volume_density(base.Psi0);
  base.h = h_field(base.Psi0);
  base.V = integrate(base.vol0);
  return base;
}

MatrixField assemble_psi_u(const SpectralWorkspace& ws,
                           const MatrixField& Psi0, const RealField& u) {
  require_same_grid(Psi0.grid, u.grid, "assemble_psi_u");
  const MatrixField hess = ws.complex_hessian(u);
  MatrixField out(Psi0.grid);
  const std::int64_t npts = Psi0.grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    out.at(p) = Psi0.at(p) + forms::contract_hessian(hess.at(p));
  }
  return out;
}

RealField h_field(const MatrixField& Psi0) {
  RealField h(Psi0.grid);
  const std::int64_t npts = Psi0.grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    h.v[static_cast<size_t>(p)] = forms::trace_n1(Psi0.at(p));
  }
  return h;
}

RealField volume_density(const MatrixField& psi_u) {
  const int n = psi_u.grid.n;
  RealField vol(psi_u.grid);
  const std::int64_t npts = psi_u.grid.points();
  Eigen::LLT<MatC> llt;
  for (std::int64_t p = 0; p < npts; ++p) {
    const auto m = psi_u.at(p);
    llt.compute(m);
    if (llt.info() != Eigen::Success) {
      throw PositivityError("volume_density", p, forms::min_eigenvalue(m));
    }
    double det = 1.0;
    for (int i = 0; i < n; ++i) {
      const double d = llt.matrixLLT()(i, i).real();
      det *= d * d;
    }
    if (!(det > 1e-300)) {
      throw PositivityError("volume_density", p, forms::min_eigenvalue(m));
    }
    vol.v[static_cast<size_t>(p)] = std::pow(det, 1.0 / (n - 1));
  }
  return vol;
}

EigenFloor min_eigenvalue_over_grid(const MatrixField& field) {
  EigenFloor floor;
  floor.value = std::numeric_limits<double>::infinity();
  const std::int64_t npts = field.grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    const double e = forms::min_eigenvalue(field.at(p));
    if (e < floor.value) {
      floor.value = e;
      floor.point = p;
    }
  }
  return floor;
}

RealField m_functional(const SpectralWorkspace& ws, const BaseState& base,
                       const RealField& u) {
  const RealField vol_u =
      volume_density(assemble_psi_u(ws, base.Psi0, u));
  const double mass = integrate(vol_u);
  const double shift = std::log(mass / base.V);
  RealField m(u.grid);
  for (size_t i = 0; i < m.v.size(); ++i) {
    m.v[i] = std::log(vol_u.v[i] / base.vol0.v[i]) - shift;
  }
  return m;
}

RealField residual(const SpectralWorkspace& ws, const BaseState& base,
                   const RealField& f, const RealField& u, double t) {
  require_same_grid(f.grid, u.grid, "residual");
  RealField r = m_functional(ws, base, u);
  RealField etf(f.grid);
  for (size_t i = 0; i < f.v.size(); ++i) etf.v[i] = std::exp(t * f.v[i]);
  const double rhs_shift = std::log(integrate(etf, base.vol0) / base.V);
  for (size_t i = 0; i < r.v.size(); ++i) {
    r.v[i] += -t * f.v[i] + rhs_shift;
  }
  return r;
}

RealField manufacture_f(const SpectralWorkspace& ws, const BaseState& base,
                        const RealField& u_star) {
  return m_functional(ws, base, u_star);
}

RealField normalize_f(const RealField& f_raw, const BaseState& base) {
  RealField ef(f_raw.grid);
  for (size_t i = 0; i < f_raw.v.size(); ++i) ef.v[i] = std::exp(f_raw.v[i]);
  const double shift = std::log(integrate(ef, base.vol0) / base.V);
  RealField f = f_raw;
  for (double& x : f.v) x -= shift;
  return f;
}

double solve_constant(const BaseState& base, const RealField& f,
                      const RealField& vol_u) {
  RealField ef(f.grid);
  for (size_t i = 0; i < f.v.size(); ++i) ef.v[i] = std::exp(f.v[i]);
  return std::log(integrate(vol_u)) - std::log(integrate(ef, base.vol0));
}

}  // namespace fcy
