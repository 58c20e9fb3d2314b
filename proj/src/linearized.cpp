#include "linearized.hpp"

#include <cmath>
#include <sstream>

namespace fcy {

namespace {

using Eigen::VectorXd;

VectorXd to_vector(const RealField& f) {
  return Eigen::Map<const VectorXd>(f.v.data(),
                                    static_cast<Eigen::Index>(f.v.size()));
}

RealField to_field(const GridSpec& grid, const VectorXd& x) {
  RealField f(grid);
  Eigen::Map<VectorXd>(f.v.data(), x.size()) = x;
  return f;
}

}  // namespace

LinearState make_linear_state(const MatrixField& psi_u) {
  LinearState st;
  st.Psi_u = psi_u;
  st.vol_u = volume_density(psi_u);
  st.g_u = MatrixField(psi_u.grid);
  const std::int64_t npts = psi_u.grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    st.g_u.at(p) = forms::root_n1(psi_u.at(p));
  }
  st.V_u = integrate(st.vol_u);
  return st;
}

RealField apply_Lt(const SpectralWorkspace& ws, const LinearState& state,
                   const RealField& v) {
  require_same_grid(v.grid, state.Psi_u.grid, "apply_Lt");
  const int n = v.grid.n;
  const MatrixField hess = ws.complex_hessian(v);
  RealField local(v.grid);
  const std::int64_t npts = v.grid.points();
  for (std::int64_t p = 0; p < npts; ++p) {
    const N1Matrix theta = forms::contract_hessian(hess.at(p));
    const Cplx pairing = (theta.array() * state.g_u.at(p).array()).sum();
    local.v[static_cast<size_t>(p)] =
        pairing.real() / ((n - 1) * state.vol_u.v[static_cast<size_t>(p)]);
  }
  const double mean = integrate(local, state.vol_u) / state.V_u;
  for (double& x : local.v) x -= mean;
  return local;
}

Eigen::MatrixXd assemble_dense(const SpectralWorkspace& ws,
                               const LinearState& state) {
  const std::int64_t npts = state.Psi_u.grid.points();
  if (npts > 4096) {
    throw std::invalid_argument("assemble_dense: grid exceeds 4096 points");
  }
  Eigen::MatrixXd a(npts, npts);
  RealField e(state.Psi_u.grid);
  for (std::int64_t j = 0; j < npts; ++j) {
    e.v.assign(e.v.size(), 0.0);
    e.v[static_cast<size_t>(j)] = 1.0;
    a.col(j) = to_vector(apply_Lt(ws, state, e));
  }
  return a;
}

LinearSolveOutcome solve_linear(const SpectralWorkspace& ws,
                                const LinearState& state, const RealField& rhs,
                                double tol) {
  require_same_grid(rhs.grid, state.Psi_u.grid, "solve_linear");
  const GridSpec grid = rhs.grid;
  const std::int64_t npts = grid.points();
  const int n = grid.n;

  const double rhs_sup = sup_norm(rhs);
  const double compat = std::abs(integrate(rhs, state.vol_u) / state.V_u);
  if (compat > 1e-10 * std::max(1.0, rhs_sup)) {
    std::ostringstream os;
    os << "solve_linear: rhs not mean-compatible (weighted mean " << compat
       << " vs rhs sup " << rhs_sup << ")";
    throw std::invalid_argument(os.str());
  }

  LinearSolveOutcome out;
  out.v = RealField(grid);
  const double target = tol * std::max(1.0, rhs_sup);

  if (rhs_sup == 0.0) {
    out.ok = true;
    out.achieved = 0.0;
    out.message = "zero rhs";
    return out;
  }

  // Constant-augmented operator: nonsingular, agrees with apply_Lt on the
  // mean-zero complement, and pins the eta-mean of the solution to zero.
  auto apply_aug = [&](const VectorXd& x) -> VectorXd {
    const RealField xf = to_field(grid, x);
    VectorXd y = to_vector(apply_Lt(ws, state, xf));
    y.array() += x.mean();
    return y;
  };
  auto precondition = [&](const VectorXd& w) -> VectorXd {
    const double mean = w.mean();
    RealField wf = to_field(grid, w);
    for (double& v : wf.v) v -= mean;
    RealField pf = ws.inverse_laplacian_mean_zero(wf);
    VectorXd p = to_vector(pf) * double(n - 1);
    p.array() += mean;
    return p;
  };

  const VectorXd b = to_vector(rhs);
  VectorXd x = VectorXd::Zero(npts);

  const int restart = 50;
  const int max_total = 600;
  int total_iters = 0;
  double best_inf = std::numeric_limits<double>::infinity();
  VectorXd best_x = x;

  while (total_iters < max_total) {
    VectorXd r = b - apply_aug(x);
    const double beta = r.norm();
    const double rinf = r.lpNorm<Eigen::Infinity>();
    if (rinf < best_inf) {
      best_inf = rinf;
      best_x = x;
    }
    if (rinf <= target && beta <= target * std::sqrt(double(npts))) {
      // inf-norm met; accept.
      break;
    }
    if (beta == 0.0) break;

    // One FGMRES cycle (Arnoldi with modified Gram-Schmidt + Givens).
    std::vector<VectorXd> v_basis;
    std::vector<VectorXd> z_basis;
    v_basis.push_back(r / beta);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(restart + 1, restart);
    VectorXd g = VectorXd::Zero(restart + 1);
    g(0) = beta;
    std::vector<double> cs(restart, 0.0);
    std::vector<double> sn(restart, 0.0);
    int k = 0;
    for (; k < restart && total_iters < max_total; ++k, ++total_iters) {
      z_basis.push_back(precondition(v_basis[static_cast<size_t>(k)]));
      VectorXd w = apply_aug(z_basis.back());
      for (int i = 0; i <= k; ++i) {
        h(i, k) = w.dot(v_basis[static_cast<size_t>(i)]);
        w -= h(i, k) * v_basis[static_cast<size_t>(i)];
      }
      h(k + 1, k) = w.norm();
      if (h(k + 1, k) > 0.0) {
        v_basis.push_back(w / h(k + 1, k));
      }
      // apply stored rotations
      for (int i = 0; i < k; ++i) {
        const double t = cs[static_cast<size_t>(i)] * h(i, k) +
                         sn[static_cast<size_t>(i)] * h(i + 1, k);
        h(i + 1, k) = -sn[static_cast<size_t>(i)] * h(i, k) +
                      cs[static_cast<size_t>(i)] * h(i + 1, k);
        h(i, k) = t;
      }
      const double denom = std::hypot(h(k, k), h(k + 1, k));
      if (denom == 0.0) {
        out.history.push_back(std::abs(g(k)));
        ++k;
        break;
      }
      cs[static_cast<size_t>(k)] = h(k, k) / denom;
      sn[static_cast<size_t>(k)] = h(k + 1, k) / denom;
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g(k + 1) = -sn[static_cast<size_t>(k)] * g(k);
      g(k) = cs[static_cast<size_t>(k)] * g(k);
      out.history.push_back(std::abs(g(k + 1)));
      if (std::abs(g(k + 1)) <= 0.2 * target) {
        ++k;
        break;
      }
      if (h(k + 1, k) == 0.0 && v_basis.size() == static_cast<size_t>(k + 1)) {
        ++k;
        break;  // breakdown: exact solution in the current subspace
      }
    }
    // solve the triangular system for the k-dim correction
    if (k > 0) {
      VectorXd y(k);
      for (int i = k - 1; i >= 0; --i) {
        double s = g(i);
        for (int j = i + 1; j < k; ++j) s -= h(i, j) * y(j);
        y(i) = s / h(i, i);
      }
      for (int i = 0; i < k; ++i) x += y(i) * z_basis[static_cast<size_t>(i)];
    } else {
      break;  // no progress possible
    }
  }

  {
    VectorXd r = b - apply_aug(x);
    const double rinf = r.lpNorm<Eigen::Infinity>();
    if (rinf < best_inf) {
      best_inf = rinf;
      best_x = x;
    }
  }

  if (best_inf > target && npts <= 4096) {
    // Dense fallback: raw operator plus the rank-one constant augmentation.
    Eigen::MatrixXd a = assemble_dense(ws, state);
    a.array() += 1.0 / static_cast<double>(npts);
    const VectorXd xd = a.partialPivLu().solve(b);
    const RealField xf = to_field(grid, xd);
    const VectorXd rd = b - to_vector(apply_Lt(ws, state, xf));
    const double rinf = rd.lpNorm<Eigen::Infinity>();
    if (rinf < best_inf) {
      best_inf = rinf;
      best_x = xd;
      out.used_dense = true;
    }
  }

  out.iterations = total_iters;
  out.achieved = best_inf;
  out.ok = best_inf <= target;
  if (!out.ok) {
    std::ostringstream os;
    os << "solve_linear: stalled at residual " << best_inf << " (target "
       << target << ") after " << total_iters << " iterations";
    out.message = os.str();
  }
  RealField vf = to_field(grid, best_x);
  out.v = mean_zero(vf);
  return out;
}

}  // namespace fcy
