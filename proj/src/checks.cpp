#include "checks.hpp"

#include <cmath>
#include <sstream>

namespace fcy {
namespace checks {

namespace {

std::string format_pair(double lhs, double rhs) {
  std::ostringstream os;
  os << "lhs " << lhs << " vs rhs " << rhs;
  return os.str();
}

}  // namespace

MatC random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  MatC a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Cplx(dist(rng), dist(rng));
  }
  return MatC(0.5 * (a + a.adjoint()));
}

MatC random_positive_hermitian(int n, std::mt19937_64& rng, double lo,
                               double hi) {
  std::uniform_real_distribution<double> eig(lo, hi);
  std::normal_distribution<double> dist(0.0, 1.0);
  MatC a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Cplx(dist(rng), dist(rng));
  }
  const Eigen::HouseholderQR<MatC> qr(a);
  const MatC q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = eig(rng);
  return MatC(q * d.asDiagonal() * q.adjoint());
}

Eigen::MatrixXd random_symmetric(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = dist(rng);
  }
  return 0.5 * (a + a.transpose());
}

Eigen::MatrixXd clip_psd(const Eigen::MatrixXd& w) {
  const Eigen::MatrixXd sym = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  Eigen::VectorXd d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) d(i) = std::max(d(i), 0.0);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

MatC complex_hessian_from_real(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows()) / 2;
  if (w.rows() != 2 * n || w.cols() != 2 * n) {
    throw std::invalid_argument("complex_hessian_from_real: need 2n x 2n");
  }
  MatC h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int xi = 2 * i;
      const int yi = 2 * i + 1;
      const int xj = 2 * j;
      const int yj = 2 * j + 1;
      h(i, j) = Cplx(0.25 * (w(xi, xj) + w(yi, yj)),
                     0.25 * (w(xi, yj) - w(xj, yi)));
    }
  }
  return h;
}

InequalityResult evaluate_det_inequality(const Eigen::MatrixXd& w) {
  InequalityResult res;
  const int n = static_cast<int>(w.rows()) / 2;
  res.lhs = w.determinant();
  const MatC h = complex_hessian_from_real(w);
  res.rhs = std::pow(8.0, n) * std::norm(h.determinant());
  res.pass = res.lhs <= res.rhs + 1e-10;
  return res;
}

InequalityResult check_det_inequality(const Eigen::MatrixXd& w) {
  return evaluate_det_inequality(clip_psd(w));
}

InequalityResult evaluate_amgm(const MatC& a, const MatC& h) {
  InequalityResult res;
  const int n = static_cast<int>(a.rows());
  res.lhs = a.determinant().real() * (-h).determinant().real();
  const Cplx pairing = (a.array() * h.array()).sum();
  res.rhs = std::pow(-pairing.real() / n, n);
  res.pass = res.lhs <= res.rhs + 1e-12;
  return res;
}

CheckReport check_uniqueness(const SolveResult& r1, const SolveResult& r2) {
  CheckReport rep;
  rep.threshold = 1e-8;
  require_same_grid(r1.u.grid, r2.u.grid, "check_uniqueness");
  const RealField a = mean_zero(r1.u);
  const RealField b = mean_zero(r2.u);
  double sup = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) {
    sup = std::max(sup, std::abs(a.v[i] - b.v[i]));
  }
  rep.value = sup;
  rep.pass = sup <= rep.threshold;
  std::ostringstream os;
  os << "gauge-aligned sup difference " << sup;
  rep.detail = os.str();
  return rep;
}

CheckReport check_max_principle(const SolveResult& r, const RealField& f) {
  CheckReport rep;
  rep.threshold = 1e-8;
  const double lo = -field_max(f) - rep.threshold;
  const double hi = -field_min(f) + rep.threshold;
  rep.value = r.constant;
  rep.pass = r.constant >= lo && r.constant <= hi;
  std::ostringstream os;
  os << "constant " << r.constant << " in [" << lo << ", " << hi << "]";
  rep.detail = os.str();
  return rep;
}

EquivalenceReport check_remark_equivalence(const SpectralWorkspace& ws,
                                           const Problem& prob,
                                           const RealField& psi,
                                           double scale) {
  EquivalenceReport rep;

  const BaseState base = make_base(ws, prob);
  Problem base_prob = prob;
  base_prob.f = normalize_f(prob.f, base);
  rep.base_solve = continuity_solve(ws, base, base_prob);
  if (!rep.base_solve.converged) {
    rep.message = "base solve failed: " + rep.base_solve.message;
    return rep;
  }

  // Shifted base and the transported data of the base-change construction.
  Problem shifted_prob = prob;
  shifted_prob.psi = psi;
  shifted_prob.psi_scale = scale;
  const BaseState shifted = make_base(ws, shifted_prob);
  RealField f_phi(prob.grid);
  for (size_t i = 0; i < f_phi.v.size(); ++i) {
    f_phi.v[i] = base_prob.f.v[i] +
                 std::log(base.vol0.v[i] / shifted.vol0.v[i]) +
                 std::log(shifted.V / base.V);
  }
  // Compatibility of the transported data against the shifted volume.
  RealField ef(prob.grid);
  for (size_t i = 0; i < ef.v.size(); ++i) ef.v[i] = std::exp(f_phi.v[i]);
  rep.compatibility_gap =
      std::abs(integrate(ef, shifted.vol0) - shifted.V) / shifted.V;

  shifted_prob.f = f_phi;
  rep.shifted_solve = continuity_solve(ws, shifted, shifted_prob);
  if (!rep.shifted_solve.converged) {
    rep.message = "shifted solve failed: " + rep.shifted_solve.message;
    return rep;
  }

  const MatrixField psi_u1 =
      assemble_psi_u(ws, base.Psi0, rep.base_solve.u);
  const MatrixField psi_u2 =
      assemble_psi_u(ws, shifted.Psi0, rep.shifted_solve.u);
  double gap = 0.0;
  for (size_t i = 0; i < psi_u1.data.size(); ++i) {
    gap = std::max(gap, std::abs(psi_u1.data[i] - psi_u2.data[i]));
  }
  rep.psi_gap = gap;
  rep.pass = gap <= rep.tolerance;
  std::ostringstream os;
  os << "Psi_u field gap " << gap << " (tolerance " << rep.tolerance
     << "), f_phi compatibility defect " << rep.compatibility_gap;
  rep.message = os.str();
  return rep;
}

void SelfTestReport::add(const std::string& name, bool ok,
                         const std::string& detail) {
  lines.push_back({name, ok, detail});
  pass = pass && ok;
}

namespace {

void selftest_forms(SelfTestReport* rep, std::mt19937_64& rng) {
  double worst_round = 0.0;
  double worst_det = 0.0;
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 200; ++i) {
      const MatC g = random_positive_hermitian(n, rng, 0.1, 10.0);
      const MatC back = forms::root_n1(forms::power_n1(g));
      const double scale = g.cwiseAbs().maxCoeff();
      worst_round = std::max(
          worst_round, (back - g).cwiseAbs().maxCoeff() / scale);
      const double expected = std::pow(g.determinant().real(), n - 1);
      worst_det = std::max(worst_det,
                           std::abs(forms::det_n1(forms::power_n1(g)) -
                                    expected) /
                               std::abs(expected));
    }
  }
  std::ostringstream os;
  os << "round-trip rel err " << worst_round << ", det-law rel err "
     << worst_det;
  rep->add("forms_identities", worst_round <= 1e-12 && worst_det <= 1e-12,
           os.str());
}

void selftest_oracle(SelfTestReport* rep, std::mt19937_64& rng) {
  double worst_power = 0.0;
  double worst_contract = 0.0;
  double worst_pairing = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const MatC eta = MatC::Identity(n, n);
    for (int i = 0; i < 100; ++i) {
      const MatC g = random_positive_hermitian(n, rng, 0.1, 10.0);
      const MatC psi_oracle = oracle::n1_coefficients(
          oracle::wedge_power(oracle::one_one_form(g), n - 1));
      worst_power = std::max(
          worst_power,
          (psi_oracle - forms::power_n1(g)).cwiseAbs().maxCoeff());

      const MatC h = random_hermitian(n, rng);
      const MatC theta_oracle = oracle::n1_coefficients(oracle::wedge(
          oracle::one_one_form(h),
          oracle::wedge_power(oracle::one_one_form(eta), n - 2)));
      worst_contract = std::max(
          worst_contract,
          (theta_oracle - forms::contract_hessian(h)).cwiseAbs().maxCoeff());

      const MatC theta = random_hermitian(n, rng);
      const Cplx ratio = oracle::top_ratio(
          oracle::wedge(oracle::n1_form(theta), oracle::one_one_form(g)));
      const Cplx direct = (theta.array() * g.array()).sum() / double(n);
      worst_pairing = std::max(worst_pairing, std::abs(ratio - direct));
    }
  }
  std::ostringstream os;
  os << "power_n1 gap " << worst_power << ", contract gap " << worst_contract
     << ", wedge pairing gap " << worst_pairing;
  rep->add("oracle_agreement",
           worst_power <= 1e-13 && worst_contract <= 1e-13 &&
               worst_pairing <= 1e-12,
           os.str());
}

void selftest_inequalities(SelfTestReport* rep, std::mt19937_64& rng) {
  bool all = true;
  for (int n = 2; n <= 3; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const Eigen::MatrixXd w = random_symmetric(2 * n, rng);
      if (!check_det_inequality(w).pass) all = false;
      const MatC a = random_positive_hermitian(n, rng, 0.1, 10.0);
      MatC h = random_positive_hermitian(n, rng, 0.1, 10.0);
      h = -h;
      if (!evaluate_amgm(a, h).pass) all = false;
    }
  }
  // Negative controls: both evaluators must reject invalid inputs.
  Eigen::VectorXd d(4);
  d << 1.0, -1.0, 1.0, -1.0;
  const bool det_control =
      !evaluate_det_inequality(Eigen::MatrixXd(d.asDiagonal())).pass;
  MatC h_bad = MatC::Zero(3, 3);
  h_bad.diagonal() << 2.0, 1.0, 1.0;  // positive, not NSD
  const bool amgm_control = !evaluate_amgm(MatC::Identity(3, 3), h_bad).pass;
  std::ostringstream os;
  os << "audits " << (all ? "clean" : "violated") << ", negative controls "
     << (det_control && amgm_control ? "reject" : "MISSED");
  rep->add("inequality_audits", all && det_control && amgm_control, os.str());
}

void selftest_linearization(SelfTestReport* rep, std::mt19937_64& rng) {
  const GridSpec grid{2, 8};
  SpectralWorkspace ws(grid);
  Problem prob;
  prob.grid = grid;
  prob.g0 = MatC::Identity(2, 2);
  prob.f = RealField(grid);
  const BaseState base = make_base(ws, prob);

  bool ratios_ok = true;
  double worst_low = 100.0;
  double worst_high = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const RealField u =
        random_bandlimited(grid, rng(), 2, 0.002);
    const RealField v = random_bandlimited(grid, rng(), 2, 1.0);
    const MatrixField psi_u = assemble_psi_u(ws, base.Psi0, u);
    const LinearState state = make_linear_state(psi_u);
    const RealField lv = apply_Lt(ws, state, v);
    const RealField r0 = residual(ws, base, prob.f, u, 1.0);
    std::vector<double> errs;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      RealField up = u;
      for (size_t i = 0; i < up.v.size(); ++i) up.v[i] += eps * v.v[i];
      const RealField r1 = residual(ws, base, prob.f, up, 1.0);
      double err = 0.0;
      for (size_t i = 0; i < r0.v.size(); ++i) {
        err = std::max(err,
                       std::abs((r1.v[i] - r0.v[i]) / eps - lv.v[i]));
      }
      errs.push_back(err);
    }
    for (size_t i = 1; i < errs.size(); ++i) {
      const double ratio = errs[i - 1] / errs[i];
      worst_low = std::min(worst_low, ratio);
      worst_high = std::max(worst_high, ratio);
      if (ratio < 8.0 || ratio > 12.0) ratios_ok = false;
    }
  }
  std::ostringstream os;
  os << "first-order error ratios in [" << worst_low << ", " << worst_high
     << "]";
  rep->add("linearization_fd", ratios_ok, os.str());
}

void selftest_kernel(SelfTestReport* rep, std::mt19937_64& rng) {
  const GridSpec grid{2, 8};
  SpectralWorkspace ws(grid);
  Problem prob;
  prob.grid = grid;
  prob.g0 = MatC::Identity(2, 2);
  prob.f = RealField(grid);
  const BaseState base = make_base(ws, prob);
  const RealField u = random_bandlimited(grid, rng(), 2, 0.002);
  const LinearState state =
      make_linear_state(assemble_psi_u(ws, base.Psi0, u));

  RealField ones(grid);
  for (double& x : ones.v) x = 1.0;
  const double kernel_sup = sup_norm(apply_Lt(ws, state, ones));

  double worst_mean = 0.0;
  for (int i = 0; i < 20; ++i) {
    const RealField v = random_bandlimited(grid, rng(), 2, 1.0);
    const RealField lv = apply_Lt(ws, state, v);
    worst_mean =
        std::max(worst_mean, std::abs(integrate(lv, state.vol_u)) /
                                 std::max(1.0, sup_norm(v)));
  }
  std::ostringstream os;
  os << "L(1) sup " << kernel_sup << ", range-mean defect " << worst_mean;
  rep->add("kernel_range", kernel_sup <= 1e-12 && worst_mean <= 1e-11,
           os.str());
}

}  // namespace

SelfTestReport run_selftest(std::uint64_t seed) {
  SelfTestReport rep;
  std::mt19937_64 rng(seed ^ 0x5eed5eedULL);
  selftest_forms(&rep, rng);
  selftest_oracle(&rep, rng);
  selftest_inequalities(&rep, rng);
  selftest_linearization(&rep, rng);
  selftest_kernel(&rep, rng);
  return rep;
}

}  // namespace checks
}  // namespace fcy
