#include <doctest.h>

#include <cmath>
#include <numbers>

#include "config.hpp"
#include "linearized.hpp"

using namespace fcy;

namespace {

constexpr double kPi = std::numbers::pi;

struct Setup {
  GridSpec grid;
  SpectralWorkspace ws;
  Problem prob;
  BaseState base;

  explicit Setup(int n = 2, int N = 8) : grid{n, N}, ws{grid} {
    prob.grid = grid;
    prob.g0 = MatC::Identity(n, n);
    prob.f = RealField(grid);
    base = make_base(ws, prob);
  }

  LinearState state_at(const RealField& u) const {
    return make_linear_state(assemble_psi_u(ws, base.Psi0, u));
  }
};

double sup_diff(const RealField& a, const RealField& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) {
    worst = std::max(worst, std::abs(a.v[i] - b.v[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("linear state satisfies power_n1(g_u) = Psi_u") {
  Setup s;
  const RealField u = random_bandlimited(s.grid, 2, 2, 0.01);
  const LinearState st = s.state_at(u);
  double worst = 0.0;
  for (std::int64_t p = 0; p < s.grid.points(); p += 37) {
    worst = std::max(worst, (forms::power_n1(MatC(st.g_u.at(p))) -
                             MatC(st.Psi_u.at(p)))
                                .cwiseAbs()
                                .maxCoeff());
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("constants are in the kernel") {
  Setup s;
  const RealField u = random_bandlimited(s.grid, 5, 2, 0.01);
  const LinearState st = s.state_at(u);
  RealField ones(s.grid);
  for (double& x : ones.v) x = 1.0;
  CHECK(sup_norm(apply_Lt(s.ws, st, ones)) < 1e-13);
}

TEST_CASE("range integrates to zero against the deformed volume") {
  Setup s;
  const RealField u = random_bandlimited(s.grid, 6, 2, 0.01);
  const LinearState st = s.state_at(u);
  for (int i = 0; i < 20; ++i) {
    const RealField v = random_bandlimited(s.grid, 100 + i, 2, 1.0);
    const RealField lv = apply_Lt(s.ws, st, v);
    CHECK(std::abs(integrate(lv, st.vol_u)) <= 1e-11 * sup_norm(v));
  }
}

TEST_CASE("flat-base reduction to the Laplacian") {
  for (int n : {2, 3}) {
    Setup s(n, n == 2 ? 8 : 6);
    const LinearState st = s.state_at(RealField(s.grid));
    const RealField v = eval_expression("cos_x1", 1.0, s.grid, 0);
    const RealField lv = apply_Lt(s.ws, st, v);
    double worst = 0.0;
    for (std::int64_t p = 0; p < s.grid.points(); ++p) {
      const double expected = -kPi * kPi * v[p] / (n - 1);
      worst = std::max(worst, std::abs(lv[p] - expected));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("finite-difference consistency of the directional derivative") {
  Setup s;
  std::mt19937_64 seed_gen(2024);
  for (int trial = 0; trial < 5; ++trial) {
    RealField u = random_bandlimited(s.grid, seed_gen(), 2, 0.002);
    const RealField v = random_bandlimited(s.grid, seed_gen(), 2, 1.0);
    const LinearState st = s.state_at(u);
    const RealField lv = apply_Lt(s.ws, st, v);
    const RealField r0 = residual(s.ws, s.base, s.prob.f, u, 1.0);
    std::vector<double> errs;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      RealField up = u;
      for (size_t i = 0; i < up.v.size(); ++i) up.v[i] += eps * v.v[i];
      const RealField r1 = residual(s.ws, s.base, s.prob.f, up, 1.0);
      double err = 0.0;
      for (size_t i = 0; i < r0.v.size(); ++i) {
        err = std::max(err, std::abs((r1.v[i] - r0.v[i]) / eps - lv.v[i]));
      }
      errs.push_back(err);
    }
    for (size_t i = 1; i < errs.size(); ++i) {
      const double ratio = errs[i - 1] / errs[i];
      CHECK(ratio >= 8.0);
      CHECK(ratio <= 12.0);
    }
  }
}

TEST_CASE("solve_linear basics") {
  Setup s;
  const RealField u = random_bandlimited(s.grid, 21, 2, 0.01);
  const LinearState st = s.state_at(u);

  SUBCASE("zero rhs gives the zero solution") {
    const LinearSolveOutcome out =
        solve_linear(s.ws, st, RealField(s.grid), 1e-12);
    CHECK(out.ok);
    CHECK(sup_norm(out.v) == 0.0);
  }

  SUBCASE("rhs with a volume-weighted mean is rejected") {
    RealField ones(s.grid);
    for (double& x : ones.v) x = 1.0;
    CHECK_THROWS_AS(solve_linear(s.ws, st, ones, 1e-10),
                    std::invalid_argument);
  }

  SUBCASE("recovers a known preimage") {
    const RealField w = mean_zero(random_bandlimited(s.grid, 33, 2, 1.0));
    const RealField rhs = apply_Lt(s.ws, st, w);
    const LinearSolveOutcome out = solve_linear(s.ws, st, rhs, 1e-12);
    CHECK(out.ok);
    CHECK(out.achieved <= 1e-12 * std::max(1.0, sup_norm(rhs)));
    CHECK(sup_diff(out.v, w) < 1e-9);
    CHECK(std::abs(integrate(out.v)) < 1e-13);
  }
}

TEST_CASE("explicit Fourier solution at the flat base") {
  for (int n : {2, 3}) {
    Setup s(n, n == 2 ? 8 : 6);
    const LinearState st = s.state_at(RealField(s.grid));
    const double c = 0.8;
    const RealField rhs = eval_expression("cos_x1", c, s.grid, 0);
    const LinearSolveOutcome out = solve_linear(s.ws, st, rhs, 1e-12);
    REQUIRE(out.ok);
    double worst = 0.0;
    for (std::int64_t p = 0; p < s.grid.points(); ++p) {
      const double expected =
          -(n - 1) * c *
          std::cos(2.0 * kPi * axis_position(s.grid, p, 0)) / (kPi * kPi);
      worst = std::max(worst, std::abs(out.v[p] - expected));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("dense assembly matches the operator and has a 1-dim kernel") {
  Setup s(2, 4);  // 256 points
  const RealField u = random_bandlimited(s.grid, 77, 1, 0.002);
  const LinearState st = s.state_at(u);
  const Eigen::MatrixXd a = assemble_dense(s.ws, st);

  // column consistency on a random probe
  const RealField v = random_bandlimited(s.grid, 78, 1, 1.0);
  const Eigen::VectorXd vv =
      Eigen::Map<const Eigen::VectorXd>(v.v.data(), v.size());
  const Eigen::VectorXd av = a * vv;
  const RealField lv = apply_Lt(s.ws, st, v);
  double worst = 0.0;
  for (std::int64_t p = 0; p < s.grid.points(); ++p) {
    worst = std::max(worst, std::abs(av(p) - lv[p]));
  }
  CHECK(worst < 1e-11);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd sv = svd.singularValues();
  int tiny = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) < 1e-8) ++tiny;
  }
  CHECK(tiny == 1);
  CHECK(sv(sv.size() - 2) > 1e-3);
}

TEST_CASE("iterative and dense routes agree at a distorted state") {
  Setup s(2, 4);
  const RealField u = random_bandlimited(s.grid, 90, 1, 0.004);
  const LinearState st = s.state_at(u);
  const RealField w = mean_zero(random_bandlimited(s.grid, 91, 1, 1.0));
  const RealField rhs = apply_Lt(s.ws, st, w);

  const LinearSolveOutcome gm = solve_linear(s.ws, st, rhs, 1e-12);
  REQUIRE(gm.ok);

  Eigen::MatrixXd a = assemble_dense(s.ws, st);
  a.array() += 1.0 / static_cast<double>(s.grid.points());
  const Eigen::VectorXd bb =
      Eigen::Map<const Eigen::VectorXd>(rhs.v.data(), rhs.size());
  const Eigen::VectorXd xd = a.partialPivLu().solve(bb);
  double worst = 0.0;
  for (std::int64_t p = 0; p < s.grid.points(); ++p) {
    worst = std::max(worst, std::abs(gm.v[p] - xd(p)));
  }
  CHECK(worst < 1e-9);
}
