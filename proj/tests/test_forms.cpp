#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "forms.hpp"

using namespace fcy;

namespace {

double rel_gap(const MatC& a, const MatC& b) {
  const double scale = std::max(1e-300, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

TEST_CASE("sign function") {
  CHECK(forms::sign_pq(1, 2, 3) == 1);
  CHECK(forms::sign_pq(2, 1, 3) == -1);
  CHECK(forms::sign_pq(3, 3, 3) == 1);
  CHECK(forms::sign_pq(1, 1, 2) == 1);
  CHECK_THROWS_AS(forms::sign_pq(0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(forms::sign_pq(1, 3, 2), std::invalid_argument);
}

TEST_CASE("power_n1 on closed forms") {
  CHECK(rel_gap(forms::power_n1(MatC::Identity(2, 2)), MatC::Identity(2, 2)) ==
        0.0);

  MatC g = MatC::Zero(2, 2);
  g.diagonal() << 2.0, 3.0;
  MatC expected = MatC::Zero(2, 2);
  expected.diagonal() << 3.0, 2.0;
  CHECK(rel_gap(forms::power_n1(g), expected) < 1e-14);

  MatC g3 = MatC::Zero(3, 3);
  g3.diagonal() << 1.0, 2.0, 4.0;
  MatC expected3 = MatC::Zero(3, 3);
  expected3.diagonal() << 8.0, 4.0, 2.0;
  CHECK(rel_gap(forms::power_n1(g3), expected3) < 1e-14);
}

TEST_CASE("power_n1 rejects non-positive input") {
  MatC g = MatC::Zero(2, 2);
  g.diagonal() << 1.0, -1.0;
  CHECK_THROWS_AS(forms::power_n1(g), std::domain_error);
  CHECK_THROWS_AS(forms::root_n1(g), std::domain_error);
}

TEST_CASE("root_n1 inverts power_n1") {
  CHECK(rel_gap(forms::root_n1(MatC::Identity(2, 2)), MatC::Identity(2, 2)) ==
        0.0);

  MatC psi = MatC::Zero(2, 2);
  psi.diagonal() << 3.0, 2.0;
  MatC expected = MatC::Zero(2, 2);
  expected.diagonal() << 2.0, 3.0;
  CHECK(rel_gap(forms::root_n1(psi), expected) < 1e-14);
}

TEST_CASE("round trip and determinant law over random positive matrices") {
  std::mt19937_64 rng(20240201);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 200; ++i) {
      const MatC g = checks::random_positive_hermitian(n, rng, 0.1, 10.0);
      const N1Matrix psi = forms::power_n1(g);
      CHECK(rel_gap(forms::root_n1(psi), g) < 1e-12);
      const double expected = std::pow(g.determinant().real(), n - 1);
      CHECK(forms::det_n1(psi) ==
            doctest::Approx(expected).epsilon(1e-12));
      // positivity preservation
      CHECK(forms::min_eigenvalue(psi) > 0.0);
    }
  }
}

TEST_CASE("det_n1 examples") {
  MatC psi = MatC::Zero(2, 2);
  psi.diagonal() << 3.0, 2.0;
  CHECK(forms::det_n1(psi) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(forms::det_n1(MatC::Identity(3, 3)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  MatC g3 = MatC::Zero(3, 3);
  g3.diagonal() << 1.0, 2.0, 4.0;
  CHECK(forms::det_n1(forms::power_n1(g3)) ==
        doctest::Approx(64.0).epsilon(1e-13));
}

TEST_CASE("contract_hessian diagonal averages and index transposition") {
  MatC h = MatC::Zero(3, 3);
  h.diagonal() << 1.0, 2.0, 3.0;
  const N1Matrix theta = forms::contract_hessian(h);
  CHECK(theta(0, 0).real() == doctest::Approx(2.5));
  CHECK(theta(1, 1).real() == doctest::Approx(2.0));
  CHECK(theta(2, 2).real() == doctest::Approx(1.5));

  // n=2 off-diagonal: value frozen from the wedge oracle (note the minus;
  // see test_oracle for the independent expansion).
  const Cplx a(0.7, 0.3);
  MatC h2(2, 2);
  h2 << Cplx(0, 0), a, std::conj(a), Cplx(0, 0);
  const N1Matrix t2 = forms::contract_hessian(h2);
  CHECK(std::abs(t2(0, 0)) == 0.0);
  CHECK(std::abs(t2(1, 1)) == 0.0);
  CHECK(std::abs(t2(0, 1) - (-std::conj(a))) < 1e-15);
  CHECK(std::abs(t2(1, 0) - (-a)) < 1e-15);

  CHECK(forms::contract_hessian(MatC::Zero(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("contract_hessian is linear and Hermitian-preserving") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 50; ++i) {
      const MatC h1 = checks::random_hermitian(n, rng);
      const MatC h2 = checks::random_hermitian(n, rng);
      const double a = coef(rng);
      const double b = coef(rng);
      const MatC lhs = forms::contract_hessian(a * h1 + b * h2);
      const MatC rhs = a * forms::contract_hessian(h1) +
                       b * forms::contract_hessian(h2);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(forms::hermitian_defect(forms::contract_hessian(h1)) < 1e-15);
    }
  }
}

TEST_CASE("trace identity: trace of contraction equals trace of Hessian") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 50; ++i) {
      const MatC h = checks::random_hermitian(n, rng);
      CHECK(forms::trace_n1(forms::contract_hessian(h)) ==
            doctest::Approx(h.trace().real()).epsilon(1e-13));
    }
  }
}

TEST_CASE("trace_n1 examples") {
  CHECK(forms::trace_n1(MatC::Identity(3, 3)) == doctest::Approx(3.0));
  MatC psi = MatC::Zero(2, 2);
  psi.diagonal() << 3.0, 2.0;
  CHECK(forms::trace_n1(psi) == doctest::Approx(5.0));
}

TEST_CASE("min_eigenvalue examples") {
  CHECK(forms::min_eigenvalue(MatC::Identity(2, 2)) == doctest::Approx(1.0));
  MatC d = MatC::Zero(2, 2);
  d.diagonal() << 3.0, 2.0;
  CHECK(forms::min_eigenvalue(d) == doctest::Approx(2.0));
  MatC m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  CHECK(forms::min_eigenvalue(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dimension guard") {
  CHECK_THROWS_AS(forms::power_n1(MatC::Identity(5, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(forms::contract_hessian(MatC::Identity(1, 1)),
                  std::invalid_argument);
}
