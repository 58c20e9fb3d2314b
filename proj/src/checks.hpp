#pragma once

// Independent verification: paper-level inequalities, solve cross-checks,
// and the self-test driver used by the CLI.  Negative controls are part of
// the contract here: each check comes with an input that must fail it.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "continuity.hpp"
#include "oracle.hpp"

namespace fcy {
namespace checks {

// --- random inputs (deterministic per seed) ---

MatC random_hermitian(int n, std::mt19937_64& rng);
// Random unitary conjugation of a diagonal with eigenvalues in [lo, hi].
MatC random_positive_hermitian(int n, std::mt19937_64& rng, double lo,
                               double hi);
Eigen::MatrixXd random_symmetric(int dim, std::mt19937_64& rng);

// --- pointwise inequalities ---

struct InequalityResult {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

Eigen::MatrixXd clip_psd(const Eigen::MatrixXd& w);

// Complex Hessian from a real one over the interleaved (x1,y1,...,xn,yn)
// coordinates: w_{i jbar} = (w_{xi xj} + w_{yi yj})/4
//                          + i (w_{xi yj} - w_{xj yi})/4.
MatC complex_hessian_from_real(const Eigen::MatrixXd& w);

// det(D^2 w) <= 8^n |det w_{i jbar}|^2; evaluate applies no clipping (used
// by the negative control), check symmetrizes and clips first.
InequalityResult evaluate_det_inequality(const Eigen::MatrixXd& w);
InequalityResult check_det_inequality(const Eigen::MatrixXd& w);

// det(a) det(-h) <= ( -sum_{ij} a_ij h_ij / n )^n for positive Hermitian a
// and negative semidefinite h (entrywise unconjugated pairing).
InequalityResult evaluate_amgm(const MatC& a, const MatC& h);

// --- solve-level checks ---

struct CheckReport {
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// sup|u1 - u2| after common mean-zero gauge; pass iff <= 1e-8.
CheckReport check_uniqueness(const SolveResult& r1, const SolveResult& r2);

// constant within [-sup f - slack, -inf f + slack].
CheckReport check_max_principle(const SolveResult& r, const RealField& f);

struct EquivalenceReport {
  bool pass = false;
  double psi_gap = 0.0;            // max entrywise |Psi_u - Psi'_u'|
  double compatibility_gap = 0.0;  // relative defect of int e^{f_phi} vol_phi
  double tolerance = 1e-7;
  SolveResult base_solve;
  SolveResult shifted_solve;
  std::string message;
};

// Solves the problem twice: from the flat base with data f, and from the
// potential-shifted base with the transported data
//   f_phi = f + log(vol0 / vol_phi) + log(V_phi / V),
// then compares the final Psi_u fields pointwise.
EquivalenceReport check_remark_equivalence(const SpectralWorkspace& ws,
                                           const Problem& prob,
                                           const RealField& psi, double scale);

// --- self test ---

struct SelfTestLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfTestReport {
  bool pass = true;
  std::vector<SelfTestLine> lines;

  void add(const std::string& name, bool ok, const std::string& detail);
};

// Forms identities, oracle agreement, inequality audits (with negative
// controls), linearization finite-difference check, kernel/range checks.
SelfTestReport run_selftest(std::uint64_t seed);

}  // namespace checks
}  // namespace fcy
