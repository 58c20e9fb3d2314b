#pragma once

// Literal exterior algebra on C^n over the monomial basis
// dz^{i1}^...^dz^{ip} ^ dzbar^{j1}^...^dzbar^{jq} with strictly increasing
// index tuples.  Signs come from permutation parity only; all numeric
// prefactors ((sqrt(-1)/2)^k, factorials) live in the coefficients.
// This is the independent oracle behind the coefficient conventions in
// forms.hpp; it is deliberately combinatorial and factorial in n, so n <= 4.

#include <map>
#include <utility>
#include <vector>

#include "forms.hpp"

namespace fcy {
namespace oracle {

class MultiIndexForm {
 public:
  // (I, J): strictly increasing 1-based index tuples.
  using Key = std::pair<std::vector<int>, std::vector<int>>;

  MultiIndexForm(int n, int p, int q);

  static MultiIndexForm scalar(int n, Cplx value);
  // Single basis 1-form dz^i (holomorphic = true) or dzbar^i.
  static MultiIndexForm basis_one_form(int n, int index, bool holomorphic);

  int n() const { return n_; }
  int degree_holo() const { return p_; }
  int degree_anti() const { return q_; }

  void add_term(std::vector<int> holo, std::vector<int> anti, Cplx coeff);
  Cplx coefficient(const std::vector<int>& holo,
                   const std::vector<int>& anti) const;
  const std::map<Key, Cplx>& terms() const { return terms_; }

  MultiIndexForm& operator+=(const MultiIndexForm& other);
  MultiIndexForm& operator*=(Cplx scale);

  double max_abs_coefficient() const;

 private:
  int n_;
  int p_;
  int q_;
  std::map<Key, Cplx> terms_;
};

MultiIndexForm wedge(const MultiIndexForm& a, const MultiIndexForm& b);
MultiIndexForm wedge_power(const MultiIndexForm& a, int k);

// (sqrt(-1)/2) * sum_{i,j} m(i,j) dz^i ^ dzbar^j.  Houses both metrics and
// (sqrt(-1)/2) ddbar(v) with m the complex Hessian.
MultiIndexForm one_one_form(const MatC& m);

// The (n-1,n-1)-form with bare coefficient matrix theta under the deletion
// basis convention (prefactor (sqrt(-1)/2)^{n-1} (n-1)! and sign s(p,q)
// included).
MultiIndexForm n1_form(const MatC& theta);

// Inverse of n1_form: extract the bare coefficient matrix.
MatC n1_coefficients(const MultiIndexForm& form);

// Ratio of an (n,n)-form to eta^n for eta = identity.
Cplx top_ratio(const MultiIndexForm& form);

}  // namespace oracle
}  // namespace fcy
