#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fcy {
namespace oracle {

namespace {

constexpr Cplx kHalfI{0.0, 0.5};  // sqrt(-1)/2

bool strictly_increasing(const std::vector<int>& v) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] >= v[i]) return false;
  }
  return true;
}

// Merge two strictly increasing tuples; returns false on a repeated index.
// sign collects (-1) per transposition needed to sort the concatenation.
bool merge_indices(const std::vector<int>& a, const std::vector<int>& b,
                   std::vector<int>* out, int* sign) {
  out->clear();
  out->reserve(a.size() + b.size());
  size_t ia = 0;
  size_t ib = 0;
  int s = 1;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] == b[ib]) return false;
    if (a[ia] < b[ib]) {
      out->push_back(a[ia++]);
    } else {
      // b[ib] jumps over the remaining elements of a.
      if ((a.size() - ia) % 2 == 1) s = -s;
      out->push_back(b[ib++]);
    }
  }
  while (ia < a.size()) out->push_back(a[ia++]);
  while (ib < b.size()) out->push_back(b[ib++]);
  *sign = s;
  return true;
}

int factorial(int k) {
  int r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Cplx half_i_pow(int k) {
  Cplx r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= kHalfI;
  return r;
}

// The paper's deletion basis: the interleaved volume string
// dz^1^dzbar^1^...^dz^n^dzbar^n with dz^p and dzbar^q removed.  Built by
// wedging 1-forms so parity bookkeeping stays inside the oracle.
MultiIndexForm deletion_basis(int n, int p, int q) {
  MultiIndexForm acc = MultiIndexForm::scalar(n, 1.0);
  for (int m = 1; m <= n; ++m) {
    if (m != p) acc = wedge(acc, MultiIndexForm::basis_one_form(n, m, true));
    if (m != q) acc = wedge(acc, MultiIndexForm::basis_one_form(n, m, false));
  }
  return acc;
}

}  // namespace

MultiIndexForm::MultiIndexForm(int n, int p, int q) : n_(n), p_(p), q_(q) {
  if (n < 1 || p < 0 || q < 0 || p > n || q > n) {
    throw std::invalid_argument("MultiIndexForm: bad degree");
  }
}

MultiIndexForm MultiIndexForm::scalar(int n, Cplx value) {
  MultiIndexForm f(n, 0, 0);
  f.add_term({}, {}, value);
  return f;
}

MultiIndexForm MultiIndexForm::basis_one_form(int n, int index,
                                              bool holomorphic) {
  MultiIndexForm f(n, holomorphic ? 1 : 0, holomorphic ? 0 : 1);
  if (index < 1 || index > n) {
    throw std::invalid_argument("basis_one_form: index out of range");
  }
  if (holomorphic) {
    f.add_term({index}, {}, 1.0);
  } else {
    f.add_term({}, {index}, 1.0);
  }
  return f;
}

void MultiIndexForm::add_term(std::vector<int> holo, std::vector<int> anti,
                              Cplx coeff) {
  if (static_cast<int>(holo.size()) != p_ ||
      static_cast<int>(anti.size()) != q_) {
    throw std::invalid_argument("add_term: degree mismatch");
  }
  if (!strictly_increasing(holo) || !strictly_increasing(anti)) {
    throw std::invalid_argument("add_term: indices must strictly increase");
  }
  terms_[{std::move(holo), std::move(anti)}] += coeff;
}

Cplx MultiIndexForm::coefficient(const std::vector<int>& holo,
                                 const std::vector<int>& anti) const {
  auto it = terms_.find({holo, anti});
  return it == terms_.end() ? Cplx{0.0, 0.0} : it->second;
}

MultiIndexForm& MultiIndexForm::operator+=(const MultiIndexForm& other) {
  if (other.n_ != n_ || other.p_ != p_ || other.q_ != q_) {
    throw std::invalid_argument("operator+=: form degrees differ");
  }
  for (const auto& [key, c] : other.terms_) terms_[key] += c;
  return *this;
}

MultiIndexForm& MultiIndexForm::operator*=(Cplx scale) {
  for (auto& [key, c] : terms_) c *= scale;
  return *this;
}

double MultiIndexForm::max_abs_coefficient() const {
  double r = 0.0;
  for (const auto& [key, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

MultiIndexForm wedge(const MultiIndexForm& a, const MultiIndexForm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge: mixed dimensions");
  const int n = a.n();
  const int p = a.degree_holo() + b.degree_holo();
  const int q = a.degree_anti() + b.degree_anti();
  if (p > n || q > n) throw std::invalid_argument("wedge: degree exceeds n");
  MultiIndexForm out(n, p, q);
  std::vector<int> holo;
  std::vector<int> anti;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int sign_holo = 1;
      int sign_anti = 1;
      if (!merge_indices(ka.first, kb.first, &holo, &sign_holo)) continue;
      if (!merge_indices(ka.second, kb.second, &anti, &sign_anti)) continue;
      // dz-block of b passes the dzbar-block of a.
      const int cross =
          (ka.second.size() * kb.first.size()) % 2 == 1 ? -1 : 1;
      const double sign = sign_holo * sign_anti * cross;
      out.add_term(holo, anti, ca * cb * sign);
    }
  }
  return out;
}

MultiIndexForm wedge_power(const MultiIndexForm& a, int k) {
  if (k < 0) throw std::invalid_argument("wedge_power: negative exponent");
  MultiIndexForm acc = MultiIndexForm::scalar(a.n(), 1.0);
  for (int i = 0; i < k; ++i) acc = wedge(acc, a);
  return acc;
}

MultiIndexForm one_one_form(const MatC& m) {
  const int n = static_cast<int>(m.rows());
  MultiIndexForm f(n, 1, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(i, j) != Cplx{0.0, 0.0}) {
        f.add_term({i + 1}, {j + 1}, kHalfI * m(i, j));
      }
    }
  }
  return f;
}

MultiIndexForm n1_form(const MatC& theta) {
  const int n = static_cast<int>(theta.rows());
  MultiIndexForm f(n, n - 1, n - 1);
  const Cplx prefactor = half_i_pow(n - 1) * double(factorial(n - 1));
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      if (theta(p - 1, q - 1) == Cplx{0.0, 0.0}) continue;
      MultiIndexForm basis = deletion_basis(n, p, q);
      basis *= prefactor * double(forms::sign_pq(p, q, n)) *
               theta(p - 1, q - 1);
      f += basis;
    }
  }
  return f;
}

MatC n1_coefficients(const MultiIndexForm& form) {
  const int n = form.n();
  if (form.degree_holo() != n - 1 || form.degree_anti() != n - 1) {
    throw std::invalid_argument("n1_coefficients: not an (n-1,n-1)-form");
  }
  const Cplx prefactor = half_i_pow(n - 1) * double(factorial(n - 1));
  MatC theta = MatC::Zero(n, n);
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      const MultiIndexForm basis = deletion_basis(n, p, q);
      // A deletion basis is a single monomial; read off its key and sign.
      const auto& [key, sign] = *basis.terms().begin();
      const Cplx raw = form.coefficient(key.first, key.second);
      theta(p - 1, q - 1) =
          raw / (prefactor * double(forms::sign_pq(p, q, n)) * sign);
    }
  }
  return theta;
}

Cplx top_ratio(const MultiIndexForm& form) {
  const int n = form.n();
  if (form.degree_holo() != n || form.degree_anti() != n) {
    throw std::invalid_argument("top_ratio: not an (n,n)-form");
  }
  const MultiIndexForm eta_n =
      wedge_power(one_one_form(MatC::Identity(n, n)), n);
  const auto& [key, denom] = *eta_n.terms().begin();
  return form.coefficient(key.first, key.second) / denom;
}

}  // namespace oracle
}  // namespace fcy
