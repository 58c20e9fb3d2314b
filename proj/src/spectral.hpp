#pragma once

// Spectrally exact differentiation of the trigonometric interpolant on the
// periodic grid.  Odd-order derivative multipliers zero the Nyquist mode
// (keeps real fields real); pure second derivatives keep the full
// -(2 pi N/2)^2 Nyquist multiplier so the Laplacian kernel is exactly the
// constants.

#include <cstdint>
#include <memory>
#include <random>

#include "grid.hpp"

namespace fcy {

class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const GridSpec& grid);
  ~SpectralWorkspace();

  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const GridSpec& grid() const { return grid_; }

  // Normalized spectrum: u(x) = sum_k  uhat_k  exp(2 pi i k.x).
  ComplexField forward(const RealField& u) const;
  RealField inverse_to_real(const ComplexField& spectrum) const;

  // Per-point matrix u_{i jbar}; Hermitian exactly, real diagonal.
  MatrixField complex_hessian(const RealField& u) const;

  // trace of the complex Hessian (eta = identity).
  RealField laplacian(const RealField& u) const;

  // Solves laplacian(v) = r on the mean-zero modes; the k = 0 mode of r is
  // discarded and v has zero plain mean.
  RealField inverse_laplacian_mean_zero(const RealField& r) const;

  // sum of squared spectral magnitudes; equals integrate(u*u) (Parseval).
  double spectral_square_sum(const RealField& u) const;

 private:
  struct Impl;
  GridSpec grid_;
  std::unique_ptr<Impl> impl_;
};

// Band-limited real field: a few random cosine modes with |k|_inf <= kmax,
// scaled so the grid sup-norm equals target_sup (zero field if target is 0).
RealField random_bandlimited(const GridSpec& grid, std::uint64_t seed,
                             int kmax, double target_sup);

}  // namespace fcy
