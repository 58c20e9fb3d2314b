#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fcy {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed frequency of a grid coordinate; Nyquist stays at +N/2.
inline int freq_full(int c, int N) { return c <= N / 2 ? c : c - N; }
// Frequency for odd-order derivative factors; Nyquist zeroed.
inline int freq_odd(int c, int N) { return c == N / 2 ? 0 : freq_full(c, N); }

struct Odometer {
  explicit Odometer(const GridSpec& g) : N(g.N), coord(g.axes(), 0) {}
  int N;
  std::vector<int> coord;

  void advance() {
    for (int a = static_cast<int>(coord.size()) - 1; a >= 0; --a) {
      if (++coord[a] < N) return;
      coord[a] = 0;
    }
  }
};

}  // namespace

struct SpectralWorkspace::Impl {
  explicit Impl(const GridSpec& g) {
    const std::int64_t npts = g.points();
    in = fftw_alloc_complex(static_cast<size_t>(npts));
    out = fftw_alloc_complex(static_cast<size_t>(npts));
    std::vector<int> dims(static_cast<size_t>(g.axes()), g.N);
    fwd = fftw_plan_dft(g.axes(), dims.data(), in, out, FFTW_FORWARD,
                        FFTW_ESTIMATE);
    bwd = fftw_plan_dft(g.axes(), dims.data(), in, out, FFTW_BACKWARD,
                        FFTW_ESTIMATE);
    if (fwd == nullptr || bwd == nullptr) {
      throw std::runtime_error("SpectralWorkspace: FFT plan creation failed");
    }
  }

  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(in);
    fftw_free(out);
  }

  fftw_complex* in;
  fftw_complex* out;
  fftw_plan fwd;
  fftw_plan bwd;
};

SpectralWorkspace::SpectralWorkspace(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  impl_ = std::make_unique<Impl>(grid_);
}

SpectralWorkspace::~SpectralWorkspace() = default;

ComplexField SpectralWorkspace::forward(const RealField& u) const {
  require_same_grid(u.grid, grid_, "forward");
  const std::int64_t npts = grid_.points();
  for (std::int64_t i = 0; i < npts; ++i) {
    impl_->in[i][0] = u.v[static_cast<size_t>(i)];
    impl_->in[i][1] = 0.0;
  }
  fftw_execute_dft(impl_->fwd, impl_->in, impl_->out);
  ComplexField spec(grid_);
  const double scale = 1.0 / static_cast<double>(npts);
  for (std::int64_t i = 0; i < npts; ++i) {
    spec.v[static_cast<size_t>(i)] =
        Cplx(impl_->out[i][0], impl_->out[i][1]) * scale;
  }
  return spec;
}

RealField SpectralWorkspace::inverse_to_real(const ComplexField& spec) const {
  require_same_grid(spec.grid, grid_, "inverse_to_real");
  const std::int64_t npts = grid_.points();
  for (std::int64_t i = 0; i < npts; ++i) {
    impl_->in[i][0] = spec.v[static_cast<size_t>(i)].real();
    impl_->in[i][1] = spec.v[static_cast<size_t>(i)].imag();
  }
  fftw_execute_dft(impl_->bwd, impl_->in, impl_->out);
  RealField u(grid_);
  for (std::int64_t i = 0; i < npts; ++i) {
    u.v[static_cast<size_t>(i)] = impl_->out[i][0];
  }
  return u;
}

MatrixField SpectralWorkspace::complex_hessian(const RealField& u) const {
  require_same_grid(u.grid, grid_, "complex_hessian");
  const std::int64_t npts = grid_.points();
  const int n = grid_.n;
  const int N = grid_.N;
  const ComplexField spec = forward(u);

  MatrixField hess(grid_);
  std::vector<Cplx> mult(static_cast<size_t>(npts));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Odometer odo(grid_);
      for (std::int64_t p = 0; p < npts; ++p, odo.advance()) {
        const auto& c = odo.coord;
        if (i == j) {
          const int kx = freq_full(c[2 * i], N);
          const int ky = freq_full(c[2 * i + 1], N);
          mult[static_cast<size_t>(p)] =
              Cplx(-kPi * kPi * (double(kx) * kx + double(ky) * ky), 0.0);
        } else {
          const int kxi = freq_odd(c[2 * i], N);
          const int kyi = freq_odd(c[2 * i + 1], N);
          const int kxj = freq_odd(c[2 * j], N);
          const int kyj = freq_odd(c[2 * j + 1], N);
          const double re = -kPi * kPi * (double(kxi) * kxj + double(kyi) * kyj);
          const double im = -kPi * kPi * (double(kxi) * kyj - double(kxj) * kyi);
          mult[static_cast<size_t>(p)] = Cplx(re, im);
        }
      }
      for (std::int64_t p = 0; p < npts; ++p) {
        const Cplx z = mult[static_cast<size_t>(p)] * spec.v[static_cast<size_t>(p)];
        impl_->in[p][0] = z.real();
        impl_->in[p][1] = z.imag();
      }
      fftw_execute_dft(impl_->bwd, impl_->in, impl_->out);
      for (std::int64_t p = 0; p < npts; ++p) {
        const std::int64_t base = p * n * n;
        if (i == j) {
          hess.data[static_cast<size_t>(base + i * n + i)] =
              Cplx(impl_->out[p][0], 0.0);
        } else {
          const Cplx z(impl_->out[p][0], impl_->out[p][1]);
          // column-major within a point: (row, col) -> col * n + row
          hess.data[static_cast<size_t>(base + j * n + i)] = z;
          hess.data[static_cast<size_t>(base + i * n + j)] = std::conj(z);
        }
      }
    }
  }
  return hess;
}

RealField SpectralWorkspace::laplacian(const RealField& u) const {
  require_same_grid(u.grid, grid_, "laplacian");
  const std::int64_t npts = grid_.points();
  const int N = grid_.N;
  const ComplexField spec = forward(u);
  Odometer odo(grid_);
  for (std::int64_t p = 0; p < npts; ++p, odo.advance()) {
    double m = 0.0;
    for (int i = 0; i < grid_.n; ++i) {
      const int kx = freq_full(odo.coord[2 * i], N);
      const int ky = freq_full(odo.coord[2 * i + 1], N);
      m += double(kx) * kx + double(ky) * ky;
    }
    const Cplx z = spec.v[static_cast<size_t>(p)] * (-kPi * kPi * m);
    impl_->in[p][0] = z.real();
    impl_->in[p][1] = z.imag();
  }
  fftw_execute_dft(impl_->bwd, impl_->in, impl_->out);
  RealField out(grid_);
  for (std::int64_t p = 0; p < npts; ++p) {
    out.v[static_cast<size_t>(p)] = impl_->out[p][0];
  }
  return out;
}

RealField SpectralWorkspace::inverse_laplacian_mean_zero(
    const RealField& r) const {
  require_same_grid(r.grid, grid_, "inverse_laplacian_mean_zero");
  const std::int64_t npts = grid_.points();
  const int N = grid_.N;
  const ComplexField spec = forward(r);
  Odometer odo(grid_);
  for (std::int64_t p = 0; p < npts; ++p, odo.advance()) {
    double m = 0.0;
    for (int i = 0; i < grid_.n; ++i) {
      const int kx = freq_full(odo.coord[2 * i], N);
      const int ky = freq_full(odo.coord[2 * i + 1], N);
      m += double(kx) * kx + double(ky) * ky;
    }
    Cplx z{0.0, 0.0};
    if (m > 0.0) z = spec.v[static_cast<size_t>(p)] / (-kPi * kPi * m);
    impl_->in[p][0] = z.real();
    impl_->in[p][1] = z.imag();
  }
  fftw_execute_dft(impl_->bwd, impl_->in, impl_->out);
  RealField out(grid_);
  for (std::int64_t p = 0; p < npts; ++p) {
    out.v[static_cast<size_t>(p)] = impl_->out[p][0];
  }
  return out;
}

double SpectralWorkspace::spectral_square_sum(const RealField& u) const {
  const ComplexField spec = forward(u);
  double acc = 0.0;
  for (const Cplx& z : spec.v) acc += std::norm(z);
  return acc;
}

RealField random_bandlimited(const GridSpec& grid, std::uint64_t seed,
                             int kmax, double target_sup) {
  grid.validate();
  RealField f(grid);
  if (target_sup == 0.0) return f;
  if (kmax < 1 || kmax >= grid.N / 2) {
    throw std::invalid_argument("random_bandlimited: kmax outside 1..N/2-1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ki(-kmax, kmax);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::normal_distribution<double> amp(0.0, 1.0);

  const int axes = grid.axes();
  const int nmodes = 4;
  std::vector<std::vector<int>> modes;
  std::vector<double> amps;
  std::vector<double> phases;
  while (static_cast<int>(modes.size()) < nmodes) {
    std::vector<int> k(static_cast<size_t>(axes));
    bool nonzero = false;
    for (int a = 0; a < axes; ++a) {
      k[static_cast<size_t>(a)] = ki(rng);
      nonzero = nonzero || k[static_cast<size_t>(a)] != 0;
    }
    if (!nonzero) continue;
    modes.push_back(std::move(k));
    amps.push_back(amp(rng));
    phases.push_back(phase(rng));
  }

  const std::int64_t npts = grid.points();
  Odometer odo(grid);
  for (std::int64_t p = 0; p < npts; ++p, odo.advance()) {
    double val = 0.0;
    for (int m = 0; m < nmodes; ++m) {
      double dot = 0.0;
      for (int a = 0; a < axes; ++a) {
        dot += modes[static_cast<size_t>(m)][static_cast<size_t>(a)] *
               (static_cast<double>(odo.coord[static_cast<size_t>(a)]) / grid.N);
      }
      val += amps[static_cast<size_t>(m)] *
             std::cos(2.0 * kPi * dot + phases[static_cast<size_t>(m)]);
    }
    f.v[static_cast<size_t>(p)] = val;
  }
  const double sup = sup_norm(f);
  if (sup == 0.0) throw std::runtime_error("random_bandlimited: degenerate draw");
  const double scale = target_sup / sup;
  for (double& x : f.v) x *= scale;
  return f;
}

}  // namespace fcy
