#include "grid.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fcy {

std::int64_t GridSpec::points() const {
  std::int64_t p = 1;
  for (int a = 0; a < axes(); ++a) p *= N;
  return p;
}

void GridSpec::validate() const {
  if (n < forms::kMinDim || n > forms::kMaxDim) {
    std::ostringstream os;
    os << "GridSpec: n = " << n << " outside 2..4";
    throw std::invalid_argument(os.str());
  }
  if (N < 4 || N > 64 || N % 2 != 0) {
    std::ostringstream os;
    os << "GridSpec: N = " << N << " must be even and within 4..64";
    throw std::invalid_argument(os.str());
  }
}

std::int64_t axis_coordinate(const GridSpec& g, std::int64_t point, int axis) {
  std::int64_t stride = 1;
  for (int a = g.axes() - 1; a > axis; --a) stride *= g.N;
  return (point / stride) % g.N;
}

double axis_position(const GridSpec& g, std::int64_t point, int axis) {
  return static_cast<double>(axis_coordinate(g, point, axis)) / g.N;
}

void require_same_grid(const GridSpec& a, const GridSpec& b,
                       const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
  }
}

double integrate(const RealField& phi, const RealField& density) {
  require_same_grid(phi.grid, density.grid, "integrate");
  double acc = 0.0;
  for (size_t i = 0; i < phi.v.size(); ++i) acc += phi.v[i] * density.v[i];
  return acc / static_cast<double>(phi.v.size());
}

double integrate(const RealField& phi) {
  double acc = 0.0;
  for (double x : phi.v) acc += x;
  return acc / static_cast<double>(phi.v.size());
}

RealField mean_zero(const RealField& u, const RealField& weight) {
  require_same_grid(u.grid, weight.grid, "mean_zero");
  const double wsum = integrate(weight);
  if (wsum <= 0.0) throw std::invalid_argument("mean_zero: weight not positive");
  const double shift = integrate(u, weight) / wsum;
  RealField out = u;
  for (double& x : out.v) x -= shift;
  return out;
}

RealField mean_zero(const RealField& u) {
  const double shift = integrate(u);
  RealField out = u;
  for (double& x : out.v) x -= shift;
  return out;
}

double sup_norm(const RealField& u) {
  double m = 0.0;
  for (double x : u.v) m = std::max(m, std::abs(x));
  return m;
}

double field_max(const RealField& u) {
  return *std::max_element(u.v.begin(), u.v.end());
}

double field_min(const RealField& u) {
  return *std::min_element(u.v.begin(), u.v.end());
}

}  // namespace fcy
