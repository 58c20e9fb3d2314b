#pragma once

#include <cstdint>
#include <vector>

#include "forms.hpp"

namespace fcy {

// Uniform periodic grid on the torus C^n / Z^{2n}, N samples per real axis,
// unit periods.  Values are stored row-major over the axis order
// (x^1, y^1, ..., x^n, y^n) with x^1 slowest.
struct GridSpec {
  int n = 2;
  int N = 8;

  int axes() const { return 2 * n; }
  std::int64_t points() const;
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

struct RealField {
  GridSpec grid;
  std::vector<double> v;

  RealField() = default;
  explicit RealField(const GridSpec& g)
      : grid(g), v(static_cast<size_t>(g.points()), 0.0) {}

  double& operator[](std::int64_t i) { return v[static_cast<size_t>(i)]; }
  double operator[](std::int64_t i) const { return v[static_cast<size_t>(i)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(v.size()); }
};

struct ComplexField {
  GridSpec grid;
  std::vector<Cplx> v;

  ComplexField() = default;
  explicit ComplexField(const GridSpec& g)
      : grid(g), v(static_cast<size_t>(g.points()), Cplx{0.0, 0.0}) {}
};

// Field of n x n complex matrices, point-major, column-major within a point.
struct MatrixField {
  GridSpec grid;
  std::vector<Cplx> data;

  MatrixField() = default;
  explicit MatrixField(const GridSpec& g)
      : grid(g),
        data(static_cast<size_t>(g.points()) * g.n * g.n, Cplx{0.0, 0.0}) {}

  Eigen::Map<MatC> at(std::int64_t point) {
    return {data.data() + point * grid.n * grid.n, grid.n, grid.n};
  }
  Eigen::Map<const MatC> at(std::int64_t point) const {
    return {data.data() + point * grid.n * grid.n, grid.n, grid.n};
  }
};

// Coordinate of a flat point index along one axis, in grid steps 0..N-1.
// Axis 2i is x^{i+1}, axis 2i+1 is y^{i+1}.
std::int64_t axis_coordinate(const GridSpec& g, std::int64_t point, int axis);

// Position in [0,1) along one axis.
double axis_position(const GridSpec& g, std::int64_t point, int axis);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

// Quadrature: cell-volume-normalized mean of phi * density (the trapezoidal
// rule on a periodic uniform grid).
double integrate(const RealField& phi, const RealField& density);
double integrate(const RealField& phi);

// u minus its weighted mean, weight positive.
RealField mean_zero(const RealField& u, const RealField& weight);
RealField mean_zero(const RealField& u);

double sup_norm(const RealField& u);
double field_max(const RealField& u);
double field_min(const RealField& u);

}  // namespace fcy
