#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <utility>

#include "hardy/geometry.hpp"
#include "hardy/types.hpp"

namespace hardy {

// Uniform cell-centered grid over [0,a]x[0,b]; cell (i,j) has its center at
// ((i+1/2)hx, (j+1/2)hy).
struct Grid {
  int nx = 0;
  int ny = 0;
  Scalar a = 1.0;
  Scalar b = 1.0;

  Grid() = default;
  Grid(int nx_, int ny_, Scalar a_ = 1.0, Scalar b_ = 1.0);

  Scalar hx() const { return a / nx; }
  Scalar hy() const { return b / ny; }
  Scalar cell_area() const { return hx() * hy(); }
  Vec2 center(int i, int j) const { return {(i + 0.5) * hx(), (j + 0.5) * hy()}; }
  int cells() const { return nx * ny; }

  bool operator==(const Grid&) const = default;
};

// Period boundaries must coincide with cell faces so that Gamma_eps endpoints
// are not smeared across cells.
void check_alignment(const Grid& grid, const GeometryConfig& config);

// Left-face boundary condition per row: true where the face center lies on a
// Dirichlet segment.
BoolColumn dirichlet_faces(const Grid& grid, const GeometryConfig& config);

// Discrete scalar field.  Ghost values across Dirichlet left faces are odd
// (-u, enforcing the vanishing trace); across every other boundary face they
// are even reflections.
struct ScalarField {
  Grid grid;
  Array values;              // (nx, ny)
  BoolColumn dirichlet_mask; // size ny

  static ScalarField zeros(const Grid& grid);  // all-free mask
  static ScalarField zeros(const Grid& grid, const GeometryConfig& config);

  // Value at cell (i,j) of the reflection extension; i,j may lie outside the
  // grid, arbitrarily far (repeated folding).
  Scalar extended_value(int i, int j) const;
};

struct VectorField {
  Grid grid;
  Array g1;
  Array g2;

  Array magnitude() const { return (g1.square() + g2.square()).sqrt(); }
};

// Central differences at interior cells; one-sided second-order at boundary
// cells except across Dirichlet faces, where the odd ghost is used.
VectorField gradient(const ScalarField& u);

// |grad u| as a field; magnitudes extend evenly across every face.
ScalarField gradient_magnitude_field(const ScalarField& u);

// Midpoint rule over all cells: sum of f * hx*hy.
template <typename Derived>
Scalar integrate(const Grid& grid, const Eigen::ArrayBase<Derived>& f) {
  return f.sum() * grid.cell_area();
}

// Midpoint rule with a pointwise weight evaluated at cell centers.  Throws
// QuadratureError naming the first cell with a non-finite weight.
template <typename Derived, typename WeightFn>
Scalar integrate_weighted(const Grid& grid, const Eigen::ArrayBase<Derived>& f, WeightFn&& w) {
  Scalar sum = 0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Scalar wv = w(grid.center(i, j));
      if (!std::isfinite(wv)) {
        throw QuadratureError("non-finite weight at cell (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      sum += wv * f(i, j);
    }
  }
  return sum * grid.cell_area();
}

// Restricted to cells whose center lies in the given strip.
template <typename Derived, typename WeightFn>
Scalar integrate_weighted_strip(const Grid& grid, const Eigen::ArrayBase<Derived>& f,
                                WeightFn&& w, StripClass strip, const GeometryConfig& config) {
  Scalar sum = 0;
  for (int j = 0; j < grid.ny; ++j) {
    if (classify_strip(grid.center(0, j).y(), config) != strip) continue;
    for (int i = 0; i < grid.nx; ++i) {
      const Scalar wv = w(grid.center(i, j));
      if (!std::isfinite(wv)) {
        throw QuadratureError("non-finite weight at cell (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      sum += wv * f(i, j);
    }
  }
  return sum * grid.cell_area();
}

// Array of w(center) over the grid.
template <typename WeightFn>
Array weight_array(const Grid& grid, WeightFn&& w) {
  Array out(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) out(i, j) = w(grid.center(i, j));
  return out;
}

// d(x)^e at cell centers, d = rho or rho_eps.
enum class DistanceVariant { Eps, Rho };
Array distance_power_array(const Grid& grid, const GeometryConfig& config, DistanceVariant variant,
                           Scalar exponent);

// Deterministic random admissible test function: a seeded combination of
// polynomial-sinusoid modes, cut off near Gamma_eps by clamp(r2/h_cut,0,1)^3
// with h_cut = eps*delta*h_cut_fraction, then hard-zeroed where
// r2 < h_cut/8.  Retries with a perturbed seed when the draw degenerates;
// throws DegenerateInputError after 8 attempts.
ScalarField generate_test_function(std::uint64_t seed, const Grid& grid,
                                   const GeometryConfig& config, int modes,
                                   Scalar h_cut_fraction = 0.5);

// Materialized reflection extension with the given cell margins; entry
// (i + left, j + bottom) holds extended_value(i, j).
Array materialize_extension(const ScalarField& f, int left, int right, int bottom, int top);

// CSV exchange format: "x1,x2,value" per cell, row-major in j then i.
void write_field_csv(std::ostream& os, const ScalarField& field);
ScalarField read_field_csv(std::istream& is, const Grid& grid, const GeometryConfig& config);

}  // namespace hardy
