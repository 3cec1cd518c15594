#pragma once

#include <vector>

#include "hardy/field.hpp"
#include "hardy/types.hpp"

namespace hardy {

// Increasing radii ending exactly at r_max.
struct RadiusSchedule {
  std::vector<Scalar> radii;
  Scalar r_max = 0;

  void validate() const;
};

// Geometric sequence with ratio 2^(1/4) from r0 up to (and including) r_max.
RadiusSchedule make_geometric_schedule(Scalar r0, Scalar r_max);

// Exact area of the intersection of the disk B(center, r) with the axis-
// aligned rectangle [x0,x1]x[y0,y1].
Scalar disk_rect_area(const Vec2& center, Scalar r, Scalar x0, Scalar x1, Scalar y0, Scalar y1);

// Average of the reflected extension of f over B(center, r); cells straddling
// the circle are weighted by their exact overlap area.  Throws
// ResolutionError when r < hx/4.
Scalar ball_average(const ScalarField& f, const Vec2& center, Scalar r);

// sup over scheduled radii of the ball average of |f| centered at x.
Scalar maximal_fn(const ScalarField& f, const Vec2& x, const RadiusSchedule& schedule);

// Same, with radii truncated to (0, cap] (cap itself always included) and the
// integrand multiplied by the indicator of B(mask_center, mask_radius),
// evaluated at cell centers.  Single sweep over the cells of the largest
// ball; equal to the per-radius definition up to summation order.
Scalar maximal_fn_restricted(const ScalarField& f, const Vec2& x, const RadiusSchedule& schedule,
                             Scalar cap, const Vec2& mask_center, Scalar mask_radius);

// Array-backed fast path of the same sweep, reading a pre-materialized
// extension (see materialize_extension); bitwise identical to the field-backed
// overload.
Scalar maximal_fn_restricted(const Grid& grid, const Array& ext, int ext_left, int ext_bottom,
                             const Vec2& x, const RadiusSchedule& schedule, Scalar cap,
                             const Vec2& mask_center, Scalar mask_radius);

// Riesz potential of order 1: sum over cells of B(ball_center, r) of
// |f| * hx*hy / |kernel_point - cell center|, the cell containing the kernel
// point replaced by its equal-area polar model |f| * 2*pi*r_eq.
Scalar riesz_potential_at(const ScalarField& f, const Vec2& ball_center, Scalar r,
                          const Vec2& kernel_point);

inline Scalar riesz_potential(const ScalarField& f, const Vec2& x, Scalar r) {
  return riesz_potential_at(f, x, r, x);
}

// ||M_R f||_p / ||f||_p over the grid.
Scalar hl_ratio(const ScalarField& f, Scalar p, const RadiusSchedule& schedule);

// Ball integral of f with zero extension outside the grid (no reflection);
// exact overlap weights.  Used by the Maz'ya functional.
Scalar ball_integral_zero_extension(const ScalarField& f, const Vec2& center, Scalar r);

}  // namespace hardy
