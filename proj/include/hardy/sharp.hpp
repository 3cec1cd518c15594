#pragma once

#include <cstdint>

#include "hardy/field.hpp"
#include "hardy/geometry.hpp"
#include "hardy/ineq.hpp"
#include "hardy/types.hpp"

namespace hardy {

enum class QuotientKind { Friedrichs, HardyEps, HardyRho };

enum class EstimateMethod { Eig2, GradAscent, Oracle };

struct ConstantEstimate {
  Scalar value = 0;      // estimated sharp constant (sup of the quotient)
  int iterations = 0;
  Scalar residual = 0;   // last relative change of the quotient
  Grid grid;
  EstimateMethod method = EstimateMethod::Eig2;
  Vector iterate;        // flattened best field, index i + nx*j
};

// The discrete quotient the sharp module optimizes.  Its gradient energy uses
// compact face differences (Dirichlet left faces enter as 2u/hx over a half
// dual cell, all other boundary faces are natural); the mass side is the same
// cell-centered sum as the analysis quotients.  The field-gradient quotient of
// the ineq module admits spurious oscillatory near-null modes and has no
// finite supremum under refinement, so it cannot be the optimization target.
Scalar sharp_quotient(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                      const ScalarField& u);
Scalar sharp_quotient(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                      const Grid& grid, const Vector& u);

struct QuotientGradient {
  Scalar value = 0;
  Vector gradient;
};

// Quotient value and its exact first variation at u.
QuotientGradient sharp_quotient_gradient(QuotientKind kind, const GeometryConfig& config,
                                         const WeightSpec& w, const Grid& grid, const Vector& u);

// Sharp-constant estimate: for p = 2 inverse power iteration on the pencil
// (stiffness, weighted mass) with conjugate-gradient inner solves; otherwise
// gradient ascent with backtracking line search and p-norm renormalization,
// multistarted from seeded corpus fields plus the p = 2 eigenvector.
ConstantEstimate estimate_sharp(QuotientKind kind, const GeometryConfig& config,
                                const WeightSpec& w, const Grid& grid, Scalar tol, int max_iter,
                                std::uint64_t seed = 12345);

// Independent verification on tiny grids (at most 12x12): dense generalized
// eigensolve for p = 2, wide multistart plus random-direction polishing
// otherwise.
ConstantEstimate oracle_sharp(QuotientKind kind, const GeometryConfig& config, const WeightSpec& w,
                              const Grid& grid, std::uint64_t seed = 12345);

}  // namespace hardy
