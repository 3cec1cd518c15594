#pragma once

#include <optional>
#include <vector>

#include "hardy/field.hpp"
#include "hardy/geometry.hpp"
#include "hardy/maxop.hpp"
#include "hardy/types.hpp"

namespace hardy {

// Exponents of the weighted quotients.  q is the Hoelder conjugate of p and
// sigma = alpha/p, both derived.
struct WeightSpec {
  Scalar p = 2.0;
  Scalar alpha = 0.0;

  WeightSpec() = default;
  WeightSpec(Scalar p_, Scalar alpha_);

  Scalar q() const { return p / (p - 1); }
  Scalar sigma() const { return alpha / p; }
  void validate() const;
};

struct QuotientReport {
  Scalar numerator = 0;
  Scalar denominator = 0;
  Scalar ratio = 0;
  std::optional<Scalar> bound;  // closed-form constant when the paper gives one
  std::optional<Scalar> slack;  // bound - ratio
};

// Closed-form constants of the inequalities, evaluated for one configuration.
// c_hl is the (empirically calibrated) Hardy-Littlewood norm constant feeding
// C and C2; the angle-dependent Theorem-5 composition is reported only where
// the angle term vanishes (delta = 1) and is NaN otherwise.
struct PaperConstants {
  Scalar K = 0;            // Friedrichs constant K(a, eps, delta)
  Scalar C_pw_stmt = 4;    // pointwise inequality, statement
  Scalar C_pw_proof = 8;   // pointwise inequality, proof chain
  Scalar C = 0;            // 8^p * c_hl^p
  Scalar C2 = 0;           // C * 2^p * (p/2 + 1)
  Scalar alpha_max = 0;    // p * C2^(-1/p)
  Scalar C1_thm5 = 0;      // 2^(a/2) (1-delta)^(a/2) eps^(a/2) C
  Scalar C2_thm5 = 0;      // NaN unless delta = 1
};

PaperConstants paper_constants(const GeometryConfig& config, const WeightSpec& w, Scalar c_hl);

// Friedrichs quotient: int_{Pi2} |u|^p over int_Omega |grad u|^p, bounded by K.
QuotientReport friedrichs_quotient(const ScalarField& u, const GeometryConfig& config, Scalar p);

// Weighted Hardy quotient: int d^(alpha-p) |u|^p over int d^alpha |grad u|^p,
// d = rho_eps or rho.  No closed-form bound is attached (the paper's constant
// is non-explicit); the ratio feeds the sharp module and the sweeps.
QuotientReport hardy_quotient(const ScalarField& u, const GeometryConfig& config,
                              const WeightSpec& w, DistanceVariant variant);

struct PointwiseReport {
  Scalar max_ratio = 0;
  int argmax_i = -1;
  int argmax_j = -1;
  Scalar vs_statement = 4;        // Theorem statement constant
  Scalar vs_proof = 8;            // constant produced by the proof chain
  Scalar vs_corrected = 16 * kPi; // chain with the corrected Riesz constant
  bool within_statement = false;
  bool within_proof = false;
  bool within_corrected = false;
};

// max over cells of |u(x)| / (rho_eps(x) * M_{rho_eps(x)}(|grad u| chi_B)(x)),
// the maximal function masked to B(xbar, rho_eps(x)) with xbar the projection
// of x onto Gamma.  Cells where the maximal value vanishes are skipped.
PointwiseReport pointwise_ratio(const ScalarField& u, const GeometryConfig& config,
                                const RadiusSchedule& schedule);

struct LemmaSample {
  Vec2 x;
  Scalar r = 0;
};

struct LemmaReport {
  LemmaSample sample;
  Scalar lemma2_lhs = 0;  // |u(x) - u_B|
  Scalar lemma2_rhs = 0;  // 2 * riesz(|grad u|, x, r)
  bool lemma3_applicable = false;
  Scalar lemma3_lhs = 0;  // min over sampled Gamma∩B of riesz centered there
  Scalar lemma3_rhs = 0;  // riesz centered at x
};

// Poincare-type and boundary-point Riesz comparisons on sample balls.  The
// Gamma∩B infimum is approximated over boundary_samples points of the arc.
std::vector<LemmaReport> lemma_checks(const ScalarField& u, const GeometryConfig& config,
                                      const std::vector<LemmaSample>& samples,
                                      int boundary_samples = 33);

// Maz'ya B-functional: max over centers and scheduled radii of
// R^(1-2/p) * (int_{B_R} V)^(1/q), V extended by zero outside its window.
// Applicability (n = 2): p = 1 with q >= 1, or 1 < p < 2 with q > p.
Scalar mazya_B(const ScalarField& V, Scalar p, Scalar q, const std::vector<Vec2>& centers,
               const RadiusSchedule& radii);

}  // namespace hardy
