#include "hardy/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/parallel.hpp"

namespace hardy {

WeightSpec::WeightSpec(Scalar p_, Scalar alpha_) : p(p_), alpha(alpha_) { validate(); }

void WeightSpec::validate() const {
  if (!(p > 1) || !std::isfinite(p)) throw ConfigError("weight exponent p must exceed 1");
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw ConfigError("weight exponent alpha must be >= 0");
}

PaperConstants paper_constants(const GeometryConfig& config, const WeightSpec& w, Scalar c_hl) {
  config.validate();
  w.validate();
  if (!(c_hl > 0)) throw ConfigError("c_hl must be positive");
  const Scalar p = w.p, q = w.q(), alpha = w.alpha;
  const Scalar eps = config.epsilon(), delta = config.delta;
  const Scalar pq1 = p / q + 1;  // equals p

  PaperConstants out;
  out.K = std::pow(Scalar(2), p) * (p + 1) *
          (std::pow(config.a, pq1) * (1 - delta) / delta +
           std::pow(eps, pq1) * std::pow(1 - delta, pq1));
  out.C = std::pow(Scalar(8), p) * std::pow(c_hl, p);
  out.C2 = out.C * std::pow(Scalar(2), p) * (p / 2 + 1);
  out.alpha_max = p * std::pow(out.C2, -1 / p);
  out.C1_thm5 = std::pow(2 * (1 - delta) * eps, alpha / 2) * out.C;
  // The printed Theorem-5 composition depends on an angle the text leaves
  // undetermined; it is well defined only when the angle term vanishes.
  out.C2_thm5 = config.delta == 1 ? out.C1_thm5 : std::numeric_limits<Scalar>::quiet_NaN();
  return out;
}

namespace {

void check_trace_mask(const ScalarField& u, const GeometryConfig& config) {
  check_alignment(u.grid, config);
  const BoolColumn expected = dirichlet_faces(u.grid, config);
  for (int j = 0; j < u.grid.ny; ++j) {
    if (u.dirichlet_mask[j] != expected[j]) {
      throw PreconditionError("field trace mask does not match the geometry");
    }
  }
}

}  // namespace

QuotientReport friedrichs_quotient(const ScalarField& u, const GeometryConfig& config, Scalar p) {
  if (!(p > 1)) throw PreconditionError("friedrichs_quotient requires p > 1");
  check_trace_mask(u, config);
  const Array gm = gradient(u).magnitude();
  const Scalar den = integrate(u.grid, gm.pow(p));
  if (!(den > 0)) throw DegenerateInputError("friedrichs_quotient: zero gradient energy");
  const Scalar num = integrate_weighted_strip(u.grid, u.values.abs().pow(p),
                                              [](const Vec2&) { return Scalar(1); },
                                              StripClass::Pi2, config);
  QuotientReport rep;
  rep.numerator = num;
  rep.denominator = den;
  rep.ratio = num / den;
  rep.bound = paper_constants(config, WeightSpec(p, 0), 1.0).K;
  rep.slack = *rep.bound - rep.ratio;
  return rep;
}

QuotientReport hardy_quotient(const ScalarField& u, const GeometryConfig& config,
                              const WeightSpec& w, DistanceVariant variant) {
  w.validate();
  if (!(w.alpha < w.p)) {
    throw PreconditionError("hardy_quotient requires alpha < p (weight admissibility)");
  }
  check_trace_mask(u, config);
  const Array num_w = distance_power_array(u.grid, config, variant, w.alpha - w.p);
  const Array den_w = distance_power_array(u.grid, config, variant, w.alpha);
  const Array gm = gradient(u).magnitude();
  const Scalar den = integrate(u.grid, den_w * gm.pow(w.p));
  if (!(den > 0)) throw DegenerateInputError("hardy_quotient: zero gradient energy");
  QuotientReport rep;
  rep.numerator = integrate(u.grid, num_w * u.values.abs().pow(w.p));
  rep.denominator = den;
  rep.ratio = rep.numerator / den;
  return rep;
}

PointwiseReport pointwise_ratio(const ScalarField& u, const GeometryConfig& config,
                                const RadiusSchedule& schedule) {
  check_trace_mask(u, config);
  schedule.validate();
  const Grid& g = u.grid;
  const ScalarField gm = gradient_magnitude_field(u);
  const Scalar shift = (1 - config.delta) * config.epsilon() / 2;

  // One materialized extension covers every ball: caps never exceed a + shift.
  const int ml = static_cast<int>(std::ceil(shift / g.hx())) + 2;
  const int mr = g.nx + ml;
  const int mv = static_cast<int>(std::ceil((g.a + shift) / g.hy())) + 2;
  const Array ext = materialize_extension(gm, ml, mr, mv, mv);

  struct RowBest {
    Scalar ratio = 0;
    int i = -1;
    bool any = false;
  };
  std::vector<RowBest> rows(g.ny);

  parallel_for(g.ny, [&](int j) {
    RowBest best;
    const StripClass strip = classify_strip((j + 0.5) * g.hy(), config);
    const Scalar row_shift = strip == StripClass::Pi2 ? shift : 0;
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 x = g.center(i, j);
      const Scalar cap = x.x() + row_shift;
      const Vec2 xbar(0, std::clamp(x.y(), Scalar(0), g.b));
      const Scalar m = maximal_fn_restricted(g, ext, ml, mv, x, schedule, cap, xbar, cap);
      if (!(m > 0)) continue;
      best.any = true;
      const Scalar ratio = std::abs(u.values(i, j)) / (cap * m);
      if (ratio > best.ratio) {
        best.ratio = ratio;
        best.i = i;
      }
    }
    rows[j] = best;
  });

  PointwiseReport rep;
  bool any = false;
  for (int j = 0; j < g.ny; ++j) {
    if (!rows[j].any) continue;
    any = true;
    if (rows[j].ratio > rep.max_ratio) {
      rep.max_ratio = rows[j].ratio;
      rep.argmax_i = rows[j].i;
      rep.argmax_j = j;
    }
  }
  if (!any) throw DegenerateInputError("pointwise_ratio: maximal function vanishes everywhere");
  rep.within_statement = rep.max_ratio <= rep.vs_statement;
  rep.within_proof = rep.max_ratio <= rep.vs_proof;
  rep.within_corrected = rep.max_ratio <= rep.vs_corrected;
  return rep;
}

std::vector<LemmaReport> lemma_checks(const ScalarField& u, const GeometryConfig& config,
                                      const std::vector<LemmaSample>& samples,
                                      int boundary_samples) {
  check_trace_mask(u, config);
  if (boundary_samples < 1) throw PreconditionError("boundary_samples must be positive");
  const Grid& g = u.grid;
  const ScalarField gm = gradient_magnitude_field(u);

  std::vector<LemmaReport> out(samples.size());
  parallel_for(static_cast<int>(samples.size()), [&](int k) {
    const LemmaSample& s = samples[k];
    LemmaReport rep;
    rep.sample = s;
    const int ic = std::clamp(static_cast<int>(std::floor(s.x.x() / g.hx())), 0, g.nx - 1);
    const int jc = std::clamp(static_cast<int>(std::floor(s.x.y() / g.hy())), 0, g.ny - 1);
    const Scalar u_at = u.values(ic, jc);
    rep.lemma2_lhs = std::abs(u_at - ball_average(u, s.x, s.r));
    rep.lemma2_rhs = 2 * riesz_potential(gm, s.x, s.r);

    const Scalar rho = s.x.x();
    if (s.r >= rho) {
      rep.lemma3_applicable = true;
      rep.lemma3_rhs = riesz_potential(gm, s.x, s.r);
      const Scalar c = std::sqrt(std::max(s.r * s.r - rho * rho, Scalar(0)));
      const Scalar lo = std::max(Scalar(0), s.x.y() - c);
      const Scalar hi = std::min(g.b, s.x.y() + c);
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (int t = 0; t < boundary_samples; ++t) {
        const Scalar y2 = boundary_samples == 1
                              ? (lo + hi) / 2
                              : lo + (hi - lo) * t / (boundary_samples - 1);
        best = std::min(best, riesz_potential_at(gm, s.x, s.r, Vec2(0, y2)));
      }
      rep.lemma3_lhs = best;
    }
    out[k] = rep;
  });
  return out;
}

Scalar mazya_B(const ScalarField& V, Scalar p, Scalar q, const std::vector<Vec2>& centers,
               const RadiusSchedule& radii) {
  const bool applicable = (p == 1 && q >= 1) || (p > 1 && p < 2 && q > p);
  if (!applicable) {
    throw PreconditionError("mazya_B in n=2 requires p = 1 with q >= 1, or 1 < p < 2 with q > p");
  }
  if ((V.values < 0).any()) throw PreconditionError("mazya_B requires V >= 0");
  if (centers.empty()) throw PreconditionError("mazya_B requires at least one center");
  radii.validate();

  Scalar best = 0;
  for (const Vec2& c : centers) {
    for (Scalar r : radii.radii) {
      const Scalar mass = ball_integral_zero_extension(V, c, r);
      best = std::max(best, std::pow(r, 1 - 2 / p) * std::pow(mass, 1 / q));
    }
  }
  return best;
}

}  // namespace hardy
