#include "hardy/maxop.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

void RadiusSchedule::validate() const {
  if (radii.empty()) throw ConfigError("radius schedule is empty");
  if (!(r_max > 0)) throw ConfigError("radius schedule r_max must be positive");
  Scalar prev = 0;
  for (Scalar r : radii) {
    if (!(r > prev)) throw ConfigError("radius schedule must be strictly increasing and positive");
    if (r > r_max) throw ConfigError("radius schedule exceeds r_max");
    prev = r;
  }
  if (radii.back() != r_max) throw ConfigError("radius schedule must include r_max");
}

RadiusSchedule make_geometric_schedule(Scalar r0, Scalar r_max) {
  if (!(r0 > 0) || !(r_max > 0)) throw ConfigError("schedule radii must be positive");
  RadiusSchedule s;
  s.r_max = r_max;
  const Scalar ratio = std::pow(Scalar(2), Scalar(0.25));
  for (Scalar r = r0; r < r_max * (1 - 1e-12); r *= ratio) s.radii.push_back(r);
  s.radii.push_back(r_max);
  s.validate();
  return s;
}

namespace {

// int_0^t sqrt(r^2 - x^2) dx for |t| <= r; odd in t.
Scalar circle_area_integral(Scalar t, Scalar r) {
  t = std::clamp(t, -r, r);
  return Scalar(0.5) * (t * std::sqrt(std::max(r * r - t * t, Scalar(0))) +
                        r * r * std::asin(std::clamp(t / r, Scalar(-1), Scalar(1))));
}

// int_{xa}^{xb} |{Y <= y} ∩ [-s(x), s(x)]| dx with s(x) = sqrt(r^2 - x^2),
// for xa, xb already clipped to [-r, r].
Scalar lower_slab_area(Scalar xa, Scalar xb, Scalar y, Scalar r) {
  if (xa >= xb) return 0;
  const auto F = [r](Scalar t) { return circle_area_integral(t, r); };
  if (y >= r) return 2 * (F(xb) - F(xa));
  if (y <= -r) return 0;
  const Scalar c = std::sqrt(std::max(r * r - y * y, Scalar(0)));
  if (y >= 0) {
    // integrand: s + y on |x| <= c, 2s outside.
    Scalar area = F(xb) - F(xa);
    const Scalar lo = std::max(xa, -c), hi = std::min(xb, c);
    if (lo < hi) area += y * (hi - lo);
    if (xa < -c) area += F(std::min(xb, -c)) - F(xa);
    if (xb > c) area += F(xb) - F(std::max(xa, c));
    return area;
  }
  // y < 0: integrand s + y on |x| <= c, zero outside.
  const Scalar lo = std::max(xa, -c), hi = std::min(xb, c);
  if (lo >= hi) return 0;
  return F(hi) - F(lo) + y * (hi - lo);
}

}  // namespace

Scalar disk_rect_area(const Vec2& center, Scalar r, Scalar x0, Scalar x1, Scalar y0, Scalar y1) {
  const Scalar xa = std::clamp(x0 - center.x(), -r, r);
  const Scalar xb = std::clamp(x1 - center.x(), -r, r);
  return lower_slab_area(xa, xb, y1 - center.y(), r) - lower_slab_area(xa, xb, y0 - center.y(), r);
}

namespace {

struct CellRange {
  int i0, i1, j0, j1;
};

CellRange cells_touching_ball(const Grid& g, const Vec2& c, Scalar r) {
  return {static_cast<int>(std::floor((c.x() - r) / g.hx())),
          static_cast<int>(std::floor((c.x() + r) / g.hx())),
          static_cast<int>(std::floor((c.y() - r) / g.hy())),
          static_cast<int>(std::floor((c.y() + r) / g.hy()))};
}

void check_resolvable(const Grid& g, Scalar r) {
  if (r < g.hx() / 4) throw ResolutionError("ball radius " + std::to_string(r) +
                                            " below resolvable scale hx/4");
  if (!(r > 0)) throw ResolutionError("ball radius must be positive");
}

void check_in_domain(const Grid& g, const Vec2& c) {
  if (c.x() < 0 || c.x() > g.a || c.y() < 0 || c.y() > g.b) {
    throw DomainError("ball center outside the rectangle");
  }
}

// Shared overlap-weighted accumulation over B(center, r).
template <bool TakeAbs, typename ValueFn>
Scalar ball_sum(const ScalarField& f, const Vec2& center, Scalar r, ValueFn&& value) {
  const Grid& g = f.grid;
  const CellRange cr = cells_touching_ball(g, center, r);
  const Scalar hx = g.hx(), hy = g.hy();
  Scalar sum = 0;
  for (int j = cr.j0; j <= cr.j1; ++j) {
    const Scalar y0 = j * hy, y1 = (j + 1) * hy;
    const Scalar dy = std::max({y0 - center.y(), center.y() - y1, Scalar(0)});
    const Scalar my = std::max(std::abs(y0 - center.y()), std::abs(y1 - center.y()));
    for (int i = cr.i0; i <= cr.i1; ++i) {
      const Scalar x0 = i * hx, x1 = (i + 1) * hx;
      const Scalar dx = std::max({x0 - center.x(), center.x() - x1, Scalar(0)});
      if (dx * dx + dy * dy >= r * r) continue;
      const Scalar mx = std::max(std::abs(x0 - center.x()), std::abs(x1 - center.x()));
      const Scalar area = (mx * mx + my * my <= r * r)
                              ? hx * hy
                              : disk_rect_area(center, r, x0, x1, y0, y1);
      if (area <= 0) continue;
      Scalar v = value(i, j);
      if constexpr (TakeAbs) v = std::abs(v);
      sum += v * area;
    }
  }
  return sum;
}

}  // namespace

Scalar ball_average(const ScalarField& f, const Vec2& center, Scalar r) {
  check_in_domain(f.grid, center);
  check_resolvable(f.grid, r);
  const Scalar sum =
      ball_sum<false>(f, center, r, [&](int i, int j) { return f.extended_value(i, j); });
  return sum / (kPi * r * r);
}

Scalar maximal_fn(const ScalarField& f, const Vec2& x, const RadiusSchedule& schedule) {
  schedule.validate();
  check_in_domain(f.grid, x);
  Scalar best = 0;
  for (Scalar r : schedule.radii) {
    check_resolvable(f.grid, r);
    const Scalar sum =
        ball_sum<true>(f, x, r, [&](int i, int j) { return f.extended_value(i, j); });
    best = std::max(best, sum / (kPi * r * r));
  }
  return best;
}

namespace {

template <typename ValueFn>
Scalar restricted_sweep(const Grid& g, const Vec2& x, const RadiusSchedule& schedule, Scalar cap,
                        const Vec2& mask_center, Scalar mask_radius, ValueFn&& value) {
  schedule.validate();
  check_in_domain(g, x);
  check_resolvable(g, cap);

  std::vector<Scalar> radii;
  for (Scalar r : schedule.radii) {
    if (r < cap) radii.push_back(r);
  }
  radii.push_back(cap);
  const int nr = static_cast<int>(radii.size());

  const Scalar hx = g.hx(), hy = g.hy();
  const CellRange crange = cells_touching_ball(g, x, cap);
  std::vector<Scalar> full_add(nr, 0), exact(nr, 0);

  for (int j = crange.j0; j <= crange.j1; ++j) {
    const Scalar y0 = j * hy, y1 = (j + 1) * hy;
    const Scalar yc = (j + 0.5) * hy;
    const Scalar dy = std::max({y0 - x.y(), x.y() - y1, Scalar(0)});
    const Scalar my = std::max(std::abs(y0 - x.y()), std::abs(y1 - x.y()));
    for (int i = crange.i0; i <= crange.i1; ++i) {
      const Scalar x0 = i * hx, x1 = (i + 1) * hx;
      const Scalar xc = (i + 0.5) * hx;
      const Scalar dxm = std::max({x0 - x.x(), x.x() - x1, Scalar(0)});
      const Scalar dmin2 = dxm * dxm + dy * dy;
      if (dmin2 >= cap * cap) continue;
      const Scalar mcx = xc - mask_center.x(), mcy = yc - mask_center.y();
      if (mcx * mcx + mcy * mcy > mask_radius * mask_radius) continue;
      const Scalar v = std::abs(value(i, j));
      if (v == 0) continue;
      const Scalar mx = std::max(std::abs(x0 - x.x()), std::abs(x1 - x.x()));
      const Scalar dmax = std::hypot(mx, my);
      const Scalar dmin = std::sqrt(dmin2);
      // radii >= dmax get the full cell; radii in (dmin, dmax) the exact overlap.
      const auto lb = std::lower_bound(radii.begin(), radii.end(), dmax);
      if (lb != radii.end()) full_add[lb - radii.begin()] += v * hx * hy;
      for (auto it = std::upper_bound(radii.begin(), radii.end(), dmin); it != lb; ++it) {
        exact[it - radii.begin()] += v * disk_rect_area(x, *it, x0, x1, y0, y1);
      }
    }
  }

  Scalar best = 0, running_full = 0;
  for (int k = 0; k < nr; ++k) {
    running_full += full_add[k];
    best = std::max(best, (running_full + exact[k]) / (kPi * radii[k] * radii[k]));
  }
  return best;
}

}  // namespace

Scalar maximal_fn_restricted(const ScalarField& f, const Vec2& x, const RadiusSchedule& schedule,
                             Scalar cap, const Vec2& mask_center, Scalar mask_radius) {
  return restricted_sweep(f.grid, x, schedule, cap, mask_center, mask_radius,
                          [&](int i, int j) { return f.extended_value(i, j); });
}

Scalar maximal_fn_restricted(const Grid& grid, const Array& ext, int ext_left, int ext_bottom,
                             const Vec2& x, const RadiusSchedule& schedule, Scalar cap,
                             const Vec2& mask_center, Scalar mask_radius) {
  return restricted_sweep(grid, x, schedule, cap, mask_center, mask_radius,
                          [&](int i, int j) { return ext(i + ext_left, j + ext_bottom); });
}

Scalar riesz_potential_at(const ScalarField& f, const Vec2& ball_center, Scalar r,
                          const Vec2& kernel_point) {
  const Grid& g = f.grid;
  check_in_domain(g, ball_center);
  check_resolvable(g, r);
  const Scalar hx = g.hx(), hy = g.hy();
  const Scalar r_eq = std::sqrt(hx * hy / kPi);
  const int ik = std::clamp(static_cast<int>(std::floor(kernel_point.x() / hx)), 0, g.nx - 1);
  const int jk = std::clamp(static_cast<int>(std::floor(kernel_point.y() / hy)), 0, g.ny - 1);

  const CellRange cr = cells_touching_ball(g, ball_center, r);
  Scalar sum = std::abs(f.extended_value(ik, jk)) * 2 * kPi * r_eq;
  for (int j = cr.j0; j <= cr.j1; ++j) {
    const Scalar yc = (j + 0.5) * hy;
    for (int i = cr.i0; i <= cr.i1; ++i) {
      if (i == ik && j == jk) continue;
      const Scalar xc = (i + 0.5) * hx;
      const Scalar dbx = xc - ball_center.x(), dby = yc - ball_center.y();
      if (dbx * dbx + dby * dby > r * r) continue;
      const Scalar dist = std::hypot(xc - kernel_point.x(), yc - kernel_point.y());
      sum += std::abs(f.extended_value(i, j)) * hx * hy / dist;
    }
  }
  return sum;
}

Scalar hl_ratio(const ScalarField& f, Scalar p, const RadiusSchedule& schedule) {
  if (!(p > 1)) throw PreconditionError("hl_ratio requires p > 1");
  schedule.validate();
  const Grid& g = f.grid;
  const Scalar fnorm = integrate(g, f.values.abs().pow(p));
  if (fnorm == 0) throw DegenerateInputError("hl_ratio of the zero field");
  Scalar mnorm = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Scalar m = maximal_fn(f, g.center(i, j), schedule);
      mnorm += std::pow(m, p);
    }
  }
  mnorm *= g.cell_area();
  return std::pow(mnorm / fnorm, 1 / p);
}

Scalar ball_integral_zero_extension(const ScalarField& f, const Vec2& center, Scalar r) {
  check_resolvable(f.grid, r);
  const Grid& g = f.grid;
  return ball_sum<false>(f, center, r, [&](int i, int j) {
    return (i >= 0 && i < g.nx && j >= 0 && j < g.ny) ? f.values(i, j) : Scalar(0);
  });
}

}  // namespace hardy
