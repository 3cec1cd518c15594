#include "hardy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hardy {

void GeometryConfig::validate() const {
  if (!(a > 0) || !std::isfinite(a)) throw ConfigError("geometry.a must be positive");
  if (!(b > 0) || !std::isfinite(b)) throw ConfigError("geometry.b must be positive");
  if (N < 1) throw ConfigError("geometry.N must be at least 1");
  if (!(delta > 0) || !(delta <= 1)) throw ConfigError("geometry.delta must lie in (0,1]");
}

std::vector<BoundarySegment> build_partition(const GeometryConfig& config) {
  config.validate();
  const Scalar eps = config.epsilon();
  std::vector<BoundarySegment> segments;
  segments.reserve(config.delta < 1 ? 2 * config.N : config.N);
  for (int i = 0; i < config.N; ++i) {
    const Scalar lo = i * eps;
    const Scalar hi = (i + 1 == config.N) ? config.b : (i + 1) * eps;
    if (config.delta < 1) {
      const Scalar split = lo + eps * config.delta;
      segments.push_back({lo, split, SegmentKind::Dirichlet});
      segments.push_back({split, hi, SegmentKind::Free});
    } else {
      segments.push_back({lo, hi, SegmentKind::Dirichlet});
    }
  }
  return segments;
}

namespace {

// Period index of x2, clamped so x2 = b falls in the last period.
int period_index(Scalar x2, const GeometryConfig& config) {
  const int i = static_cast<int>(std::floor(x2 / config.epsilon()));
  return std::clamp(i, 0, config.N - 1);
}

}  // namespace

StripClass classify_strip(Scalar x2, const GeometryConfig& config) {
  const Scalar eps = config.epsilon();
  const int i = period_index(x2, config);
  const Scalar t = x2 - i * eps;
  return t <= eps * config.delta ? StripClass::Pi1 : StripClass::Pi2;
}

Scalar dirichlet_distance(const Vec2& x, const GeometryConfig& config) {
  const Scalar eps = config.epsilon();
  const int i0 = period_index(x.y(), config);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  // The nearest Dirichlet segment lies in the containing period or one of its
  // neighbours.
  for (int i = std::max(0, i0 - 1); i <= std::min(config.N - 1, i0 + 1); ++i) {
    const Scalar lo = i * eps;
    const Scalar hi = lo + eps * config.delta;
    const Scalar dy = std::max({lo - x.y(), x.y() - hi, Scalar(0)});
    best = std::min(best, std::hypot(x.x(), dy));
  }
  return best;
}

DistanceRecord distances(const Vec2& x, const GeometryConfig& config) {
  config.validate();
  if (x.x() < 0 || x.x() > config.a || x.y() < 0 || x.y() > config.b) {
    throw DomainError("point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                      ") lies outside the rectangle");
  }
  DistanceRecord rec;
  rec.rho = x.x();
  rec.r2 = dirichlet_distance(x, config);
  rec.strip = classify_strip(x.y(), config);
  rec.rho_eps = rec.rho;
  if (rec.strip == StripClass::Pi2) {
    rec.rho_eps += (1 - config.delta) * config.epsilon() / 2;
  }
  return rec;
}

void write_segments_csv(std::ostream& os, const std::vector<BoundarySegment>& segments) {
  os << "lo,hi,kind\n";
  for (const auto& s : segments) {
    os << s.lo << ',' << s.hi << ',' << (s.kind == SegmentKind::Dirichlet ? "dirichlet" : "free")
       << '\n';
  }
}

}  // namespace hardy
