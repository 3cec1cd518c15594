#pragma once

#include <iosfwd>
#include <vector>

#include "hardy/types.hpp"

namespace hardy {

// Rectangle [0,a]x[0,b] whose left side Gamma = {x1=0} alternates between
// Dirichlet pieces of length eps*delta and free pieces of length eps*(1-delta),
// with period eps = b/N.  delta = 1 makes the whole left side Dirichlet.
struct GeometryConfig {
  Scalar a = 1.0;
  Scalar b = 1.0;
  int N = 8;
  Scalar delta = 0.5;

  Scalar epsilon() const { return b / N; }
  void validate() const;
};

enum class SegmentKind { Dirichlet, Free };
enum class StripClass { Pi1, Pi2 };

// One maximal run of constant boundary condition on the left side, as the
// x2-interval [lo, hi].
struct BoundarySegment {
  Scalar lo = 0;
  Scalar hi = 0;
  SegmentKind kind = SegmentKind::Free;
};

// Canonical layout: period i occupies [i*eps, (i+1)*eps) with the Dirichlet
// part [i*eps, i*eps + eps*delta] first.  Returns 2N segments for delta < 1,
// N all-Dirichlet segments for delta = 1.
std::vector<BoundarySegment> build_partition(const GeometryConfig& config);

struct DistanceRecord {
  Scalar rho = 0;      // dist(x, Gamma) = x1
  Scalar r2 = 0;       // dist(x, Gamma_eps)
  Scalar rho_eps = 0;  // rho on Pi1, rho + (1-delta)*eps/2 on Pi2
  StripClass strip = StripClass::Pi1;
};

// Strip membership of the height x2.  Interface lines belong to Pi1 (the
// Dirichlet strips are closed).
StripClass classify_strip(Scalar x2, const GeometryConfig& config);

// All three distance functions at a point of the closed rectangle.
// Throws DomainError if x lies outside.
DistanceRecord distances(const Vec2& x, const GeometryConfig& config);

// dist(x, Gamma_eps) without building the partition.
Scalar dirichlet_distance(const Vec2& x, const GeometryConfig& config);

// CSV rows "lo,hi,kind" for plotting.
void write_segments_csv(std::ostream& os, const std::vector<BoundarySegment>& segments);

}  // namespace hardy
