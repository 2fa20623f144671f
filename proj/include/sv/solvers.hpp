#pragma once

#include "sv/mesh.hpp"
#include "sv/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sv {

/// A generator competing for territory: a point on a face (barycentric) or a
/// polyline lying on the surface.  weight participates only in power mode.
struct Site {
  enum class Kind { Point, Curve };

  int id = -1;
  Kind kind = Kind::Point;
  int face = -1;       // point sites
  Vec3 bary = Vec3(1, 0, 0);
  std::vector<Vec3> polyline;  // curve sites, >= 2 distinct consecutive points
  Scalar weight = 0;

  Vec3 position(const TriangleMesh& mesh) const;
};

struct SiteSet {
  std::vector<Site> sites;

  int size() const { return static_cast<int>(sites.size()); }
  bool any_nonzero_weight() const;
  Scalar max_abs_weight() const;
};

/// Positive scalar field over 3D used to modulate Euclidean distances.
struct DensityField {
  std::function<Scalar(const Vec3&)> evaluator;
  int quadrature_samples = 8;  // composite Simpson subintervals (even)
};

enum class DistanceKind { Euclidean, FastMarching };

struct SolverConfig {
  DistanceKind kind = DistanceKind::Euclidean;
  std::optional<DensityField> density;  // Euclidean only
  bool power = false;

  void validate() const;
};

/// Minimum over the polyline's segments of the exact point-to-segment
/// distance.
Scalar point_to_curve_distance(const std::vector<Vec3>& curve, const Vec3& q);

/// Density-equipped length of segment p->v: ||v-p|| times the composite
/// Simpson estimate of the density integral along the segment.
Scalar density_distance(const Vec3& p, const Vec3& v, const DensityField& field);

/// Root (unsquared, unshifted) distance from a site to a 3D point under the
/// Euclidean family, including curve geometry and optional density wrap.
Scalar euclidean_root_distance(const SolverConfig& cfg, const Site& site, const Vec3& q,
                               const TriangleMesh& mesh);

/// d^2(site, q) under cfg; power flag subtracts the site weight.  FastMarching
/// distances are owned by the propagation engine, not this entry point.
Scalar squared_distance(const SolverConfig& cfg, const Site& site, const Vec3& q,
                        const TriangleMesh& mesh);

/// One fast-marching stencil: candidate root distance at c of a planar
/// wavefront known at a (da) and b (db), both finalized.  Falls back to the
/// edge-based Dijkstra update when the planar solution is invalid or the
/// triangle is obtuse at c.
Scalar fmm_update(const Vec2& a, const Vec2& b, const Vec2& c, Scalar da, Scalar db);

// --- sites file -------------------------------------------------------------
//
// One record per line:
//   p <faceId> <b1> <b2> <b3> [w]
//   c <x1> <y1> <z1> <x2> <y2> <z2> ... [w]
// Curve records need >= 2 points; a trailing odd value is the weight.

SiteSet load_sites(const std::string& path, const TriangleMesh& mesh);
void save_sites(const std::string& path, const SiteSet& sites);

/// Built-in density fields for the CLI: "constant[:c]", "linear:<x|y|z>[:a:b]"
/// (rho = a*coord + b), "radial[:a:b]" (rho = a*||q|| + b).
DensityField make_density(const std::string& spec);

}  // namespace sv
