#pragma once

#include "sv/envelope.hpp"
#include "sv/mesh.hpp"
#include "sv/solvers.hpp"

#include <map>
#include <string>
#include <vector>

namespace sv {

struct CellFragment {
  int face = -1;
  std::vector<Vec3> poly;
  Scalar area = 0;
};

struct BisectorCrossing {
  std::uint64_t edge = 0;
  int site_a = -1, site_b = -1;
  Scalar mismatch = 0;  // gap between the two faces' crossing points, pre-snap
  Vec3 point = Vec3::Zero();
  bool matched = false;
};

struct DiagramDiagnostics {
  Scalar coverage_rel_err = 0;
  Scalar max_edge_mismatch = 0;            // pre-snap, over matched crossings
  std::vector<BisectorCrossing> breakpoints;  // unmatched or above eps_stitch
  std::map<int, int> components_per_site;     // filled by check_connectedness
  Scalar uncovered_area_rel = 0;
  std::map<int, int> survivor_histogram;      // contributing-count -> faces
};

struct SurfaceVoronoiDiagram {
  struct BisectorPolyline {
    int site_a = -1, site_b = -1;
    std::vector<Vec3> pts;
  };

  std::map<int, std::vector<CellFragment>> cells;
  std::vector<BisectorPolyline> bisectors;
  std::map<int, Scalar> cell_area;
  DiagramDiagnostics diagnostics;
  Scalar mesh_area = 0;
  Scalar eps_stitch = 0;
};

/// Map per-face partitions back to 3D and stitch bisectors across edges.
/// Crossings that disagree by less than eps_stitch are snapped to their
/// midpoint; larger gaps are recorded as breakpoints, never repaired.
SurfaceVoronoiDiagram assemble(const TriangleMesh& mesh,
                               const std::vector<FacePartition>& partitions);

struct ConsistenceReport {
  Scalar max_mismatch = 0;
  std::vector<BisectorCrossing> breakpoints;
  bool ok(Scalar eps) const { return breakpoints.empty() && max_mismatch <= eps; }
};

ConsistenceReport check_consistence(const SurfaceVoronoiDiagram& vd);

struct ConnectednessReport {
  std::map<int, int> components_per_site;
  Scalar uncovered_area_rel = 0;
  bool ok() const {
    for (const auto& [site, n] : components_per_site)
      if (n != 1) return false;
    return uncovered_area_rel <= 1e-6;
  }
};

ConnectednessReport check_connectedness(const SurfaceVoronoiDiagram& vd, const TriangleMesh& mesh);

struct CompatibilityReport {
  Scalar disagreement_area_rel = 0;  // decisive label mismatches, area weighted
  long samples = 0;
  long mismatched_samples = 0;
};

/// Compare diagram labels on a planar convex mesh against direct argmin of
/// the configured distance at dense sample points.
CompatibilityReport check_compatibility(const SurfaceVoronoiDiagram& vd, const TriangleMesh& mesh,
                                        const SiteSet& sites, const SolverConfig& solver,
                                        int samples_per_face = 32);

struct DualMesh {
  std::vector<Vec3> vertices;          // one per site with a cell
  std::vector<int> vertex_site;        // dual vertex -> site id
  std::vector<Vec3i> faces;
  int non_generic_junctions = 0;       // >=4 cells meeting at a point
  int boundary_skipped = 0;            // junctions touching open-boundary cells
};

/// Dual of the diagram: one vertex per site, one triangle per triple
/// junction.  Non-generic junctions are fan-resolved in site-id order and
/// counted, never fatal.
DualMesh extract_dual(const SurfaceVoronoiDiagram& vd, const TriangleMesh& mesh,
                      const SiteSet& sites);

/// Contributing-site count per face (sites owning at least one region).
std::vector<int> cell_source_histogram(const std::vector<FacePartition>& partitions);

// --- exports ----------------------------------------------------------------

void export_cells_obj(const std::string& path, const SurfaceVoronoiDiagram& vd);
void export_bisectors_obj(const std::string& path, const SurfaceVoronoiDiagram& vd);
void export_dual_obj(const std::string& path, const DualMesh& dual);
void write_diagnostics_json(const std::string& path, const SurfaceVoronoiDiagram& vd,
                            const std::map<std::string, Scalar>& extra = {});

}  // namespace sv
