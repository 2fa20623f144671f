#pragma once

#include "sv/breaklines.hpp"
#include "sv/mesh.hpp"
#include "sv/propagation.hpp"

#include <cstdint>
#include <vector>

namespace sv {

/// Plane d = a x + b y + c over a face's unfolding frame, interpolating one
/// site's squared-distance triple at the three corners.
struct LiftedPlane {
  int site = -1;
  Scalar a = 0, b = 0, c = 0;

  Scalar eval(Scalar x, Scalar y) const { return a * x + b * y + c; }
  Scalar eval(const Vec2& p) const { return eval(p.x(), p.y()); }
};

LiftedPlane lift_plane(const UnfoldFrame& frame, const DistanceTriple& triple);

/// Lower envelope of lifted planes over a convex base polygon, maintained as
/// a truncated vertical prism under incremental half-plane cutting.
class LowerEnvelope {
 public:
  struct Vertex {
    Vec3 pos;  // (x, y, d)
    std::array<int, 3> planes;
    bool alive = true;
  };
  struct Edge {
    int v0 = -1, v1 = -1;
    int p0 = -1, p1 = -1;
    bool alive = true;
  };

  /// Prism over a CCW convex base, truncated at +-d_max.  Registers one wall
  /// plane per base edge plus the top and bottom planes.
  LowerEnvelope(std::vector<Vec2> base, Scalar d_max);

  /// Register plane and cut.  Returns the plane id; query contributing() to
  /// see whether the cut changed the envelope.
  int cut(const LiftedPlane& plane);

  int num_walls() const { return nwalls_; }
  int top_plane() const { return nwalls_; }
  int bottom_plane() const { return nwalls_ + 1; }
  bool is_lifted(int plane_id) const { return plane_id >= nwalls_ + 2; }
  const LiftedPlane& lifted(int plane_id) const { return lifted_[plane_id - nwalls_ - 2]; }
  int site_of(int plane_id) const { return lifted(plane_id).site; }
  bool contributing(int plane_id) const { return contributing_[plane_id - nwalls_ - 2]; }
  int num_lifted() const { return static_cast<int>(lifted_.size()); }

  const std::vector<Vertex>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vec2>& base() const { return base_; }
  Scalar d_max() const { return d_max_; }
  Scalar plane_eps() const { return eps_; }
  std::uint64_t ops() const { return ops_; }

  int alive_vertex_count() const;

 private:
  int add_vertex(const Vec3& pos, int pa, int pb, int pc);

  std::vector<Vec2> base_;
  Scalar d_max_ = 0;
  Scalar eps_ = 0;       // on-plane classification band
  Scalar xy_eps_ = 0;    // positional dedupe in the base plane
  int nwalls_ = 0;
  std::vector<LiftedPlane> lifted_;
  std::vector<char> contributing_;
  std::vector<Vertex> verts_;
  std::vector<Edge> edges_;
  std::uint64_t ops_ = 0;
};

LowerEnvelope init_prism(const UnfoldFrame& frame, Scalar d_max);

/// Per-face slice of the diagram: convex regions labeled by site plus the
/// bisector segments between them, all in frame coordinates.
struct FacePartition {
  struct Region {
    int site = -1;
    std::vector<Vec2> poly;  // CCW
  };
  struct BisectorSeg {
    int site_a = -1, site_b = -1;
    Vec2 p0, p1;
  };

  int face = -1;
  std::vector<Region> regions;
  std::vector<BisectorSeg> bisectors;

  Scalar region_area() const;
};

FacePartition extract_partition(const LowerEnvelope& env, const UnfoldFrame& frame);

/// Vertical barrier through a segment, in frame coordinates.  Sides are the
/// sign of the cross product with the segment direction.
struct BarrierPlane {
  Vec2 p0, p1;

  Scalar side(const Vec2& q) const {
    const Vec2 d = p1 - p0;
    return d.x() * (q.y() - p0.y()) - d.y() * (q.x() - p0.x());
  }
};

/// Validates that the segment lies inside the frame triangle.
BarrierPlane barrier_plane(const UnfoldFrame& frame, const Vec2& s0, const Vec2& s1);

/// Full per-face partition step: lazily builds the prism (only when a second
/// survivor exists), applies breakline barriers by splitting the base and
/// assigning each survivor to the side of its propagation entry.
FacePartition partition_face(const UnfoldFrame& frame, const std::vector<SurvivorEntry>& survivors,
                             const std::vector<FaceBarrier>* barriers, Scalar d_max);

}  // namespace sv
