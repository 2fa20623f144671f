#pragma once

#include "sv/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sv {

enum class MeshFormat { OBJ, OFF };

// Undirected edge key; canonical order a < b.
inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct EdgeFaces {
  std::array<int, 2> face = {-1, -1};
  int count = 0;
};

/// Indexed triangle mesh with precomputed adjacency.  Immutable after
/// construction; safe to read from multiple threads.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3i> faces;
  std::unordered_map<std::uint64_t, EdgeFaces> edge_map;
  std::vector<std::vector<int>> vertex_faces;
  Scalar bbox_diag = 0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }

  const Vec3& corner(int face, int j) const { return vertices[faces[face][j]]; }
  Scalar face_area(int face) const;
  Scalar total_area() const;
  Vec3 face_normal(int face) const;

  // Face across edge (faces[f][j], faces[f][(j+1)%3]), or -1 on boundary.
  int neighbor(int face, int j) const;
  bool edge_on_boundary(int a, int b) const;

  // Index of the face whose triangle is closest to q (brute force).
  int locate_closest_face(const Vec3& q) const;
};

/// Validate raw buffers and build adjacency.  Non-triangle faces must already
/// be triangulated; use load_mesh for file input.
TriangleMesh build_mesh(std::vector<Vec3> vertices, std::vector<Vec3i> faces);

TriangleMesh load_mesh(const std::string& path, MeshFormat format);
TriangleMesh load_mesh(const std::string& path);  // format from extension

void save_obj(const std::string& path, const TriangleMesh& mesh);

/// Rigid 2D placement of one face: uv[j] are the planar coordinates of the
/// face's j-th corner, with corner 0 at the origin, corner 1 on +x and
/// corner 2 above the x axis.
struct UnfoldFrame {
  int face = -1;
  std::array<Vec2, 3> uv;
  // 3D frame mapping uv back onto the face plane.
  Vec3 origin, ex, ey;

  Vec3 to3d(const Vec2& p) const { return origin + p.x() * ex + p.y() * ey; }
  Vec2 to2d(const Vec3& p) const {
    const Vec3 d = p - origin;
    return Vec2(d.dot(ex), d.dot(ey));
  }
};

UnfoldFrame unfold(const TriangleMesh& mesh, int face);

/// Alternate unfolding convention: the role of "corner 0" is taken by
/// start_corner.  uv stays indexed by the face's own corner order.
UnfoldFrame unfold(const TriangleMesh& mesh, int face, int start_corner);

}  // namespace sv
