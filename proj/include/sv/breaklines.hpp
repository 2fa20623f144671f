#pragma once

#include "sv/mesh.hpp"
#include "sv/types.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sv {

/// User curves that no Voronoi cell may cross.  Two mechanisms:
/// segments running along mesh edges block propagation across those edges;
/// segments interior to a face become vertical barrier planes there.
struct BreaklineSet {
  std::vector<std::vector<Vec3>> polylines;

  bool empty() const { return polylines.empty(); }
};

struct FaceBarrier {
  Vec3 p0, p1;  // 3D endpoints of the in-face segment
};

/// Breaklines resolved against a mesh.
struct ResolvedBreaklines {
  std::unordered_set<std::uint64_t> blocked_edges;
  std::unordered_map<int, std::vector<FaceBarrier>> face_barriers;

  bool edge_blocked(int a, int b) const {
    return blocked_edges.count(edge_key(a, b)) != 0;
  }
  const std::vector<FaceBarrier>* barriers_for(int face) const {
    const auto it = face_barriers.find(face);
    return it == face_barriers.end() ? nullptr : &it->second;
  }
  bool empty() const { return blocked_edges.empty() && face_barriers.empty(); }
};

/// Same text schema as curve sites: `c x1 y1 z1 x2 y2 z2 ...` per line.
BreaklineSet load_breaklines(const std::string& path);

ResolvedBreaklines resolve_breaklines(const BreaklineSet& lines, const TriangleMesh& mesh);

}  // namespace sv
