#include "sv/breaklines.hpp"

#include "sv/geom.hpp"

#include <fstream>
#include <sstream>

namespace sv {

BreaklineSet load_breaklines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  BreaklineSet set;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag != "c")
      throw ParseError(path + ":" + std::to_string(lineno) + ": breakline records start with 'c'");
    std::vector<Scalar> nums;
    Scalar x;
    while (ss >> x) nums.push_back(x);
    if (nums.size() < 6 || nums.size() % 3 != 0)
      throw ParseError(path + ":" + std::to_string(lineno) + ": breakline needs >= 2 points");
    std::vector<Vec3> poly;
    for (size_t i = 0; i < nums.size(); i += 3) poly.emplace_back(nums[i], nums[i + 1], nums[i + 2]);
    set.polylines.push_back(std::move(poly));
  }
  return set;
}

namespace {

int match_mesh_vertex(const TriangleMesh& mesh, const Vec3& p, Scalar tol) {
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if ((mesh.vertices[v] - p).norm() <= tol) return v;
  return -1;
}

}  // namespace

ResolvedBreaklines resolve_breaklines(const BreaklineSet& lines, const TriangleMesh& mesh) {
  ResolvedBreaklines out;
  const Scalar tol = 1e-9 * mesh.bbox_diag;
  for (const auto& poly : lines.polylines) {
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
      const Vec3& a = poly[i];
      const Vec3& b = poly[i + 1];
      // A segment joining two mesh vertices of a common edge blocks that edge.
      const int va = match_mesh_vertex(mesh, a, tol);
      const int vb = match_mesh_vertex(mesh, b, tol);
      if (va >= 0 && vb >= 0 && va != vb && mesh.edge_map.count(edge_key(va, vb))) {
        out.blocked_edges.insert(edge_key(va, vb));
        continue;
      }
      // Otherwise it acts inside the face(s) containing it.  The common case
      // is a segment within a single face; a segment spanning faces is
      // attributed to the face of its midpoint.
      const int fa = mesh.locate_closest_face(a);
      const int fb = mesh.locate_closest_face(b);
      int f = fa;
      if (fa != fb) f = mesh.locate_closest_face(Scalar(0.5) * (a + b));
      out.face_barriers[f].push_back({a, b});
    }
  }
  return out;
}

}  // namespace sv
