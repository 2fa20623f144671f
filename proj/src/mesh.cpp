#include "sv/mesh.hpp"

#include "sv/geom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sv {

namespace {

constexpr Scalar kAreaEpsRel = 1e-12;  // of bbox_diag^2

Scalar bbox_diagonal(const std::vector<Vec3>& vertices) {
  if (vertices.empty()) return 0;
  Vec3 lo = vertices.front(), hi = vertices.front();
  for (const Vec3& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

void fan_triangulate(const std::vector<int>& poly, std::vector<Vec3i>& out) {
  for (size_t k = 1; k + 1 < poly.size(); ++k)
    out.emplace_back(poly[0], poly[k], poly[k + 1]);
}

}  // namespace

Scalar TriangleMesh::face_area(int face) const {
  return triangle_area3(corner(face, 0), corner(face, 1), corner(face, 2));
}

Scalar TriangleMesh::total_area() const {
  Scalar s = 0;
  for (int f = 0; f < num_faces(); ++f) s += face_area(f);
  return s;
}

Vec3 TriangleMesh::face_normal(int face) const {
  const Vec3 n = (corner(face, 1) - corner(face, 0)).cross(corner(face, 2) - corner(face, 0));
  const Scalar len = n.norm();
  return len > 0 ? Vec3(n / len) : Vec3::Zero();
}

int TriangleMesh::neighbor(int face, int j) const {
  const Vec3i& tri = faces[face];
  const auto it = edge_map.find(edge_key(tri[j], tri[(j + 1) % 3]));
  if (it == edge_map.end()) return -1;
  for (int k = 0; k < it->second.count; ++k)
    if (it->second.face[k] != face) return it->second.face[k];
  return -1;
}

bool TriangleMesh::edge_on_boundary(int a, int b) const {
  const auto it = edge_map.find(edge_key(a, b));
  return it == edge_map.end() || it->second.count < 2;
}

int TriangleMesh::locate_closest_face(const Vec3& q) const {
  int best = -1;
  Scalar best_d = std::numeric_limits<Scalar>::max();
  for (int f = 0; f < num_faces(); ++f) {
    const Scalar d = point_triangle_distance(q, corner(f, 0), corner(f, 1), corner(f, 2));
    if (d < best_d) {
      best_d = d;
      best = f;
    }
  }
  return best;
}

TriangleMesh build_mesh(std::vector<Vec3> vertices, std::vector<Vec3i> faces) {
  TriangleMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.faces = std::move(faces);
  mesh.bbox_diag = bbox_diagonal(mesh.vertices);

  const int nv = mesh.num_vertices();
  const Scalar area_eps = kAreaEpsRel * mesh.bbox_diag * mesh.bbox_diag;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Vec3i& tri = mesh.faces[f];
    for (int j = 0; j < 3; ++j) {
      if (tri[j] < 0 || tri[j] >= nv)
        throw ParseError("face " + std::to_string(f) + " references vertex " +
                         std::to_string(tri[j]) + " out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw DegenerateFace("face " + std::to_string(f) + " repeats a vertex");
    if (mesh.face_area(f) <= area_eps)
      throw DegenerateFace("face " + std::to_string(f) + " has near-zero area");
  }

  mesh.vertex_faces.assign(nv, {});
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Vec3i& tri = mesh.faces[f];
    for (int j = 0; j < 3; ++j) {
      mesh.vertex_faces[tri[j]].push_back(f);
      auto& ef = mesh.edge_map[edge_key(tri[j], tri[(j + 1) % 3])];
      if (ef.count >= 2)
        throw NonManifoldEdge("edge (" + std::to_string(tri[j]) + "," +
                              std::to_string(tri[(j + 1) % 3]) + ") has more than two faces");
      ef.face[ef.count++] = f;
    }
  }
  return mesh;
}

namespace {

TriangleMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<Vec3> vertices;
  std::vector<Vec3i> faces;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ss >> v.x() >> v.y() >> v.z()))
        throw ParseError(path + ":" + std::to_string(lineno) + ": malformed vertex");
      vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string tok;
      while (ss >> tok) {
        // accept v, v/t, v//n, v/t/n
        const size_t slash = tok.find('/');
        const std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        int idx = 0;
        try {
          idx = std::stoi(head);
        } catch (...) {
          throw ParseError(path + ":" + std::to_string(lineno) + ": bad face index '" + tok + "'");
        }
        if (idx < 0) idx = static_cast<int>(vertices.size()) + idx + 1;  // negative = relative
        poly.push_back(idx - 1);
      }
      if (poly.size() < 3)
        throw ParseError(path + ":" + std::to_string(lineno) + ": face with <3 vertices");
      fan_triangulate(poly, faces);
    }
    // all other tags ignored (normals, texcoords, groups, comments)
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

TriangleMesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  auto next_token = [&](std::string& tok) {
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return true;
    }
    return false;
  };

  std::string tok;
  if (!next_token(tok) || tok != "OFF") throw ParseError(path + ": missing OFF header");
  long nv = -1, nf = -1, ne = -1;
  if (!next_token(tok)) throw ParseError(path + ": truncated header");
  try {
    nv = std::stol(tok);
    if (!next_token(tok)) throw ParseError("");
    nf = std::stol(tok);
    if (!next_token(tok)) throw ParseError("");
    ne = std::stol(tok);
  } catch (...) {
    throw ParseError(path + ": malformed counts");
  }
  (void)ne;
  if (nv < 0 || nf < 0) throw ParseError(path + ": negative counts");

  std::vector<Vec3> vertices(nv);
  for (long i = 0; i < nv; ++i) {
    if (!(in >> vertices[i].x() >> vertices[i].y() >> vertices[i].z()))
      throw ParseError(path + ": truncated vertex block");
  }
  std::vector<Vec3i> faces;
  faces.reserve(nf);
  for (long f = 0; f < nf; ++f) {
    int cnt = 0;
    if (!(in >> cnt) || cnt < 3) throw ParseError(path + ": malformed face record");
    std::vector<int> poly(cnt);
    for (int k = 0; k < cnt; ++k)
      if (!(in >> poly[k])) throw ParseError(path + ": truncated face block");
    fan_triangulate(poly, faces);
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
  return format == MeshFormat::OBJ ? load_obj(path) : load_off(path);
}

TriangleMesh load_mesh(const std::string& path) {
  const size_t dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  if (ext == "obj") return load_obj(path);
  if (ext == "off") return load_off(path);
  throw ParseError("unrecognized mesh extension: " + path);
}

void save_obj(const std::string& path, const TriangleMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  for (const Vec3& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const Vec3i& f : mesh.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

UnfoldFrame unfold(const TriangleMesh& mesh, int face) { return unfold(mesh, face, 0); }

UnfoldFrame unfold(const TriangleMesh& mesh, int face, int start_corner) {
  const Vec3& p0 = mesh.corner(face, start_corner % 3);
  const Vec3& p1 = mesh.corner(face, (start_corner + 1) % 3);
  const Vec3& p2 = mesh.corner(face, (start_corner + 2) % 3);

  const Scalar l01 = (p1 - p0).norm();
  if (l01 <= 0) throw DegenerateFace("face " + std::to_string(face) + " has a zero-length edge");
  const Vec3 ex = (p1 - p0) / l01;
  const Vec3 d2 = p2 - p0;
  const Scalar x2 = d2.dot(ex);
  const Vec3 perp = d2 - x2 * ex;
  const Scalar y2 = perp.norm();
  if (y2 <= 0) throw DegenerateFace("face " + std::to_string(face) + " is collinear");

  UnfoldFrame frame;
  frame.face = face;
  frame.origin = p0;
  frame.ex = ex;
  frame.ey = perp / y2;
  std::array<Vec2, 3> placed = {Vec2(0, 0), Vec2(l01, 0), Vec2(x2, y2)};
  for (int j = 0; j < 3; ++j) frame.uv[(start_corner + j) % 3] = placed[j];
  return frame;
}

}  // namespace sv
