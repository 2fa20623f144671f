#pragma once

#include "sv/geom.hpp"
#include "sv/mesh.hpp"
#include "sv/solvers.hpp"

#include <cmath>
#include <map>
#include <random>
#include <vector>

namespace fixtures {

using sv::Scalar;
using sv::Vec2;
using sv::Vec3;
using sv::Vec3i;

// --- planar meshes ----------------------------------------------------------

/// Rectangle [0,w]x[0,h] in the z=0 plane, nx*ny cells, two triangles each.
inline sv::TriangleMesh grid_mesh(int nx, int ny, Scalar w = 1, Scalar h = 1) {
  std::vector<Vec3> verts;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      verts.emplace_back(w * i / nx, h * j / ny, 0);
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Vec3i> faces;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      faces.emplace_back(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1));
      faces.emplace_back(vid(i, j), vid(i + 1, j + 1), vid(i, j + 1));
    }
  }
  return sv::build_mesh(std::move(verts), std::move(faces));
}

/// Random planar convex triangulation of a rectangle: jittered interior
/// vertices, random diagonals.  Deterministic in the seed.
inline sv::TriangleMesh jittered_grid_mesh(int nx, int ny, std::uint64_t seed, Scalar w = 1,
                                           Scalar h = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> uni(-0.3, 0.3);
  std::vector<Vec3> verts;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Scalar x = w * i / nx, y = h * j / ny;
      if (i > 0 && i < nx) x += uni(rng) * w / nx;
      if (j > 0 && j < ny) y += uni(rng) * h / ny;
      verts.emplace_back(x, y, 0);
    }
  }
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Vec3i> faces;
  std::bernoulli_distribution flip(0.5);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      if (flip(rng)) {
        faces.emplace_back(a, b, c);
        faces.emplace_back(a, c, d);
      } else {
        faces.emplace_back(a, b, d);
        faces.emplace_back(b, c, d);
      }
    }
  }
  return sv::build_mesh(std::move(verts), std::move(faces));
}

// --- closed meshes ----------------------------------------------------------

inline sv::TriangleMesh icosphere(int subdiv, Scalar radius = 1) {
  const Scalar t = (1 + std::sqrt(Scalar(5))) / 2;
  std::vector<Vec3> verts = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  std::vector<Vec3i> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                              {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                              {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                              {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdiv; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      const auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      verts.push_back(Scalar(0.5) * (verts[a] + verts[b]));
      midpoint[key] = static_cast<int>(verts.size()) - 1;
      return midpoint[key];
    };
    std::vector<Vec3i> next;
    for (const Vec3i& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.emplace_back(f[0], ab, ca);
      next.emplace_back(f[1], bc, ab);
      next.emplace_back(f[2], ca, bc);
      next.emplace_back(ab, bc, ca);
    }
    faces = std::move(next);
  }
  for (Vec3& v : verts) v = radius * v.normalized();
  return sv::build_mesh(std::move(verts), std::move(faces));
}

inline sv::TriangleMesh torus_mesh(int nu, int nv, Scalar R = 2, Scalar r = 0.7) {
  std::vector<Vec3> verts;
  for (int i = 0; i < nu; ++i) {
    const Scalar u = 2 * M_PI * i / nu;
    for (int j = 0; j < nv; ++j) {
      const Scalar v = 2 * M_PI * j / nv;
      verts.emplace_back((R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u),
                         r * std::sin(v));
    }
  }
  auto vid = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  std::vector<Vec3i> faces;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      faces.emplace_back(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1));
      faces.emplace_back(vid(i, j), vid(i + 1, j + 1), vid(i, j + 1));
    }
  }
  return sv::build_mesh(std::move(verts), std::move(faces));
}

/// Closed thin slab: a grid sheet duplicated at z = thickness with opposite
/// orientation, stitched along the boundary.  The leaf-style stress case for
/// Euclidean-driven diagrams.
inline sv::TriangleMesh thin_sheet_mesh(int nx, int ny, Scalar thickness = 0.002, Scalar w = 1,
                                        Scalar h = 1) {
  std::vector<Vec3> verts;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      verts.emplace_back(w * i / nx, h * j / ny, 0);
  const int top0 = static_cast<int>(verts.size());
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      verts.emplace_back(w * i / nx, h * j / ny, thickness);
  auto lo = [&](int i, int j) { return j * (nx + 1) + i; };
  auto hi = [&](int i, int j) { return top0 + j * (nx + 1) + i; };
  std::vector<Vec3i> faces;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      faces.emplace_back(lo(i, j), lo(i + 1, j + 1), lo(i + 1, j));  // bottom, faces -z
      faces.emplace_back(lo(i, j), lo(i, j + 1), lo(i + 1, j + 1));
      faces.emplace_back(hi(i, j), hi(i + 1, j), hi(i + 1, j + 1));  // top, faces +z
      faces.emplace_back(hi(i, j), hi(i + 1, j + 1), hi(i, j + 1));
    }
  }
  for (int i = 0; i < nx; ++i) {
    faces.emplace_back(lo(i, 0), lo(i + 1, 0), hi(i, 0));
    faces.emplace_back(lo(i + 1, 0), hi(i + 1, 0), hi(i, 0));
    faces.emplace_back(lo(i + 1, ny), lo(i, ny), hi(i, ny));
    faces.emplace_back(lo(i + 1, ny), hi(i, ny), hi(i + 1, ny));
  }
  for (int j = 0; j < ny; ++j) {
    faces.emplace_back(lo(0, j + 1), lo(0, j), hi(0, j));
    faces.emplace_back(lo(0, j + 1), hi(0, j), hi(0, j + 1));
    faces.emplace_back(lo(nx, j), lo(nx, j + 1), hi(nx, j));
    faces.emplace_back(lo(nx, j + 1), hi(nx, j + 1), hi(nx, j));
  }
  return sv::build_mesh(std::move(verts), std::move(faces));
}

// --- sites ------------------------------------------------------------------

/// Point site at (or nearest to) a 3D position.
inline sv::Site site_at(const sv::TriangleMesh& mesh, int id, const Vec3& p, Scalar weight = 0) {
  const int f = mesh.locate_closest_face(p);
  const Vec3 q = sv::closest_point_on_triangle(p, mesh.corner(f, 0), mesh.corner(f, 1),
                                               mesh.corner(f, 2));
  const Vec3 &a = mesh.corner(f, 0), &b = mesh.corner(f, 1), &c = mesh.corner(f, 2);
  const Vec3 v0 = b - a, v1 = c - a, v2 = q - a;
  const Scalar d00 = v0.dot(v0), d01 = v0.dot(v1), d11 = v1.dot(v1);
  const Scalar d20 = v2.dot(v0), d21 = v2.dot(v1);
  const Scalar denom = d00 * d11 - d01 * d01;
  Scalar v = (d11 * d20 - d01 * d21) / denom;
  Scalar w = (d00 * d21 - d01 * d20) / denom;
  v = std::clamp<Scalar>(v, 0, 1);
  w = std::clamp<Scalar>(w, 0, 1 - v);
  sv::Site s;
  s.id = id;
  s.kind = sv::Site::Kind::Point;
  s.face = f;
  s.bary = Vec3(1 - v - w, v, w);
  s.weight = weight;
  return s;
}

inline sv::SiteSet sites_at(const sv::TriangleMesh& mesh, const std::vector<Vec3>& positions,
                            const std::vector<Scalar>& weights = {}) {
  sv::SiteSet set;
  for (size_t i = 0; i < positions.size(); ++i)
    set.sites.push_back(site_at(mesh, static_cast<int>(i), positions[i],
                                i < weights.size() ? weights[i] : 0));
  return set;
}

/// Dart-throwing blue-noise sites: no two sites closer than ~0.75 of the
/// uniform spacing.  Deterministic in the seed.
inline sv::SiteSet blue_noise_sites(const sv::TriangleMesh& mesh, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> uni(0, 1);
  std::vector<Scalar> cumulative(mesh.num_faces());
  Scalar acc = 0;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    acc += mesh.face_area(f);
    cumulative[f] = acc;
  }
  const Scalar min_dist = Scalar(0.75) * std::sqrt(acc / count);

  // spatial hash over cells of size min_dist
  std::map<std::array<long, 3>, std::vector<int>> grid;
  auto cell_of = [&](const Vec3& p) {
    return std::array<long, 3>{static_cast<long>(std::floor(p.x() / min_dist)),
                               static_cast<long>(std::floor(p.y() / min_dist)),
                               static_cast<long>(std::floor(p.z() / min_dist))};
  };
  std::vector<Vec3> accepted;
  sv::SiteSet set;
  int attempts = 0;
  while (static_cast<int>(accepted.size()) < count && attempts < count * 60) {
    ++attempts;
    const Scalar pick = uni(rng) * acc;
    const int f = static_cast<int>(
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
    const Scalar r1 = std::sqrt(uni(rng)), r2 = uni(rng);
    const Vec3 bary(1 - r1, r1 * (1 - r2), r1 * r2);
    const Vec3 p = bary[0] * mesh.corner(f, 0) + bary[1] * mesh.corner(f, 1) +
                   bary[2] * mesh.corner(f, 2);
    const auto c = cell_of(p);
    bool ok = true;
    for (long dx = -1; dx <= 1 && ok; ++dx)
      for (long dy = -1; dy <= 1 && ok; ++dy)
        for (long dz = -1; dz <= 1 && ok; ++dz) {
          const auto it = grid.find({c[0] + dx, c[1] + dy, c[2] + dz});
          if (it == grid.end()) continue;
          for (int idx : it->second)
            if ((p - accepted[idx]).norm() < min_dist) {
              ok = false;
              break;
            }
        }
    if (!ok) continue;
    grid[c].push_back(static_cast<int>(accepted.size()));
    accepted.push_back(p);
    sv::Site s;
    s.id = static_cast<int>(set.sites.size());
    s.face = f;
    s.bary = bary;
    set.sites.push_back(s);
  }
  return set;
}

inline std::vector<Vec3> site_positions(const sv::TriangleMesh& mesh, const sv::SiteSet& sites) {
  std::vector<Vec3> out;
  for (const auto& s : sites.sites) out.push_back(s.position(mesh));
  return out;
}

}  // namespace fixtures
