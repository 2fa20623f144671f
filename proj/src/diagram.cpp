#include "sv/diagram.hpp"

#include "sv/geom.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

namespace sv {

namespace {

struct Crossing {
  std::uint64_t edge;
  int face;
  int seg;   // index into the face's segment list
  int end;   // 0 or 1
  int site_a, site_b;
  Scalar t;  // parameter along the canonical edge direction
};

struct SegRec {
  int site_a, site_b;
  std::array<Vec3, 2> p;
};

}  // namespace

SurfaceVoronoiDiagram assemble(const TriangleMesh& mesh,
                               const std::vector<FacePartition>& partitions) {
  if (static_cast<int>(partitions.size()) != mesh.num_faces())
    throw MissingFace("expected one partition per face");
  for (int f = 0; f < mesh.num_faces(); ++f)
    if (partitions[f].face != f) throw MissingFace("partition/face mismatch at " + std::to_string(f));

  SurfaceVoronoiDiagram vd;
  vd.mesh_area = mesh.total_area();
  vd.eps_stitch = 1e-9 * mesh.bbox_diag;

  std::vector<std::vector<SegRec>> face_segs(mesh.num_faces());
  std::vector<Crossing> crossings;

  Scalar covered = 0;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const UnfoldFrame frame = unfold(mesh, f);
    for (const auto& region : partitions[f].regions) {
      if (region.site < 0) continue;
      CellFragment frag;
      frag.face = f;
      frag.area = polygon_signed_area(region.poly);
      for (const Vec2& p : region.poly) frag.poly.push_back(frame.to3d(p));
      covered += frag.area;
      vd.cells[region.site].push_back(std::move(frag));
    }

    auto& segs = face_segs[f];
    for (const auto& b : partitions[f].bisectors) {
      SegRec rec;
      rec.site_a = b.site_a;
      rec.site_b = b.site_b;
      rec.p = {frame.to3d(b.p0), frame.to3d(b.p1)};
      segs.push_back(rec);
    }

    // locate segment endpoints on the face's edges
    const Vec3i& tri = mesh.faces[f];
    for (int si = 0; si < static_cast<int>(segs.size()); ++si) {
      for (int end = 0; end < 2; ++end) {
        const Vec2 p = frame.to2d(segs[si].p[end]);
        for (int j = 0; j < 3; ++j) {
          const Vec2 a = frame.uv[j], b = frame.uv[(j + 1) % 3];
          const Scalar len = (b - a).norm();
          const Vec2 dir = (b - a) / len;
          const Scalar t = (p - a).dot(dir) / len;
          if (t < -1e-9 || t > 1 + 1e-9) continue;
          const Vec2 foot = a + t * len * dir;
          if ((p - foot).norm() > 1e-7 * len) continue;
          const int va = tri[j], vb = tri[(j + 1) % 3];
          Crossing c;
          c.edge = edge_key(va, vb);
          c.face = f;
          c.seg = si;
          c.end = end;
          c.site_a = segs[si].site_a;
          c.site_b = segs[si].site_b;
          c.t = va < vb ? t : 1 - t;
          crossings.push_back(c);
        }
      }
    }
  }
  vd.diagnostics.coverage_rel_err = std::abs(covered - vd.mesh_area) / vd.mesh_area;

  for (const auto& [site, frags] : vd.cells) {
    Scalar area = 0;
    for (const CellFragment& fr : frags) area += fr.area;
    vd.cell_area[site] = area;
  }

  // stitch: match crossings of the same (edge, site pair) across the two
  // incident faces; snap below eps_stitch, report above
  std::map<std::uint64_t, std::vector<int>> by_edge;
  for (int i = 0; i < static_cast<int>(crossings.size()); ++i)
    by_edge[crossings[i].edge].push_back(i);

  for (auto& [ekey, idxs] : by_edge) {
    const auto it = mesh.edge_map.find(ekey);
    if (it == mesh.edge_map.end() || it->second.count < 2) continue;  // boundary
    const int f0 = it->second.face[0];

    std::map<std::pair<int, int>, std::array<std::vector<int>, 2>> by_pair;
    for (int i : idxs) {
      const Crossing& c = crossings[i];
      by_pair[{c.site_a, c.site_b}][c.face == f0 ? 0 : 1].push_back(i);
    }
    for (auto& [pair, sides] : by_pair) {
      auto by_t = [&](int x, int y) { return crossings[x].t < crossings[y].t; };
      std::sort(sides[0].begin(), sides[0].end(), by_t);
      std::sort(sides[1].begin(), sides[1].end(), by_t);
      const size_t n = std::min(sides[0].size(), sides[1].size());
      for (size_t k = 0; k < n; ++k) {
        const Crossing& c0 = crossings[sides[0][k]];
        const Crossing& c1 = crossings[sides[1][k]];
        Vec3& p0 = face_segs[c0.face][c0.seg].p[c0.end];
        Vec3& p1 = face_segs[c1.face][c1.seg].p[c1.end];
        const Scalar gap = (p0 - p1).norm();
        vd.diagnostics.max_edge_mismatch = std::max(vd.diagnostics.max_edge_mismatch, gap);
        BisectorCrossing rec;
        rec.edge = ekey;
        rec.site_a = pair.first;
        rec.site_b = pair.second;
        rec.mismatch = gap;
        rec.point = Scalar(0.5) * (p0 + p1);
        rec.matched = true;
        if (gap <= vd.eps_stitch) {
          p0 = p1 = rec.point;
        } else {
          vd.diagnostics.breakpoints.push_back(rec);
        }
      }
      for (int side = 0; side < 2; ++side) {
        for (size_t k = n; k < sides[side].size(); ++k) {
          const Crossing& c = crossings[sides[side][k]];
          BisectorCrossing rec;
          rec.edge = ekey;
          rec.site_a = pair.first;
          rec.site_b = pair.second;
          rec.mismatch = std::numeric_limits<Scalar>::infinity();
          rec.point = face_segs[c.face][c.seg].p[c.end];
          rec.matched = false;
          vd.diagnostics.breakpoints.push_back(rec);
        }
      }
    }
  }

  // chain segments into polylines per site pair
  const Scalar join_eps = 4 * vd.eps_stitch;
  std::map<std::pair<int, int>, std::vector<std::vector<Vec3>>> chains;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    for (const SegRec& s : face_segs[f]) {
      auto& lines = chains[{s.site_a, s.site_b}];
      bool joined = false;
      for (auto& line : lines) {
        if ((line.back() - s.p[0]).norm() <= join_eps) {
          line.push_back(s.p[1]);
          joined = true;
        } else if ((line.back() - s.p[1]).norm() <= join_eps) {
          line.push_back(s.p[0]);
          joined = true;
        } else if ((line.front() - s.p[0]).norm() <= join_eps) {
          line.insert(line.begin(), s.p[1]);
          joined = true;
        } else if ((line.front() - s.p[1]).norm() <= join_eps) {
          line.insert(line.begin(), s.p[0]);
          joined = true;
        }
        if (joined) break;
      }
      if (!joined) lines.push_back({s.p[0], s.p[1]});
    }
  }
  for (auto& [pair, lines] : chains) {
    for (auto& line : lines) {
      SurfaceVoronoiDiagram::BisectorPolyline pl;
      pl.site_a = pair.first;
      pl.site_b = pair.second;
      pl.pts = std::move(line);
      vd.bisectors.push_back(std::move(pl));
    }
  }
  return vd;
}

ConsistenceReport check_consistence(const SurfaceVoronoiDiagram& vd) {
  ConsistenceReport rep;
  rep.max_mismatch = vd.diagnostics.max_edge_mismatch;
  rep.breakpoints = vd.diagnostics.breakpoints;
  for (const auto& bp : rep.breakpoints)
    if (bp.mismatch > rep.max_mismatch && std::isfinite(bp.mismatch))
      rep.max_mismatch = bp.mismatch;
  return rep;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ConnectednessReport check_connectedness(const SurfaceVoronoiDiagram& vd, const TriangleMesh& mesh) {
  ConnectednessReport rep;

  // fragment nodes per site
  struct Node {
    int site, face, index;  // index within vd.cells[site]
  };
  std::vector<Node> nodes;
  std::map<int, std::vector<int>> site_nodes;
  std::unordered_map<std::uint64_t, std::vector<int>> face_site_nodes;  // (face,site) -> nodes
  auto fs_key = [](int face, int site) {
    return (static_cast<std::uint64_t>(face) << 32) | static_cast<std::uint32_t>(site);
  };
  for (const auto& [site, frags] : vd.cells) {
    for (int i = 0; i < static_cast<int>(frags.size()); ++i) {
      const int id = static_cast<int>(nodes.size());
      nodes.push_back({site, frags[i].face, i});
      site_nodes[site].push_back(id);
      face_site_nodes[fs_key(frags[i].face, site)].push_back(id);
    }
  }
  UnionFind uf(static_cast<int>(nodes.size()));

  // trace of a fragment on a mesh edge, as an interval of the edge parameter
  auto edge_trace = [&](const CellFragment& frag, const Vec3& a, const Vec3& b, Scalar& lo,
                        Scalar& hi) {
    const Scalar len = (b - a).norm();
    const Scalar tol = 1e-7 * len;
    lo = 1;
    hi = 0;
    for (const Vec3& p : frag.poly) {
      if (point_segment_distance(p, a, b) > tol) continue;
      const Scalar t = (p - a).dot(b - a) / (len * len);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    return lo <= hi;
  };

  for (const auto& [ekey, ef] : mesh.edge_map) {
    if (ef.count < 2) continue;
    const int va = static_cast<int>(ekey >> 32), vb = static_cast<int>(ekey & 0xffffffffu);
    const Vec3 &pa = mesh.vertices[va], &pb = mesh.vertices[vb];
    for (const auto& [site, ids] : site_nodes) {
      const auto it0 = face_site_nodes.find(fs_key(ef.face[0], site));
      const auto it1 = face_site_nodes.find(fs_key(ef.face[1], site));
      if (it0 == face_site_nodes.end() || it1 == face_site_nodes.end()) continue;
      for (int n0 : it0->second) {
        Scalar l0, h0;
        if (!edge_trace(vd.cells.at(site)[nodes[n0].index], pa, pb, l0, h0)) continue;
        for (int n1 : it1->second) {
          Scalar l1, h1;
          if (!edge_trace(vd.cells.at(site)[nodes[n1].index], pa, pb, l1, h1)) continue;
          if (std::max(l0, l1) <= std::min(h0, h1) + 1e-7) uf.unite(n0, n1);
        }
      }
    }
  }

  for (const auto& [site, ids] : site_nodes) {
    std::vector<int> roots;
    for (int id : ids) {
      const int r = uf.find(id);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    rep.components_per_site[site] = static_cast<int>(roots.size());
  }

  // uncovered area: per-face deficit of fragment area vs face area
  std::vector<Scalar> face_cover(mesh.num_faces(), 0);
  for (const auto& [site, frags] : vd.cells)
    for (const CellFragment& fr : frags) face_cover[fr.face] += fr.area;
  Scalar uncovered = 0;
  for (int f = 0; f < mesh.num_faces(); ++f)
    uncovered += std::max<Scalar>(0, mesh.face_area(f) - face_cover[f]);
  rep.uncovered_area_rel = uncovered / vd.mesh_area;
  return rep;
}

namespace {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Vec2> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const size_t start = hull.size();
    for (const Vec2& p : pts) {
      while (hull.size() >= start + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
        hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return hull;
}

}  // namespace

CompatibilityReport check_compatibility(const SurfaceVoronoiDiagram& vd, const TriangleMesh& mesh,
                                        const SiteSet& sites, const SolverConfig& solver,
                                        int samples_per_face) {
  // planar?
  const Vec3 n = mesh.face_normal(0);
  const Vec3 origin = mesh.corner(0, 0);
  Scalar max_dev = 0;
  for (const Vec3& v : mesh.vertices) max_dev = std::max(max_dev, std::abs((v - origin).dot(n)));
  if (max_dev > 1e-9 * mesh.bbox_diag)
    throw NonPlanarInput("compatibility check requires a planar mesh");

  // convex region?
  Vec3 ex = (mesh.corner(0, 1) - mesh.corner(0, 0)).normalized();
  const Vec3 ey = n.cross(ex);
  std::vector<Vec2> flat;
  flat.reserve(mesh.vertices.size());
  for (const Vec3& v : mesh.vertices)
    flat.emplace_back((v - origin).dot(ex), (v - origin).dot(ey));
  const Scalar hull_area = std::abs(polygon_signed_area(convex_hull(flat)));
  if (hull_area > vd.mesh_area * (1 + 1e-6))
    throw NonPlanarInput("compatibility check requires a convex planar region");

  // per-face fragment lookup in frame coordinates
  struct FlatFrag {
    int site;
    std::vector<Vec2> poly;
  };
  std::vector<std::vector<FlatFrag>> per_face(mesh.num_faces());
  std::vector<UnfoldFrame> frames(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f) frames[f] = unfold(mesh, f);
  for (const auto& [site, frags] : vd.cells) {
    for (const CellFragment& fr : frags) {
      FlatFrag ff;
      ff.site = site;
      for (const Vec3& p : fr.poly) ff.poly.push_back(frames[fr.face].to2d(p));
      per_face[fr.face].push_back(std::move(ff));
    }
  }

  CompatibilityReport rep;
  const Scalar margin = 1e-9 * mesh.bbox_diag * mesh.bbox_diag;
  const int k = std::max(2, static_cast<int>(std::ceil(std::sqrt(2.0 * samples_per_face))));
  Scalar bad_area = 0;

  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Scalar tol_in = 1e-9 * mesh.bbox_diag;
    int nsamp = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; i + j < k; ++j) ++nsamp;
    const Scalar w = mesh.face_area(f) / nsamp;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; i + j < k; ++j) {
        const Scalar u = (i + Scalar(1) / 3) / k;
        const Scalar v = (j + Scalar(1) / 3) / k;
        const Vec3 x = (1 - u - v) * mesh.corner(f, 0) + u * mesh.corner(f, 1) + v * mesh.corner(f, 2);
        ++rep.samples;

        int label = -1;
        const Vec2 p2 = frames[f].to2d(x);
        for (const FlatFrag& ff : per_face[f]) {
          if (point_in_convex_polygon(p2, ff.poly, tol_in)) {
            label = ff.site;
            break;
          }
        }
        if (label < 0) {
          for (const FlatFrag& ff : per_face[f]) {
            if (point_in_convex_polygon(p2, ff.poly, 1e-6 * mesh.bbox_diag)) {
              label = ff.site;
              break;
            }
          }
        }

        Scalar best = std::numeric_limits<Scalar>::max();
        for (const Site& s : sites.sites)
          best = std::min(best, squared_distance(solver, s, x, mesh));
        Scalar got = std::numeric_limits<Scalar>::max();
        if (label >= 0) got = squared_distance(solver, sites.sites[label], x, mesh);

        if (label < 0 || got > best + margin) {
          ++rep.mismatched_samples;
          bad_area += w;
        }
      }
    }
  }
  rep.disagreement_area_rel = bad_area / vd.mesh_area;
  return rep;
}

DualMesh extract_dual(const SurfaceVoronoiDiagram& vd, const TriangleMesh& mesh,
                      const SiteSet& sites) {
  DualMesh dual;

  // sites whose cells touch an open boundary edge
  std::vector<char> touches_boundary(sites.size(), 0);
  for (const auto& [ekey, ef] : mesh.edge_map) {
    if (ef.count >= 2) continue;
    const int va = static_cast<int>(ekey >> 32), vb = static_cast<int>(ekey & 0xffffffffu);
    const Vec3 &pa = mesh.vertices[va], &pb = mesh.vertices[vb];
    const Scalar tol = 1e-7 * (pb - pa).norm();
    for (const auto& [site, frags] : vd.cells) {
      if (touches_boundary[site]) continue;
      for (const CellFragment& fr : frags) {
        if (fr.face != ef.face[0]) continue;
        for (const Vec3& p : fr.poly) {
          if (point_segment_distance(p, pa, pb) <= tol) {
            touches_boundary[site] = 1;
            break;
          }
        }
        if (touches_boundary[site]) break;
      }
    }
  }

  // cluster bisector endpoints; a cluster gathering >= 3 sites is a junction
  struct Cluster {
    Vec3 seed;
    std::vector<int> sites;
  };
  std::vector<Cluster> clusters;
  const Scalar radius = 8 * vd.eps_stitch;
  const Scalar cell = std::max(radius * 2, 1e-30);
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  auto cell_key = [&](long ix, long iy, long iz) {
    std::uint64_t h = 1469598103934665603ull;
    for (long q : {ix, iy, iz}) {
      h ^= static_cast<std::uint64_t>(q) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  };
  auto add_point = [&](const Vec3& p, int sa, int sb) {
    const long ix = static_cast<long>(std::floor(p.x() / cell));
    const long iy = static_cast<long>(std::floor(p.y() / cell));
    const long iz = static_cast<long>(std::floor(p.z() / cell));
    int found = -1;
    for (long dx = -1; dx <= 1 && found < 0; ++dx)
      for (long dy = -1; dy <= 1 && found < 0; ++dy)
        for (long dz = -1; dz <= 1 && found < 0; ++dz) {
          const auto it = grid.find(cell_key(ix + dx, iy + dy, iz + dz));
          if (it == grid.end()) continue;
          for (int ci : it->second) {
            if ((clusters[ci].seed - p).norm() <= radius) {
              found = ci;
              break;
            }
          }
        }
    if (found < 0) {
      found = static_cast<int>(clusters.size());
      clusters.push_back({p, {}});
      grid[cell_key(ix, iy, iz)].push_back(found);
    }
    auto& ss = clusters[found].sites;
    if (std::find(ss.begin(), ss.end(), sa) == ss.end()) ss.push_back(sa);
    if (std::find(ss.begin(), ss.end(), sb) == ss.end()) ss.push_back(sb);
  };

  for (const auto& pl : vd.bisectors) {
    add_point(pl.pts.front(), pl.site_a, pl.site_b);
    add_point(pl.pts.back(), pl.site_a, pl.site_b);
    for (size_t i = 1; i + 1 < pl.pts.size(); ++i) add_point(pl.pts[i], pl.site_a, pl.site_b);
  }

  // dual vertices: sites owning at least one fragment, in id order
  std::map<int, int> site_to_dv;
  for (const auto& [site, frags] : vd.cells) {
    if (frags.empty()) continue;
    site_to_dv[site] = static_cast<int>(dual.vertices.size());
    dual.vertices.push_back(sites.sites[site].position(mesh));
    dual.vertex_site.push_back(site);
  }

  std::set<std::array<int, 3>> seen;
  for (const Cluster& cl : clusters) {
    if (cl.sites.size() < 3) continue;
    std::vector<int> ss = cl.sites;
    std::sort(ss.begin(), ss.end());
    if (ss.size() > 3) ++dual.non_generic_junctions;
    bool boundary = false;
    for (int s : ss) boundary |= touches_boundary[s] != 0;
    if (boundary) {
      ++dual.boundary_skipped;
      continue;
    }
    // fan-resolve in site-id order (a triple junction yields one triangle)
    for (size_t i = 1; i + 1 < ss.size(); ++i) {
      std::array<int, 3> tri = {ss[0], ss[i], ss[i + 1]};
      if (!seen.insert(tri).second) continue;
      if (!site_to_dv.count(tri[0]) || !site_to_dv.count(tri[1]) || !site_to_dv.count(tri[2]))
        continue;
      dual.faces.emplace_back(site_to_dv[tri[0]], site_to_dv[tri[1]], site_to_dv[tri[2]]);
    }
  }
  return dual;
}

std::vector<int> cell_source_histogram(const std::vector<FacePartition>& partitions) {
  std::vector<int> counts(partitions.size(), 0);
  for (size_t f = 0; f < partitions.size(); ++f) {
    std::vector<int> sites;
    for (const auto& r : partitions[f].regions)
      if (r.site >= 0 && std::find(sites.begin(), sites.end(), r.site) == sites.end())
        sites.push_back(r.site);
    counts[f] = static_cast<int>(sites.size());
  }
  return counts;
}

// --- exports ----------------------------------------------------------------

namespace {

void hue_color(int index, Scalar& r, Scalar& g, Scalar& b) {
  const Scalar h = std::fmod(index * 0.61803398875, 1.0) * 6;
  const Scalar x = 1 - std::abs(std::fmod(h, Scalar(2)) - 1);
  const Scalar table[6][3] = {{1, x, 0}, {x, 1, 0}, {0, 1, x}, {0, x, 1}, {x, 0, 1}, {1, 0, x}};
  const int k = std::min(5, static_cast<int>(h));
  r = table[k][0];
  g = table[k][1];
  b = table[k][2];
}

}  // namespace

void export_cells_obj(const std::string& path, const SurfaceVoronoiDiagram& vd) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  const std::string mtl_path = path.substr(0, path.rfind('.')) + ".mtl";
  {
    std::ofstream mtl(mtl_path);
    for (const auto& [site, frags] : vd.cells) {
      Scalar r, g, b;
      hue_color(site, r, g, b);
      mtl << "newmtl site_" << site << "\nKd " << r << " " << g << " " << b << "\n";
    }
  }
  const size_t slash = mtl_path.rfind('/');
  out << "mtllib " << (slash == std::string::npos ? mtl_path : mtl_path.substr(slash + 1)) << "\n";
  out.precision(17);
  int next_index = 1;
  for (const auto& [site, frags] : vd.cells) {
    out << "g site_" << site << "\nusemtl site_" << site << "\n";
    for (const CellFragment& fr : frags) {
      const int base = next_index;
      for (const Vec3& p : fr.poly) {
        out << "v " << p.x() << " " << p.y() << " " << p.z() << "\n";
        ++next_index;
      }
      for (size_t k = 1; k + 1 < fr.poly.size(); ++k)
        out << "f " << base << " " << base + k << " " << base + k + 1 << "\n";
    }
  }
}

void export_bisectors_obj(const std::string& path, const SurfaceVoronoiDiagram& vd) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  int next_index = 1;
  for (const auto& pl : vd.bisectors) {
    out << "# bisector " << pl.site_a << " " << pl.site_b << "\n";
    const int base = next_index;
    for (const Vec3& p : pl.pts) {
      out << "v " << p.x() << " " << p.y() << " " << p.z() << "\n";
      ++next_index;
    }
    out << "l";
    for (size_t k = 0; k < pl.pts.size(); ++k) out << " " << base + k;
    out << "\n";
  }
}

void export_dual_obj(const std::string& path, const DualMesh& dual) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  for (const Vec3& v : dual.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const Vec3i& f : dual.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

void write_diagnostics_json(const std::string& path, const SurfaceVoronoiDiagram& vd,
                            const std::map<std::string, Scalar>& extra) {
  nlohmann::json j;
  j["coverage_rel_err"] = vd.diagnostics.coverage_rel_err;
  j["max_edge_mismatch"] = vd.diagnostics.max_edge_mismatch;
  j["breakpoints"] = vd.diagnostics.breakpoints.size();
  nlohmann::json comp = nlohmann::json::object();
  for (const auto& [site, n] : vd.diagnostics.components_per_site)
    comp[std::to_string(site)] = n;
  j["components_per_site"] = comp;
  j["uncovered_area_rel"] = vd.diagnostics.uncovered_area_rel;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [count, faces] : vd.diagnostics.survivor_histogram)
    hist[std::to_string(count)] = faces;
  j["histogram"] = hist;
  nlohmann::json areas = nlohmann::json::object();
  for (const auto& [site, a] : vd.cell_area) areas[std::to_string(site)] = a;
  j["cell_area"] = areas;
  for (const auto& [key, val] : extra) j[key] = val;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace sv
