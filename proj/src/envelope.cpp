#include "sv/envelope.hpp"

#include "sv/geom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sv {

LiftedPlane lift_plane(const UnfoldFrame& frame, const DistanceTriple& triple) {
  Mat3 A;
  for (int j = 0; j < 3; ++j) A.row(j) << frame.uv[j].x(), frame.uv[j].y(), 1;
  Scalar scale = 0;
  for (int j = 0; j < 3; ++j) scale = std::max(scale, (frame.uv[(j + 1) % 3] - frame.uv[j]).squaredNorm());
  if (std::abs(A.determinant()) <= 1e-12 * scale)
    throw SingularFrame("frame for face " + std::to_string(frame.face) + " is degenerate");
  const Vec3 rhs(triple.d2[0], triple.d2[1], triple.d2[2]);
  const Vec3 coeff = A.partialPivLu().solve(rhs);
  LiftedPlane plane;
  plane.site = triple.site;
  plane.a = coeff[0];
  plane.b = coeff[1];
  plane.c = coeff[2];
  return plane;
}

LowerEnvelope::LowerEnvelope(std::vector<Vec2> base, Scalar d_max)
    : base_(std::move(base)), d_max_(d_max) {
  nwalls_ = static_cast<int>(base_.size());
  eps_ = 1e-12 * d_max_;
  Scalar diam = 0;
  for (int i = 0; i < nwalls_; ++i)
    for (int j = i + 1; j < nwalls_; ++j) diam = std::max(diam, (base_[i] - base_[j]).norm());
  xy_eps_ = 1e-9 * diam;

  const int top = top_plane(), bottom = bottom_plane();
  for (int i = 0; i < nwalls_; ++i) {
    const int prev = (i + nwalls_ - 1) % nwalls_;
    add_vertex(Vec3(base_[i].x(), base_[i].y(), +d_max_), prev, i, top);
    add_vertex(Vec3(base_[i].x(), base_[i].y(), -d_max_), prev, i, bottom);
  }
  for (int i = 0; i < nwalls_; ++i) {
    const int next = (i + 1) % nwalls_;
    edges_.push_back({2 * i, 2 * next, top, i, true});          // top ring
    edges_.push_back({2 * i + 1, 2 * next + 1, bottom, i, true});  // bottom ring
    edges_.push_back({2 * i, 2 * i + 1, (i + nwalls_ - 1) % nwalls_, i, true});  // vertical
  }
}

int LowerEnvelope::add_vertex(const Vec3& pos, int pa, int pb, int pc) {
  verts_.push_back({pos, {pa, pb, pc}, true});
  return static_cast<int>(verts_.size()) - 1;
}

int LowerEnvelope::alive_vertex_count() const {
  int n = 0;
  for (const Vertex& v : verts_) n += v.alive;
  return n;
}

int LowerEnvelope::cut(const LiftedPlane& plane) {
  const int pid = nwalls_ + 2 + static_cast<int>(lifted_.size());
  lifted_.push_back(plane);
  contributing_.push_back(0);

  // classify alive vertices: above (killed), on (kept, lies on the plane), below
  const int nv = static_cast<int>(verts_.size());
  std::vector<signed char> cls(nv, 0);  // +1 above, 0 on, -1 below
  std::vector<Scalar> offset(nv, 0);
  bool any_above = false;
  for (int v = 0; v < nv; ++v) {
    if (!verts_[v].alive) continue;
    ++ops_;
    const Scalar s = verts_[v].pos.z() - plane.eval(verts_[v].pos.x(), verts_[v].pos.y());
    offset[v] = s;
    cls[v] = s > eps_ ? 1 : (s < -eps_ ? -1 : 0);
    any_above |= cls[v] == 1;
  }
  if (!any_above) return pid;  // entirely above the current envelope
  contributing_.back() = 1;

  std::vector<int> tagged;  // vertices lying on the new plane
  auto tag = [&](int v) {
    if (std::find(tagged.begin(), tagged.end(), v) == tagged.end()) tagged.push_back(v);
  };

  std::vector<std::pair<int, int>> inplane_pairs;  // edges lying inside the plane
  const int ne = static_cast<int>(edges_.size());
  for (int ei = 0; ei < ne; ++ei) {
    Edge& e = edges_[ei];
    if (!e.alive) continue;
    ++ops_;
    const signed char ca = cls[e.v0], cb = cls[e.v1];
    if (ca <= 0 && cb <= 0) {
      if (ca == 0) tag(e.v0);
      if (cb == 0) tag(e.v1);
      if (ca == 0 && cb == 0) inplane_pairs.emplace_back(e.v0, e.v1);
      continue;  // fully kept (possibly lying in the plane)
    }
    if (ca >= 0 && cb >= 0) {
      // nothing of the edge survives strictly below
      if (ca == 0) tag(e.v0);
      if (cb == 0) tag(e.v1);
      e.alive = false;
      continue;
    }
    // strict crossing: one above, one below
    const int va = ca > 0 ? e.v0 : e.v1;  // above endpoint
    const int vb = ca > 0 ? e.v1 : e.v0;
    const Scalar sa = offset[va], sb = offset[vb];
    const Vec3 pos = (sa * verts_[vb].pos - sb * verts_[va].pos) / (sa - sb);
    const int w = add_vertex(pos, e.p0, e.p1, pid);
    ++ops_;
    if (e.v0 == va)
      e.v0 = w;
    else
      e.v1 = w;
    tag(w);
  }

  for (int v = 0; v < nv; ++v)
    if (verts_[v].alive && cls[v] == 1) verts_[v].alive = false;

  // re-close every facet the plane sliced: the tagged vertices on a facet
  // are collinear along the facet/plane intersection, so connect the extremes
  std::map<int, std::vector<int>> facet_tagged;
  for (int w : tagged) {
    for (int p : verts_[w].planes) {
      if (p == pid) continue;
      facet_tagged[p].push_back(w);
      ++ops_;
    }
  }

  std::vector<std::pair<int, int>> added;
  for (auto& [F, on_facet] : facet_tagged) {
    std::sort(on_facet.begin(), on_facet.end(), [&](int x, int y) {
      const Vec3& px = verts_[x].pos;
      const Vec3& py = verts_[y].pos;
      if (px.x() != py.x()) return px.x() < py.x();
      if (px.y() != py.y()) return px.y() < py.y();
      return px.z() < py.z();
    });
    std::vector<int> uniq;
    for (int w : on_facet) {
      ++ops_;
      if (!uniq.empty()) {
        const Vec3 d = verts_[w].pos - verts_[uniq.back()].pos;
        if (std::abs(d.x()) <= xy_eps_ && std::abs(d.y()) <= xy_eps_) continue;
      }
      uniq.push_back(w);
    }
    if (uniq.size() < 2) continue;
    int va = uniq.front(), vb = uniq.back();
    if (va > vb) std::swap(va, vb);
    bool dup = false;
    for (const auto& [x, y] : inplane_pairs) dup |= (std::min(x, y) == va && std::max(x, y) == vb);
    for (const auto& [x, y] : added) dup |= (x == va && y == vb);
    if (dup) continue;
    added.emplace_back(va, vb);
    edges_.push_back({va, vb, F, pid, true});
    ++ops_;
  }
  return pid;
}

LowerEnvelope init_prism(const UnfoldFrame& frame, Scalar d_max) {
  return LowerEnvelope({frame.uv[0], frame.uv[1], frame.uv[2]}, d_max);
}

Scalar FacePartition::region_area() const {
  Scalar s = 0;
  for (const Region& r : regions) s += polygon_signed_area(r.poly);
  return s;
}

FacePartition extract_partition(const LowerEnvelope& env, const UnfoldFrame& frame) {
  FacePartition part;
  part.face = frame.face;

  Scalar diam = 0;
  const auto& base = env.base();
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = i + 1; j < base.size(); ++j) diam = std::max(diam, (base[i] - base[j]).norm());
  const Scalar len_eps = 1e-10 * diam;
  const Scalar area_eps = 1e-14 * diam * diam;

  if (env.num_lifted() == 0) {
    // untouched prism: the whole base, unlabeled
    part.regions.push_back({-1, env.base()});
    return part;
  }

  const int first = env.num_walls() + 2;
  for (int pid = first; pid < first + env.num_lifted(); ++pid) {
    // facet = alive edges carried by this plane
    std::vector<Vec2> pts;
    for (const auto& e : env.edges()) {
      if (!e.alive || (e.p0 != pid && e.p1 != pid)) continue;
      pts.emplace_back(env.vertices()[e.v0].pos.x(), env.vertices()[e.v0].pos.y());
      pts.emplace_back(env.vertices()[e.v1].pos.x(), env.vertices()[e.v1].pos.y());
    }
    if (pts.size() < 6) continue;
    // convex facet: order CCW around the centroid, dedupe
    Vec2 centroid = Vec2::Zero();
    for (const Vec2& p : pts) centroid += p;
    centroid /= static_cast<Scalar>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vec2& x, const Vec2& y) {
      const Scalar ax = std::atan2(x.y() - centroid.y(), x.x() - centroid.x());
      const Scalar ay = std::atan2(y.y() - centroid.y(), y.x() - centroid.x());
      if (ax != ay) return ax < ay;
      return (x - centroid).squaredNorm() < (y - centroid).squaredNorm();
    });
    std::vector<Vec2> poly;
    for (const Vec2& p : pts)
      if (poly.empty() || (p - poly.back()).norm() > len_eps) poly.push_back(p);
    while (poly.size() > 1 && (poly.front() - poly.back()).norm() <= len_eps) poly.pop_back();
    if (poly.size() < 3) continue;
    if (polygon_signed_area(poly) <= area_eps) continue;
    part.regions.push_back({env.site_of(pid), std::move(poly)});
  }

  for (const auto& e : env.edges()) {
    if (!e.alive || !env.is_lifted(e.p0) || !env.is_lifted(e.p1)) continue;
    const Vec3& a = env.vertices()[e.v0].pos;
    const Vec3& b = env.vertices()[e.v1].pos;
    if ((a - b).head<2>().norm() <= len_eps) continue;
    FacePartition::BisectorSeg seg;
    seg.site_a = env.site_of(e.p0);
    seg.site_b = env.site_of(e.p1);
    if (seg.site_a > seg.site_b) std::swap(seg.site_a, seg.site_b);
    seg.p0 = a.head<2>();
    seg.p1 = b.head<2>();
    part.bisectors.push_back(seg);
  }
  return part;
}

BarrierPlane barrier_plane(const UnfoldFrame& frame, const Vec2& s0, const Vec2& s1) {
  const std::vector<Vec2> tri = {frame.uv[0], frame.uv[1], frame.uv[2]};
  Scalar diam = 0;
  for (int i = 0; i < 3; ++i) diam = std::max(diam, (frame.uv[i] - frame.uv[(i + 1) % 3]).norm());
  const Scalar tol = 1e-6 * diam;
  if (!point_in_convex_polygon(s0, tri, tol) || !point_in_convex_polygon(s1, tri, tol))
    throw SegmentOutsideFace("breakline segment does not lie inside face " +
                             std::to_string(frame.face));
  return BarrierPlane{s0, s1};
}

namespace {

struct SubDomain {
  std::vector<Vec2> poly;
  std::vector<const SurvivorEntry*> entries;
};

}  // namespace

FacePartition partition_face(const UnfoldFrame& frame, const std::vector<SurvivorEntry>& survivors,
                             const std::vector<FaceBarrier>* barriers, Scalar d_max) {
  FacePartition part;
  part.face = frame.face;
  if (survivors.empty()) return part;

  const std::vector<Vec2> tri = {frame.uv[0], frame.uv[1], frame.uv[2]};

  // short-circuit: a single survivor owns the whole face
  if (survivors.size() == 1 && (!barriers || barriers->empty())) {
    part.regions.push_back({survivors[0].triple.site, tri});
    return part;
  }

  Scalar diam = 0;
  for (int i = 0; i < 3; ++i) diam = std::max(diam, (tri[i] - tri[(i + 1) % 3]).norm());
  const Scalar split_tol = 1e-12 * diam;

  std::vector<SubDomain> domains(1);
  domains[0].poly = tri;
  for (const SurvivorEntry& e : survivors) domains[0].entries.push_back(&e);

  if (barriers) {
    for (const FaceBarrier& fb : *barriers) {
      const BarrierPlane bp = barrier_plane(frame, frame.to2d(fb.p0), frame.to2d(fb.p1));
      std::vector<SubDomain> next;
      for (SubDomain& dom : domains) {
        auto [left, right] = split_convex_polygon(dom.poly, bp.p0, bp.p1, split_tol);
        if (left.empty() || right.empty()) {
          next.push_back(std::move(dom));
          continue;
        }
        SubDomain dl, dr;
        dl.poly = std::move(left);
        dr.poly = std::move(right);
        for (const SurvivorEntry* e : dom.entries) {
          const Scalar s = bp.side(frame.to2d(e->entry));
          (s >= 0 ? dl : dr).entries.push_back(e);
        }
        next.push_back(std::move(dl));
        next.push_back(std::move(dr));
      }
      domains = std::move(next);
    }
  }

  for (SubDomain& dom : domains) {
    if (dom.entries.empty()) continue;  // pocket sealed off by breaklines
    if (dom.entries.size() == 1) {
      part.regions.push_back({dom.entries[0]->triple.site, dom.poly});
      continue;
    }
    Scalar dm = d_max;
    for (const SurvivorEntry* e : dom.entries)
      for (Scalar d2 : e->triple.d2) dm = std::max(dm, 10 * std::abs(d2));
    LowerEnvelope env(dom.poly, dm);
    for (const SurvivorEntry* e : dom.entries) env.cut(lift_plane(frame, e->triple));
    FacePartition sub = extract_partition(env, frame);
    for (auto& r : sub.regions) part.regions.push_back(std::move(r));
    for (auto& b : sub.bisectors) part.bisectors.push_back(std::move(b));
  }
  return part;
}

}  // namespace sv
