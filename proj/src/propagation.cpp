#include "sv/propagation.hpp"

#include "sv/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sv {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::max();

}  // namespace

SweepEngine::SweepEngine(const TriangleMesh& mesh, const SiteSet& sites,
                         const SolverConfig& solver, const ResolvedBreaklines* breaklines)
    : mesh_(mesh), sites_(sites), cfg_(solver), breaklines_(breaklines) {
  cfg_.validate();
  if (sites_.sites.empty()) throw EmptySiteSet("over_propagate needs at least one site");
  for (int i = 0; i < sites_.size(); ++i)
    if (sites_.sites[i].id != i) throw ParseError("site ids must be dense and in order");
  lists_.resize(mesh_.num_faces());
  for (int f = 0; f < mesh_.num_faces(); ++f) lists_[f].face = f;
  face_status_.resize(mesh_.num_faces());
  if (cfg_.kind == DistanceKind::FastMarching) {
    fmm_dist_.resize(sites_.sites.size());
    site_visited_faces_.resize(sites_.sites.size());
    frames_.resize(mesh_.num_faces());
    frame_ready_.assign(mesh_.num_faces(), 0);
    improve_tol_ = 1e-12 * std::max<Scalar>(mesh_.bbox_diag, 1);
  }
}

SweepEngine::Status SweepEngine::status(int site, int face) const {
  for (const auto& [s, st] : face_status_[face])
    if (s == site) return st;
  return Status::Unseen;
}

void SweepEngine::set_status(int site, int face, Status st) {
  for (auto& [s, cur] : face_status_[face]) {
    if (s == site) {
      cur = st;
      return;
    }
  }
  face_status_[face].emplace_back(site, st);
}

Scalar SweepEngine::root_distance(int site, int vertex) const {
  if (cfg_.kind == DistanceKind::Euclidean)
    return euclidean_root_distance(cfg_, sites_.sites[site], mesh_.vertices[vertex], mesh_);
  const auto& store = fmm_dist_[site];
  const auto it = store.find(vertex);
  return it == store.end() ? kInf : it->second;
}

Scalar SweepEngine::fmm_distance(int site, int vertex) const {
  if (cfg_.kind != DistanceKind::FastMarching)
    return root_distance(site, vertex);
  const auto& store = fmm_dist_[site];
  const auto it = store.find(vertex);
  if (it == store.end())
    throw NotYetSwept("vertex " + std::to_string(vertex) + " outside swept region of site " +
                      std::to_string(site));
  return it->second;
}

Scalar SweepEngine::base_key(int site, int face) const {
  Scalar k = kInf;
  for (int j = 0; j < 3; ++j) k = std::min(k, root_distance(site, mesh_.faces[face][j]));
  return k;
}

void SweepEngine::push_event(PropagationEvent evt) {
  queue_.push(evt);
  ++stats_.events_pushed;
}

void SweepEngine::seed() {
  const Scalar sample_step = 0.25 * std::sqrt(2 * mesh_.total_area() / mesh_.num_faces());
  for (const Site& site : sites_.sites) {
    std::vector<int> seed_faces;
    if (site.kind == Site::Kind::Point) {
      seed_faces.push_back(site.face);
    } else {
      for (size_t i = 0; i + 1 < site.polyline.size(); ++i) {
        const Vec3 &a = site.polyline[i], &b = site.polyline[i + 1];
        const int n = std::clamp(static_cast<int>((b - a).norm() / sample_step) + 1, 2, 256);
        for (int k = 0; k <= n; ++k) {
          const int f = mesh_.locate_closest_face(a + (b - a) * (Scalar(k) / n));
          if (std::find(seed_faces.begin(), seed_faces.end(), f) == seed_faces.end())
            seed_faces.push_back(f);
        }
      }
    }
    for (int f : seed_faces) {
      if (cfg_.kind == DistanceKind::FastMarching) {
        // seed the containing face's corners with exact distances
        for (int j = 0; j < 3; ++j) {
          const int v = mesh_.faces[f][j];
          const Scalar d = site.kind == Site::Kind::Point
                               ? (mesh_.vertices[v] - site.position(mesh_)).norm()
                               : point_to_curve_distance(site.polyline, mesh_.vertices[v]);
          auto it = fmm_dist_[site.id].find(v);
          if (it == fmm_dist_[site.id].end() || d < it->second) fmm_dist_[site.id][v] = d;
        }
      }
      PropagationEvent evt;
      evt.site = site.id;
      evt.target = f;
      evt.from_face = f;
      evt.key = base_key(site.id, f);
      if (site.kind == Site::Kind::Point) {
        evt.entry = site.position(mesh_);
      } else {
        // entry = point of the curve nearest to the face
        const Vec3 centroid = (mesh_.corner(f, 0) + mesh_.corner(f, 1) + mesh_.corner(f, 2)) / 3;
        Vec3 best = site.polyline.front();
        Scalar bd = kInf;
        for (size_t i = 0; i + 1 < site.polyline.size(); ++i) {
          const Vec3 c = closest_point_on_segment(centroid, site.polyline[i], site.polyline[i + 1]);
          const Scalar d = (centroid - c).squaredNorm();
          if (d < bd) {
            bd = d;
            best = c;
          }
        }
        evt.entry = best;
      }
      push_event(evt);
    }
  }
}

void SweepEngine::vertex_fan(int vertex, int from_face, std::vector<int>& out) const {
  out.clear();
  const auto& incident = mesh_.vertex_faces[vertex];
  if (!breaklines_ || breaklines_->blocked_edges.empty()) {
    out.assign(incident.begin(), incident.end());
    return;
  }
  // walk the fan from from_face crossing only unblocked edges at this vertex
  out.push_back(from_face);
  std::vector<int> stack = {from_face};
  while (!stack.empty()) {
    const int g = stack.back();
    stack.pop_back();
    const Vec3i& tri = mesh_.faces[g];
    for (int j = 0; j < 3; ++j) {
      const int a = tri[j], b = tri[(j + 1) % 3];
      if (a != vertex && b != vertex) continue;
      if (breaklines_->edge_blocked(a, b)) continue;
      const int h = mesh_.neighbor(g, j);
      if (h < 0 || std::find(out.begin(), out.end(), h) != out.end()) continue;
      out.push_back(h);
      stack.push_back(h);
    }
  }
}

std::vector<PropagationEvent> SweepEngine::expand_event(const PropagationEvent& evt) const {
  std::vector<PropagationEvent> children;
  if (evt.at_vertex) {
    std::vector<int> fan;
    vertex_fan(evt.target, evt.from_face, fan);
    for (int g : fan) {
      if (g == evt.from_face || status(evt.site, g) != Status::Unseen) continue;
      PropagationEvent child;
      child.site = evt.site;
      child.target = g;
      child.from_face = evt.from_face;
      child.key = std::max(evt.key, base_key(evt.site, g));
      if (child.key == kInf) child.key = evt.key;
      child.entry = mesh_.vertices[evt.target];
      children.push_back(child);
    }
    return children;
  }

  const int f = evt.target;
  const Vec3i& tri = mesh_.faces[f];
  // edge-adjacent faces across unblocked edges
  for (int j = 0; j < 3; ++j) {
    const int a = tri[j], b = tri[(j + 1) % 3];
    if (breaklines_ && breaklines_->edge_blocked(a, b)) continue;
    const int g = mesh_.neighbor(f, j);
    if (g < 0 || status(evt.site, g) != Status::Unseen) continue;
    PropagationEvent child;
    child.site = evt.site;
    child.target = g;
    child.from_face = f;
    child.key = std::max(evt.key, base_key(evt.site, g));
    if (child.key == kInf) child.key = evt.key;
    child.entry = Scalar(0.5) * (mesh_.vertices[a] + mesh_.vertices[b]);
    children.push_back(child);
  }
  // vertex arrivals: the event reaches each corner; incident fans are
  // targeted when the corresponding vertex event pops
  for (int j = 0; j < 3; ++j) {
    PropagationEvent child;
    child.site = evt.site;
    child.target = tri[j];
    child.at_vertex = true;
    child.from_face = f;
    const Scalar dv = root_distance(evt.site, tri[j]);
    child.key = std::max(evt.key, dv == kInf ? evt.key : dv);
    child.entry = mesh_.vertices[tri[j]];
    children.push_back(child);
  }
  return children;
}

DistanceTriple SweepEngine::make_triple(int site, int face) {
  // the per-event "update the distance at a vertex" step is solver specific:
  // closed-form solvers evaluate directly and the check reduces to the
  // domination test; fast marching extends its field to the face's corners
  DistanceTriple t;
  t.site = site;
  const Scalar w = cfg_.power ? sites_.sites[site].weight : 0;
  if (cfg_.kind == DistanceKind::Euclidean) {
    for (int j = 0; j < 3; ++j)
      t.d2[j] = squared_distance(cfg_, sites_.sites[site], mesh_.corner(face, j), mesh_);
  } else {
    for (int j = 0; j < 3; ++j) ensure_fmm_corner(site, face, j);
    for (int j = 0; j < 3; ++j) {
      const Scalar d = fmm_dist_[site][mesh_.faces[face][j]];
      t.d2[j] = d * d - w;
    }
  }
  return t;
}

void SweepEngine::ensure_fmm_corner(int site, int face, int corner) {
  const int v = mesh_.faces[face][corner];
  auto& store = fmm_dist_[site];
  if (store.count(v)) return;

  Scalar best = kInf;
  for (int g : mesh_.vertex_faces[v]) {
    if (g != face && status(site, g) == Status::Unseen) continue;
    const Vec3i& tri = mesh_.faces[g];
    int local = 0;
    while (tri[local] != v) ++local;
    const int a = tri[(local + 1) % 3], b = tri[(local + 2) % 3];
    const auto ita = store.find(a), itb = store.find(b);
    if (!frame_ready_[g]) {
      frames_[g] = unfold(mesh_, g);
      frame_ready_[g] = 1;
    }
    const UnfoldFrame& fr = frames_[g];
    if (ita != store.end() && itb != store.end()) {
      best = std::min(best, fmm_update(fr.uv[(local + 1) % 3], fr.uv[(local + 2) % 3],
                                       fr.uv[local], ita->second, itb->second));
    } else if (ita != store.end()) {
      best = std::min(best, ita->second + (mesh_.vertices[a] - mesh_.vertices[v]).norm());
    } else if (itb != store.end()) {
      best = std::min(best, itb->second + (mesh_.vertices[b] - mesh_.vertices[v]).norm());
    }
  }
  if (best == kInf)
    throw NotYetSwept("no finalized neighbor for site " + std::to_string(site) + " at vertex " +
                      std::to_string(v));
  store[v] = best;
  relax_fmm(site, v);
}

void SweepEngine::relax_fmm(int site, int vertex) {
  // value relaxation within the swept region: keep the field consistent with
  // the best planar/edge updates available, so late arrivals cannot leave a
  // stale overestimate behind
  auto& store = fmm_dist_[site];
  std::vector<int> work = {vertex};
  while (!work.empty()) {
    const int u = work.back();
    work.pop_back();
    for (int g : mesh_.vertex_faces[u]) {
      if (status(site, g) == Status::Unseen) continue;
      const Vec3i& tri = mesh_.faces[g];
      if (!frame_ready_[g]) {
        frames_[g] = unfold(mesh_, g);
        frame_ready_[g] = 1;
      }
      const UnfoldFrame& fr = frames_[g];
      for (int local = 0; local < 3; ++local) {
        const int w = tri[local];
        if (w == u) continue;
        const auto itw = store.find(w);
        if (itw == store.end()) continue;  // outside swept region; computed on demand
        const int a = tri[(local + 1) % 3], b = tri[(local + 2) % 3];
        const auto ita = store.find(a), itb = store.find(b);
        Scalar cand = kInf;
        if (ita != store.end() && itb != store.end())
          cand = fmm_update(fr.uv[(local + 1) % 3], fr.uv[(local + 2) % 3], fr.uv[local],
                            ita->second, itb->second);
        else if (ita != store.end())
          cand = ita->second + (mesh_.vertices[a] - mesh_.vertices[w]).norm();
        else if (itb != store.end())
          cand = itb->second + (mesh_.vertices[b] - mesh_.vertices[w]).norm();
        if (cand < itw->second - improve_tol_) {
          itw->second = cand;
          work.push_back(w);
        }
      }
    }
  }
}

void SweepEngine::process_face_event(const PropagationEvent& evt) {
  const int f = evt.target;
  if (status(evt.site, f) != Status::Unseen) return;

  const DistanceTriple triple = make_triple(evt.site, f);
  if (cfg_.kind == DistanceKind::FastMarching) site_visited_faces_[evt.site].push_back(f);

  bool defeated = false;
  for (const auto& e : lists_[f].entries) {
    if (dominates(e.triple, triple)) {
      defeated = true;
      break;
    }
  }
  set_status(evt.site, f, defeated ? Status::Defeated : Status::Contributing);
  if (cfg_.kind == DistanceKind::FastMarching) {
    // f just joined the swept region: apply its in-face stencils so corners
    // computed earlier through other faces see the new update paths
    for (int j = 0; j < 3; ++j) relax_fmm(evt.site, mesh_.faces[f][j]);
  }
  if (defeated) return;  // not allowed to continue propagating through f

  auto& entries = lists_[f].entries;
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const SurvivorEntry& e) { return dominates(triple, e.triple); }),
                entries.end());
  entries.push_back({triple, evt.entry});
  stats_.peak_survivors = std::max(stats_.peak_survivors, static_cast<int>(entries.size()));

  for (PropagationEvent& child : expand_event(evt)) push_event(child);
}

void SweepEngine::process_vertex_event(const PropagationEvent& evt) {
  for (PropagationEvent& child : expand_event(evt)) push_event(child);
}

bool SweepEngine::step() {
  if (queue_.empty()) return false;
  const PropagationEvent evt = queue_.top();
  queue_.pop();
  ++stats_.events_popped;
  if (evt.key < last_key_) stats_.keys_monotone = false;
  last_key_ = evt.key;
  if (evt.at_vertex)
    process_vertex_event(evt);
  else
    process_face_event(evt);
  return true;
}

void SweepEngine::run() {
  while (step()) {
  }
  if (cfg_.kind == DistanceKind::FastMarching) {
    refresh_fmm_lists();
    if (!revived_) {
      revived_ = true;
      revival_round();
    }
  }
}

void SweepEngine::refresh_fmm_lists() {
  // distances may have improved after a triple was recorded; rebuild the
  // recorded triples from the final field and re-filter each face
  for (auto& list : lists_) {
    for (auto& e : list.entries) e.triple = make_triple(e.triple.site, list.face);
    std::vector<SurvivorEntry> kept;
    for (const auto& e : list.entries) {
      bool dead = false;
      for (const auto& other : list.entries) {
        if (other.triple.site != e.triple.site && dominates(other.triple, e.triple)) {
          dead = true;
          break;
        }
      }
      if (!dead) kept.push_back(e);
    }
    list.entries = std::move(kept);
  }
}

void SweepEngine::revival_round() {
  // one improvement pass: a site defeated under stale distances may deserve
  // to continue sweeping once values settled
  bool any = false;
  for (int f = 0; f < mesh_.num_faces(); ++f) {
    for (auto& [site, st] : face_status_[f]) {
      if (st != Status::Defeated) continue;
      const DistanceTriple triple = make_triple(site, f);
      bool dead = false;
      for (const auto& e : lists_[f].entries)
        if (dominates(e.triple, triple)) {
          dead = true;
          break;
        }
      if (dead) continue;
      st = Status::Unseen;
      PropagationEvent evt;
      evt.site = site;
      evt.target = f;
      evt.from_face = f;
      evt.key = base_key(site, f);
      evt.entry = (mesh_.corner(f, 0) + mesh_.corner(f, 1) + mesh_.corner(f, 2)) / 3;
      push_event(evt);
      any = true;
    }
  }
  if (any) {
    while (step()) {
    }
    refresh_fmm_lists();
  }
}

PropagationResult SweepEngine::take_result() {
  PropagationResult res;
  res.faces = std::move(lists_);
  res.stats = stats_;
  return res;
}

PropagationResult over_propagate(const TriangleMesh& mesh, const SiteSet& sites,
                                 const SolverConfig& solver,
                                 const ResolvedBreaklines* breaklines) {
  SweepEngine engine(mesh, sites, solver, breaklines);
  engine.seed();
  engine.run();
  return engine.take_result();
}

}  // namespace sv
