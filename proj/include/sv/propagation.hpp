#pragma once

#include "sv/breaklines.hpp"
#include "sv/mesh.hpp"
#include "sv/solvers.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

namespace sv {

/// Squared (power-shifted when active) distances of one site at a face's
/// three corners, in corner order.  The unit of propagation and domination.
struct DistanceTriple {
  int site = -1;
  std::array<Scalar, 3> d2{{0, 0, 0}};
};

/// Strict domination: a beats b at all three corners.  Any tie keeps both.
inline bool dominates(const DistanceTriple& a, const DistanceTriple& b) {
  return a.d2[0] < b.d2[0] && a.d2[1] < b.d2[1] && a.d2[2] < b.d2[2];
}

struct PropagationEvent {
  Scalar key = 0;      // min root distance from site to the target's corners,
                       // clamped to the parent key so pops are nondecreasing
  int site = -1;
  int target = -1;     // face id; vertex id when at_vertex
  bool at_vertex = false;
  int from_face = -1;
  Vec3 entry = Vec3::Zero();  // seed position or crossed-edge midpoint
};

struct SurvivorEntry {
  DistanceTriple triple;
  Vec3 entry = Vec3::Zero();  // consumed by barrier side assignment
};

/// Sites not yet defeated in one face; an antichain under dominates.
struct FaceSourceList {
  int face = -1;
  std::vector<SurvivorEntry> entries;

  const SurvivorEntry* find(int site) const {
    for (const auto& e : entries)
      if (e.triple.site == site) return &e;
    return nullptr;
  }
};

struct SweepStats {
  std::uint64_t events_pushed = 0;
  std::uint64_t events_popped = 0;
  int peak_survivors = 0;
  bool keys_monotone = true;  // popped keys never decreased
};

struct PropagationResult {
  std::vector<FaceSourceList> faces;
  SweepStats stats;
};

/// Prioritized multi-source mark-and-sweep with the triple-domination
/// filtering rule.  Every site's field is swept outward until its triple is
/// defeated on a whole face; each face ends up with the mutual-survivor set
/// of distance triples.  Events never cross breakline-blocked edges.
PropagationResult over_propagate(const TriangleMesh& mesh, const SiteSet& sites,
                                 const SolverConfig& solver,
                                 const ResolvedBreaklines* breaklines = nullptr);

/// Stepwise sweep engine behind over_propagate, exposed so tests can drive
/// single events and inspect expansion behavior.
class SweepEngine {
 public:
  SweepEngine(const TriangleMesh& mesh, const SiteSet& sites, const SolverConfig& solver,
              const ResolvedBreaklines* breaklines);

  void seed();
  bool step();  // process one event; false when the queue is empty
  void run();

  PropagationResult take_result();
  const std::vector<FaceSourceList>& face_lists() const { return lists_; }
  const SweepStats& stats() const { return stats_; }

  /// Children the given popped event would spawn (testing hook).
  std::vector<PropagationEvent> expand_event(const PropagationEvent& evt) const;

  /// Root distance of a fast-marching field at a vertex; NotYetSwept when the
  /// vertex is outside the site's swept region.
  Scalar fmm_distance(int site, int vertex) const;

 private:
  struct EventOrder {
    bool operator()(const PropagationEvent& a, const PropagationEvent& b) const {
      if (a.key != b.key) return a.key > b.key;
      if (a.site != b.site) return a.site > b.site;
      return a.target > b.target;
    }
  };

  enum class Status : std::uint8_t { Unseen = 0, Defeated, Contributing };

  Scalar root_distance(int site, int vertex) const;
  Scalar base_key(int site, int face) const;
  void push_event(PropagationEvent evt);
  void process_face_event(const PropagationEvent& evt);
  void process_vertex_event(const PropagationEvent& evt);
  void vertex_fan(int vertex, int from_face, std::vector<int>& out) const;

  DistanceTriple make_triple(int site, int face);
  void ensure_fmm_corner(int site, int face, int corner);
  void relax_fmm(int site, int vertex);
  void refresh_fmm_lists();
  void revival_round();

  Status status(int site, int face) const;
  void set_status(int site, int face, Status s);

  const TriangleMesh& mesh_;
  const SiteSet& sites_;
  const SolverConfig& cfg_;
  const ResolvedBreaklines* breaklines_;

  std::vector<FaceSourceList> lists_;
  std::vector<std::vector<std::pair<int, Status>>> face_status_;  // per face: (site, status)
  std::priority_queue<PropagationEvent, std::vector<PropagationEvent>, EventOrder> queue_;
  SweepStats stats_;

  // fast-marching per-source sparse distance store
  std::vector<std::unordered_map<int, Scalar>> fmm_dist_;
  std::vector<std::vector<int>> site_visited_faces_;
  std::vector<UnfoldFrame> frames_;  // lazily filled, FMM only
  std::vector<char> frame_ready_;
  Scalar improve_tol_ = 0;
  Scalar last_key_ = -std::numeric_limits<Scalar>::max();
  bool revived_ = false;
};

}  // namespace sv
