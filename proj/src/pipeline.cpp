#include "sv/pipeline.hpp"

#include "sv/geom.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace sv {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PipelineResult compute_diagram(const TriangleMesh& mesh, const SiteSet& sites,
                               const PipelineOptions& options) {
  options.solver.validate();
  PipelineResult res;

  ResolvedBreaklines resolved;
  const ResolvedBreaklines* breaklines = nullptr;
  if (!options.breaklines.empty()) {
    resolved = resolve_breaklines(options.breaklines, mesh);
    breaklines = &resolved;
    // a site sitting exactly on a breakline has no defined side
    const Scalar tol = 1e-9 * mesh.bbox_diag;
    for (const Site& s : sites.sites) {
      const Vec3 p = s.position(mesh);
      for (const auto& poly : options.breaklines.polylines)
        for (size_t i = 0; i + 1 < poly.size(); ++i)
          if (point_segment_distance(p, poly[i], poly[i + 1]) <= tol)
            throw ParseError("site " + std::to_string(s.id) + " lies on a breakline");
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  res.prop = over_propagate(mesh, sites, options.solver, breaklines);
  res.sweep_ms = ms_since(t0);

  const Scalar d_max =
      10 * (mesh.bbox_diag * mesh.bbox_diag + (options.solver.power ? sites.max_abs_weight() : 0));

  t0 = std::chrono::steady_clock::now();
  res.partitions.resize(mesh.num_faces());
  auto cut_range = [&](int begin, int end) {
    for (int f = begin; f < end; ++f) {
      const UnfoldFrame frame = unfold(mesh, f);
      const auto* barriers = breaklines ? breaklines->barriers_for(f) : nullptr;
      res.partitions[f] = partition_face(frame, res.prop.faces[f].entries, barriers, d_max);
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    cut_range(0, mesh.num_faces());
  } else {
    std::vector<std::thread> pool;
    const int chunk = (mesh.num_faces() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(mesh.num_faces(), begin + chunk);
      if (begin < end) pool.emplace_back(cut_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  res.cut_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  res.vd = assemble(mesh, res.partitions);
  res.assemble_ms = ms_since(t0);

  const std::vector<int> counts = cell_source_histogram(res.partitions);
  for (int c : counts) ++res.vd.diagnostics.survivor_histogram[c];
  return res;
}

SiteSet random_sites(const TriangleMesh& mesh, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Scalar> cumulative(mesh.num_faces());
  Scalar acc = 0;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    acc += mesh.face_area(f);
    cumulative[f] = acc;
  }
  std::uniform_real_distribution<Scalar> uni(0, 1);
  SiteSet set;
  for (int i = 0; i < count; ++i) {
    const Scalar pick = uni(rng) * acc;
    const int f = static_cast<int>(
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
    const Scalar r1 = std::sqrt(uni(rng));
    const Scalar r2 = uni(rng);
    Site s;
    s.id = i;
    s.kind = Site::Kind::Point;
    s.face = std::min(f, mesh.num_faces() - 1);
    s.bary = Vec3(1 - r1, r1 * (1 - r2), r1 * r2);
    set.sites.push_back(s);
  }
  return set;
}

}  // namespace sv
