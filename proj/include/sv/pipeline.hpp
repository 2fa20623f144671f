#pragma once

#include "sv/breaklines.hpp"
#include "sv/diagram.hpp"
#include "sv/envelope.hpp"
#include "sv/propagation.hpp"

#include <cstdint>

namespace sv {

struct PipelineOptions {
  SolverConfig solver;
  BreaklineSet breaklines;
  int threads = 1;
};

struct PipelineResult {
  PropagationResult prop;
  std::vector<FacePartition> partitions;
  SurfaceVoronoiDiagram vd;
  double sweep_ms = 0;
  double cut_ms = 0;
  double assemble_ms = 0;

  double total_ms() const { return sweep_ms + cut_ms + assemble_ms; }
};

/// Full run: over-propagation sweep, per-face envelope cutting (parallel over
/// faces when threads > 1), assembly and stitching.
PipelineResult compute_diagram(const TriangleMesh& mesh, const SiteSet& sites,
                               const PipelineOptions& options);

/// Uniform random point sites (area-weighted face choice), for fixtures and
/// benchmarks.  Deterministic in the seed.
SiteSet random_sites(const TriangleMesh& mesh, int count, std::uint64_t seed);

}  // namespace sv
