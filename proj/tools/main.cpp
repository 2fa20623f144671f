#include "sv/diagram.hpp"
#include "sv/pipeline.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace sv;

struct Args {
  std::string mesh_path;
  std::string sites_path;
  std::string solver = "euclidean";
  std::string mode = "voronoi";
  std::string density;
  std::string breaklines_path;
  std::string out_dir = "out";
  int threads = 1;
  std::uint64_t seed = 1;
  int random_sites_count = 0;
  std::string bench_grid = "100,300,500,700,900";
};

SolverConfig make_solver(const Args& args, bool power) {
  SolverConfig cfg;
  if (args.solver == "euclidean")
    cfg.kind = DistanceKind::Euclidean;
  else if (args.solver == "fmm")
    cfg.kind = DistanceKind::FastMarching;
  else
    throw ParseError("unknown solver '" + args.solver + "' (euclidean | fmm)");
  if (!args.density.empty()) cfg.density = make_density(args.density);
  cfg.power = power;
  cfg.validate();
  return cfg;
}

void write_outputs(const std::string& dir, PipelineResult& result, const TriangleMesh& mesh) {
  std::filesystem::create_directories(dir);
  export_cells_obj(dir + "/cells.obj", result.vd);
  export_bisectors_obj(dir + "/bisectors.obj", result.vd);
  const ConnectednessReport conn = check_connectedness(result.vd, mesh);
  result.vd.diagnostics.components_per_site = conn.components_per_site;
  result.vd.diagnostics.uncovered_area_rel = conn.uncovered_area_rel;
  std::map<std::string, Scalar> extra;
  extra["sweep_ms"] = result.sweep_ms;
  extra["cut_ms"] = result.cut_ms;
  extra["assemble_ms"] = result.assemble_ms;
  extra["events_popped"] = static_cast<Scalar>(result.prop.stats.events_popped);
  extra["peak_survivors"] = result.prop.stats.peak_survivors;
  write_diagnostics_json(dir + "/diagnostics.json", result.vd, extra);
}

int run_voronoi(const Args& args, bool power, bool remesh) {
  const TriangleMesh mesh = load_mesh(args.mesh_path);
  const SiteSet sites = load_sites(args.sites_path, mesh);
  if (power && !sites.any_nonzero_weight())
    throw ParseError("power mode needs at least one nonzero site weight");

  PipelineOptions opt;
  opt.solver = make_solver(args, power);
  opt.threads = args.threads;
  if (!args.breaklines_path.empty()) opt.breaklines = load_breaklines(args.breaklines_path);

  PipelineResult result = compute_diagram(mesh, sites, opt);
  write_outputs(args.out_dir, result, mesh);

  if (remesh) {
    const DualMesh dual = extract_dual(result.vd, mesh, sites);
    export_dual_obj(args.out_dir + "/dual.obj", dual);
    std::cout << "dual: " << dual.vertices.size() << " vertices, " << dual.faces.size()
              << " faces";
    if (dual.non_generic_junctions)
      std::cout << " (" << dual.non_generic_junctions << " non-generic junctions fan-resolved)";
    std::cout << "\n";
  }

  std::cout << "faces " << mesh.num_faces() << ", sites " << sites.size() << ", total "
            << result.total_ms() << " ms (sweep " << result.sweep_ms << ", cut " << result.cut_ms
            << ", assemble " << result.assemble_ms << ")\n";
  std::cout << "coverage err " << result.vd.diagnostics.coverage_rel_err << ", max edge mismatch "
            << result.vd.diagnostics.max_edge_mismatch << "\n";
  return 0;
}

int run_validate(const Args& args) {
  const TriangleMesh mesh = load_mesh(args.mesh_path);
  const SiteSet sites = load_sites(args.sites_path, mesh);
  PipelineOptions opt;
  opt.solver = make_solver(args, sites.any_nonzero_weight());
  opt.threads = args.threads;
  if (!args.breaklines_path.empty()) opt.breaklines = load_breaklines(args.breaklines_path);

  PipelineResult result = compute_diagram(mesh, sites, opt);

  bool ok = true;
  const ConsistenceReport cons = check_consistence(result.vd);
  const bool cons_ok = cons.ok(result.vd.eps_stitch);
  std::cout << "consistence: " << (cons_ok ? "pass" : "FAIL") << " (max mismatch "
            << cons.max_mismatch << ", breakpoints " << cons.breakpoints.size() << ")\n";
  ok &= cons_ok;

  const ConnectednessReport conn = check_connectedness(result.vd, mesh);
  result.vd.diagnostics.components_per_site = conn.components_per_site;
  result.vd.diagnostics.uncovered_area_rel = conn.uncovered_area_rel;
  const bool conn_ok = conn.ok();
  std::cout << "connectedness: " << (conn_ok ? "pass" : "FAIL") << " (uncovered "
            << conn.uncovered_area_rel << ")\n";
  ok &= conn_ok;

  try {
    const CompatibilityReport comp =
        check_compatibility(result.vd, mesh, sites, opt.solver, 64);
    const bool comp_ok = comp.disagreement_area_rel < 1e-9;
    std::cout << "compatibility: " << (comp_ok ? "pass" : "FAIL") << " (disagreement "
              << comp.disagreement_area_rel << " over " << comp.samples << " samples)\n";
    ok &= comp_ok;
  } catch (const NonPlanarInput&) {
    std::cout << "compatibility: skipped (input not a planar convex region)\n";
  }

  const Scalar cov = result.vd.diagnostics.coverage_rel_err;
  const bool cov_ok = cov < 1e-6;
  std::cout << "coverage: " << (cov_ok ? "pass" : "FAIL") << " (" << cov << ")\n";
  ok &= cov_ok;

  write_outputs(args.out_dir, result, mesh);
  return ok ? 0 : 1;
}

int run_bench(const Args& args) {
  const TriangleMesh mesh = load_mesh(args.mesh_path);
  std::vector<int> grid;
  std::stringstream ss(args.bench_grid);
  std::string tok;
  while (std::getline(ss, tok, ',')) grid.push_back(std::stoi(tok));

  std::cout << "mesh,faces,sites,solver,wall_ms,peak_survivors\n";
  for (int n : grid) {
    const SiteSet sites = random_sites(mesh, n, args.seed);
    PipelineOptions opt;
    opt.solver = make_solver(args, false);
    opt.threads = args.threads;
    std::vector<double> times;
    int peak = 0;
    for (int rep = 0; rep < 3; ++rep) {
      const PipelineResult result = compute_diagram(mesh, sites, opt);
      times.push_back(result.total_ms());
      peak = result.prop.stats.peak_survivors;
    }
    std::sort(times.begin(), times.end());
    std::cout << args.mesh_path << "," << mesh.num_faces() << "," << n << "," << args.solver << ","
              << times[1] << "," << peak << "\n";
  }
  return 0;
}

int run_random_sites(const Args& args) {
  const TriangleMesh mesh = load_mesh(args.mesh_path);
  const SiteSet sites = random_sites(mesh, args.random_sites_count, args.seed);
  const std::string path = args.sites_path.empty() ? "sites.txt" : args.sites_path;
  save_sites(path, sites);
  std::cout << "wrote " << sites.size() << " sites to " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surface Voronoi diagrams on triangle meshes via over-propagation "
               "and squared-distance lower envelopes"};
  Args args;
  app.add_option("--mesh", args.mesh_path, "input mesh (.obj/.off)")->required();
  app.add_option("--sites", args.sites_path, "sites file (p/c records)");
  app.add_option("--solver", args.solver, "euclidean | fmm");
  app.add_option("--mode", args.mode, "voronoi | power | remesh | validate | bench");
  app.add_option("--density", args.density, "density field: constant[:c] | linear:<axis>[:a:b] | radial[:a:b]");
  app.add_option("--breaklines", args.breaklines_path, "breaklines file (c records)");
  app.add_option("--out", args.out_dir, "output directory");
  app.add_option("--threads", args.threads, "worker threads for per-face cutting");
  app.add_option("--seed", args.seed, "seed for randomized fixtures");
  app.add_option("--random-sites", args.random_sites_count,
                 "generate N random sites into --sites and exit");
  app.add_option("--bench-grid", args.bench_grid, "comma-separated site counts for bench mode");

  CLI11_PARSE(app, argc, argv);

  try {
    if (args.random_sites_count > 0) return run_random_sites(args);
    if (args.sites_path.empty()) throw sv::ParseError("--sites is required");
    if (args.mode == "voronoi") return run_voronoi(args, false, false);
    if (args.mode == "power") return run_voronoi(args, true, false);
    if (args.mode == "remesh") return run_voronoi(args, false, true);
    if (args.mode == "validate") return run_validate(args);
    if (args.mode == "bench") return run_bench(args);
    throw sv::ParseError("unknown mode '" + args.mode + "'");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
