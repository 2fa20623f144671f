#include "sv/solvers.hpp"

#include "sv/geom.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sv {

Vec3 Site::position(const TriangleMesh& mesh) const {
  if (kind == Kind::Point) {
    return bary[0] * mesh.corner(face, 0) + bary[1] * mesh.corner(face, 1) +
           bary[2] * mesh.corner(face, 2);
  }
  // representative point of a curve site: midpoint by arclength
  Scalar total = 0;
  for (size_t i = 0; i + 1 < polyline.size(); ++i) total += (polyline[i + 1] - polyline[i]).norm();
  Scalar acc = 0;
  for (size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Scalar len = (polyline[i + 1] - polyline[i]).norm();
    if (acc + len >= total / 2) {
      const Scalar t = len > 0 ? (total / 2 - acc) / len : 0;
      return polyline[i] + t * (polyline[i + 1] - polyline[i]);
    }
    acc += len;
  }
  return polyline.back();
}

bool SiteSet::any_nonzero_weight() const {
  for (const Site& s : sites)
    if (s.weight != 0) return true;
  return false;
}

Scalar SiteSet::max_abs_weight() const {
  Scalar w = 0;
  for (const Site& s : sites) w = std::max(w, std::abs(s.weight));
  return w;
}

void SolverConfig::validate() const {
  if (density && kind != DistanceKind::Euclidean)
    throw ParseError("density fields are supported with the euclidean solver only");
  if (density && density->quadrature_samples < 2)
    throw ParseError("density quadrature needs at least 2 subintervals");
}

Scalar point_to_curve_distance(const std::vector<Vec3>& curve, const Vec3& q) {
  Scalar best = std::numeric_limits<Scalar>::max();
  for (size_t i = 0; i + 1 < curve.size(); ++i)
    best = std::min(best, point_segment_distance(q, curve[i], curve[i + 1]));
  return best;
}

namespace {

Vec3 closest_point_on_curve(const std::vector<Vec3>& curve, const Vec3& q) {
  Vec3 best = curve.front();
  Scalar best_d = std::numeric_limits<Scalar>::max();
  for (size_t i = 0; i + 1 < curve.size(); ++i) {
    const Vec3 c = closest_point_on_segment(q, curve[i], curve[i + 1]);
    const Scalar d = (q - c).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

Scalar density_distance(const Vec3& p, const Vec3& v, const DensityField& field) {
  int n = field.quadrature_samples;
  if (n % 2) ++n;
  const Scalar h = Scalar(1) / n;
  Scalar sum = 0;
  for (int i = 0; i <= n; ++i) {
    const Scalar t = i * h;
    const Scalar rho = field.evaluator((1 - t) * v + t * p);
    // a zero exactly at a segment endpoint keeps the integral positive
    const bool endpoint = i == 0 || i == n;
    if (!(rho >= 0) || (rho == 0 && !endpoint))
      throw NonpositiveDensity("density must be positive along the segment");
    const Scalar w = endpoint ? 1 : (i % 2 ? 4 : 2);
    sum += w * rho;
  }
  return (v - p).norm() * sum * h / 3;
}

Scalar euclidean_root_distance(const SolverConfig& cfg, const Site& site, const Vec3& q,
                               const TriangleMesh& mesh) {
  const Vec3 anchor = site.kind == Site::Kind::Point ? site.position(mesh)
                                                     : closest_point_on_curve(site.polyline, q);
  if (cfg.density) return density_distance(anchor, q, *cfg.density);
  return (q - anchor).norm();
}

Scalar squared_distance(const SolverConfig& cfg, const Site& site, const Vec3& q,
                        const TriangleMesh& mesh) {
  const Scalar d = euclidean_root_distance(cfg, site, q, mesh);
  return d * d - (cfg.power ? site.weight : 0);
}

Scalar fmm_update(const Vec2& a, const Vec2& b, const Vec2& c, Scalar da, Scalar db) {
  const Scalar lab = (b - a).norm();
  const Scalar dijkstra = std::min(da + (c - a).norm(), db + (c - b).norm());
  if (lab <= 0) return dijkstra;

  // obtuse at the update vertex -> Dijkstra
  const Vec2 ca = a - c, cb = b - c;
  if (ca.dot(cb) < 0) return dijkstra;

  // local frame: a at origin, b on +x
  const Vec2 ex = (b - a) / lab;
  const Vec2 ey(-ex.y(), ex.x());
  const Vec2 cl(ex.dot(c - a), ey.dot(c - a));

  // virtual planar source q with ||q-a||=da, ||q-b||=db, on the far side of ab
  const Scalar qx = (da * da - db * db + lab * lab) / (2 * lab);
  const Scalar qy2 = da * da - qx * qx;
  if (qy2 < 0) return dijkstra;
  const Scalar qy = -std::copysign(std::sqrt(qy2), cl.y());

  // the characteristic q->c must enter through edge ab
  const Scalar denom = qy - cl.y();
  if (denom == 0) return dijkstra;
  const Scalar s = qy / denom;
  const Scalar xcross = qx + s * (cl.x() - qx);
  if (s < 0 || s > 1 || xcross < 0 || xcross > lab) return dijkstra;

  const Scalar d3 = (Vec2(qx, qy) - cl).norm();
  return std::min(d3, dijkstra);
}

// --- sites file -------------------------------------------------------------

SiteSet load_sites(const std::string& path, const TriangleMesh& mesh) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  SiteSet set;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    Site site;
    site.id = set.size();
    const std::string where = path + ":" + std::to_string(lineno);
    if (tag == "p") {
      site.kind = Site::Kind::Point;
      if (!(ss >> site.face >> site.bary[0] >> site.bary[1] >> site.bary[2]))
        throw ParseError(where + ": malformed point site");
      ss >> site.weight;  // optional; stream failure leaves 0
      if (site.face < 0 || site.face >= mesh.num_faces())
        throw ParseError(where + ": face id out of range");
      const Scalar sum = site.bary.sum();
      if (site.bary.minCoeff() < -1e-9 || std::abs(sum - 1) > 1e-6)
        throw ParseError(where + ": barycentric coords must be nonnegative and sum to 1");
      site.bary /= sum;
    } else if (tag == "c") {
      site.kind = Site::Kind::Curve;
      std::vector<Scalar> nums;
      Scalar x;
      while (ss >> x) nums.push_back(x);
      if (nums.size() % 3 == 1) {
        site.weight = nums.back();
        nums.pop_back();
      }
      if (nums.size() < 6 || nums.size() % 3 != 0)
        throw ParseError(where + ": curve site needs >= 2 points");
      for (size_t i = 0; i < nums.size(); i += 3)
        site.polyline.emplace_back(nums[i], nums[i + 1], nums[i + 2]);
      for (size_t i = 0; i + 1 < site.polyline.size(); ++i)
        if ((site.polyline[i + 1] - site.polyline[i]).norm() <= 0)
          throw ParseError(where + ": curve has repeated consecutive points");
    } else {
      throw ParseError(where + ": unknown site record '" + tag + "'");
    }
    set.sites.push_back(std::move(site));
  }
  if (set.sites.empty()) throw EmptySiteSet("no sites in " + path);
  return set;
}

void save_sites(const std::string& path, const SiteSet& sites) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  for (const Site& s : sites.sites) {
    if (s.kind == Site::Kind::Point) {
      out << "p " << s.face << " " << s.bary[0] << " " << s.bary[1] << " " << s.bary[2];
      if (s.weight != 0) out << " " << s.weight;
    } else {
      out << "c";
      for (const Vec3& p : s.polyline) out << " " << p.x() << " " << p.y() << " " << p.z();
      if (s.weight != 0) out << " " << s.weight;
    }
    out << "\n";
  }
}

DensityField make_density(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw ParseError("empty density spec");

  auto num = [&](size_t i, Scalar fallback) {
    if (i >= parts.size()) return fallback;
    try {
      return static_cast<Scalar>(std::stod(parts[i]));
    } catch (...) {
      throw ParseError("bad density parameter '" + parts[i] + "'");
    }
  };

  DensityField field;
  if (parts[0] == "constant") {
    const Scalar c = num(1, 1);
    field.evaluator = [c](const Vec3&) { return c; };
  } else if (parts[0] == "linear") {
    if (parts.size() < 2 || parts[1].size() != 1 || std::string("xyz").find(parts[1]) == std::string::npos)
      throw ParseError("linear density needs an axis: linear:<x|y|z>[:a:b]");
    const int axis = parts[1][0] - 'x';
    const Scalar a = num(2, 1), b = num(3, 1);
    field.evaluator = [axis, a, b](const Vec3& q) { return a * q[axis] + b; };
  } else if (parts[0] == "radial") {
    const Scalar a = num(1, 1), b = num(2, 1);
    field.evaluator = [a, b](const Vec3& q) { return a * q.norm() + b; };
  } else {
    throw ParseError("unknown density '" + parts[0] + "' (constant | linear | radial)");
  }
  return field;
}

}  // namespace sv
