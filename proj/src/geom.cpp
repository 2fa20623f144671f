#include "sv/geom.hpp"

#include <vector>

namespace sv {

Vec3 closest_point_on_triangle(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, aq = q - a;
  const Scalar d1 = ab.dot(aq), d2 = ac.dot(aq);
  if (d1 <= 0 && d2 <= 0) return a;

  const Vec3 bq = q - b;
  const Scalar d3 = ab.dot(bq), d4 = ac.dot(bq);
  if (d3 >= 0 && d4 <= d3) return b;

  const Scalar vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const Scalar t = d1 / (d1 - d3);
    return a + t * ab;
  }

  const Vec3 cq = q - c;
  const Scalar d5 = ab.dot(cq), d6 = ac.dot(cq);
  if (d6 >= 0 && d5 <= d6) return c;

  const Scalar vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const Scalar t = d2 / (d2 - d6);
    return a + t * ac;
  }

  const Scalar va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const Scalar t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + t * (c - b);
  }

  const Scalar denom = Scalar(1) / (va + vb + vc);
  const Scalar v = vb * denom, w = vc * denom;
  return a + v * ab + w * ac;
}

Scalar polygon_signed_area(const std::vector<Vec2>& poly) {
  Scalar twice = 0;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return Scalar(0.5) * twice;
}

bool point_in_convex_polygon(const Vec2& p, const std::vector<Vec2>& poly, Scalar tol) {
  const int n = static_cast<int>(poly.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Vec2 e = b - a;
    const Scalar cross = e.x() * (p.y() - a.y()) - e.y() * (p.x() - a.x());
    if (cross < -tol) return false;
  }
  return true;
}

std::pair<std::vector<Vec2>, std::vector<Vec2>> split_convex_polygon(
    const std::vector<Vec2>& poly, const Vec2& p0, const Vec2& p1, Scalar tol) {
  const Vec2 dir = p1 - p0;
  auto side = [&](const Vec2& p) -> Scalar {
    return dir.x() * (p.y() - p0.y()) - dir.y() * (p.x() - p0.x());
  };
  std::vector<Vec2> left, right;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Scalar sa = side(a), sb = side(b);
    if (sa >= -tol) left.push_back(a);
    if (sa <= tol) right.push_back(a);
    if ((sa > tol && sb < -tol) || (sa < -tol && sb > tol)) {
      const Scalar t = sa / (sa - sb);
      const Vec2 x = a + t * (b - a);
      left.push_back(x);
      right.push_back(x);
    }
  }
  auto degenerate = [&](const std::vector<Vec2>& p) {
    return p.size() < 3 || std::abs(polygon_signed_area(p)) <= tol * tol;
  };
  if (degenerate(left)) left.clear();
  if (degenerate(right)) right.clear();
  return {left, right};
}

}  // namespace sv
