#pragma once

#include "sv/types.hpp"

namespace sv {

// Small geometric helpers shared across modules. Free functions over Eigen
// expressions so callers can pass blocks/maps without materializing.

template <typename DA, typename DB, typename DC>
Scalar triangle_area3(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                      const Eigen::MatrixBase<DC>& c) {
  return Scalar(0.5) * (b.derived() - a.derived()).cross(c.derived() - a.derived()).norm();
}

template <typename DA, typename DB, typename DC>
Scalar triangle_area2(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                      const Eigen::MatrixBase<DC>& c) {
  const Vec2 u = b.derived() - a.derived();
  const Vec2 v = c.derived() - a.derived();
  return Scalar(0.5) * (u.x() * v.y() - u.y() * v.x());
}

// Closest point on segment [a,b] to q.
template <typename DQ, typename DA, typename DB>
Vec3 closest_point_on_segment(const Eigen::MatrixBase<DQ>& q, const Eigen::MatrixBase<DA>& a,
                              const Eigen::MatrixBase<DB>& b) {
  const Vec3 ab = b.derived() - a.derived();
  const Scalar len2 = ab.squaredNorm();
  if (len2 <= Scalar(0)) return a.derived();
  Scalar t = (q.derived() - a.derived()).dot(ab) / len2;
  t = std::clamp(t, Scalar(0), Scalar(1));
  return a.derived() + t * ab;
}

template <typename DQ, typename DA, typename DB>
Scalar point_segment_distance(const Eigen::MatrixBase<DQ>& q, const Eigen::MatrixBase<DA>& a,
                              const Eigen::MatrixBase<DB>& b) {
  return (q.derived() - closest_point_on_segment(q, a, b)).norm();
}

// Closest point on triangle (a,b,c) to q.  Ericson-style region tests.
Vec3 closest_point_on_triangle(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c);

inline Scalar point_triangle_distance(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
  return (q - closest_point_on_triangle(q, a, b, c)).norm();
}

// Signed area of a simple 2D polygon (positive = CCW).
Scalar polygon_signed_area(const std::vector<Vec2>& poly);

// Point-in-convex-polygon with tolerance; polygon assumed CCW.
bool point_in_convex_polygon(const Vec2& p, const std::vector<Vec2>& poly, Scalar tol);

// Split a convex CCW polygon by the oriented line through p0->p1.
// Returns {left (positive side), right (negative side)}; either may be empty.
std::pair<std::vector<Vec2>, std::vector<Vec2>> split_convex_polygon(
    const std::vector<Vec2>& poly, const Vec2& p0, const Vec2& p1, Scalar tol);

}  // namespace sv
