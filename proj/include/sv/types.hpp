#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sv {

using Scalar = double;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Mat3 = Eigen::Matrix3d;

using FaceId = int;
using VertId = int;
using SiteId = int;

// Failure taxonomy. Every error aborts the operation that raised it;
// validators report instead of throwing.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateFace : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonManifoldEdge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularFrame : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotYetSwept : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonpositiveDensity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptySiteSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SegmentOutsideFace : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingFace : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPlanarInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sv
