#pragma once
#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "drapekit/trimesh.hpp"

namespace drapekit {

// Paper-scale default: 384 voxels per meter.
constexpr double kDefaultFieldResolution = 384.0;

struct GridSpec {
  std::array<int, 3> dims{2, 2, 2};  // node counts per axis
  double resolution = kDefaultFieldResolution;  // voxels per meter
  Vec3 origin = Vec3::Zero();                   // position of node (0,0,0)

  double voxel_size() const { return 1.0 / resolution; }
  double voxel_diagonal() const { return voxel_size() * std::sqrt(3.0); }
  size_t node_count() const {
    return static_cast<size_t>(dims[0]) * dims[1] * dims[2];
  }
  size_t index(int i, int j, int k) const {  // x fastest
    return static_cast<size_t>(k) * dims[1] * dims[0] +
           static_cast<size_t>(j) * dims[0] + i;
  }
  Vec3 node_position(int i, int j, int k) const {
    return origin + Vec3(i, j, k) * voxel_size();
  }
  Vec3 max_corner() const {
    return node_position(dims[0] - 1, dims[1] - 1, dims[2] - 1);
  }
  bool contains(const Vec3& p) const {
    Vec3 hi = max_corner();
    return p.x() >= origin.x() && p.y() >= origin.y() && p.z() >= origin.z() &&
           p.x() <= hi.x() && p.y() <= hi.y() && p.z() <= hi.z();
  }
};

// Voxelized unsigned distance field with a stored closest surface point per
// node; the sign array is filled by sign_field() and is empty otherwise.
// distance is always >= 0, the inside/outside flag lives in sign.
struct DistanceField {
  GridSpec spec;
  std::vector<double> distance;   // per node, meters
  std::vector<Vec3> closest;      // per node, closest point on the mesh
  std::vector<int8_t> sign;       // -1 inside, +1 outside, 0 near surface

  bool has_sign() const { return !sign.empty(); }
  double signed_at_node(size_t idx) const {
    return (has_sign() ? sign[idx] : 1) * distance[idx];
  }
};

// Grid that encloses the mesh bounding box with padding
// max(5% of the diagonal, 2.5 voxels) on every side.
GridSpec auto_fit_grid(const TriMesh& mesh,
                       double resolution = kDefaultFieldResolution);

// Exact point-triangle distances within a 2-voxel narrow band, then
// 8-direction fast sweeping propagating (distance, closest point) pairs until
// the largest update falls below 1e-6 m. Throws OutOfBounds when the mesh is
// not inside the grid with 2 voxels to spare.
DistanceField build_distance_field(const TriMesh& mesh, const GridSpec& spec);
DistanceField build_distance_field(const TriMesh& mesh,
                                   double resolution = kDefaultFieldResolution);

// Inside/outside labels by flood fill from the grid boundary; nodes within
// half a voxel of the surface get sign 0 and block the fill. Requires a
// closed manifold mesh (throws NotWatertight otherwise).
DistanceField sign_field(const TriMesh& mesh, const DistanceField& field);

struct ClosestPointResult {
  Vec3 closest;
  double distance;
};

// O(1) closest-point query: evaluates the eight stored closest points on the
// surrounding cell's corners against p. Throws OutOfBounds outside the grid.
ClosestPointResult query_closest(const DistanceField& field, const Vec3& p);

// Exact distance (and closest point) from p to a triangle.
ClosestPointResult point_triangle_closest(const Vec3& p, const Vec3& a,
                                          const Vec3& b, const Vec3& c);

// Fixture dump: header (dims, resolution, origin as little-endian f64),
// distance as f32 x-fastest, sign as i8. Closest points are not persisted.
void save_field(const DistanceField& field, const std::filesystem::path& path);
DistanceField load_field(const std::filesystem::path& path);

}  // namespace drapekit
