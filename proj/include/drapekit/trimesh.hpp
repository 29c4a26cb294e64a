#pragma once
#include <Eigen/Core>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace drapekit {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// Indexed triangle mesh with optional labeled anchor points. The universal
// geometry carrier: garments, draped shapes, registration sources/targets.
// Units are meters throughout.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::map<std::string, int> anchors;  // label -> vertex index
  std::vector<Vec2> uv;                // optional, empty or one per vertex

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  bool empty() const { return vertices.empty() || triangles.empty(); }
};

constexpr double kDegenerateAreaThreshold = 1e-12;  // m^2

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);
Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c);  // unit

inline Vec3 triangle_barycenter(const Vec3& a, const Vec3& b, const Vec3& c) {
  return (a + b + c) / 3.0;
}

double triangle_area(const TriMesh& m, int t);
Vec3 triangle_barycenter(const TriMesh& m, int t);

double total_area(const TriMesh& m);

// Area-weighted center c = sum(a_i g_i) / sum(a_i) over triangles.
Vec3 area_weighted_center(const TriMesh& m);

// Representative size l = sum(a_i |g_i - c|) / sum(a_i). Zero for a single
// triangle, scales linearly under uniform scaling.
double representative_size(const TriMesh& m);

// Throws InvalidMesh if indices are out of range, a triangle is degenerate,
// or an anchor references a missing vertex.
void validate(const TriMesh& m);

struct Aabb {
  Vec3 min, max;
  Vec3 extent() const { return max - min; }
  double diagonal() const { return (max - min).norm(); }
};
Aabb bounding_box(const TriMesh& m);

// Edge adjacency. For each undirected edge: endpoint vertices, the one or
// two incident triangles, and the opposite vertex in each.
struct MeshEdge {
  int v0 = -1, v1 = -1;
  int tri0 = -1, tri1 = -1;
  int opp0 = -1, opp1 = -1;
  bool boundary() const { return tri1 < 0; }
};

struct EdgeTopology {
  std::vector<MeshEdge> edges;
  bool closed_manifold = false;  // every edge shared by exactly two triangles
};

EdgeTopology build_edge_topology(const TriMesh& m);

inline bool is_closed_manifold(const TriMesh& m) {
  return build_edge_topology(m).closed_manifold;
}

int euler_characteristic(const TriMesh& m);

// Basic transforms; anchors/uv/connectivity carried through unchanged.
TriMesh translated(const TriMesh& m, const Vec3& t);
TriMesh rotated(const TriMesh& m, const Eigen::Matrix3d& r);
TriMesh scaled_about(const TriMesh& m, const Vec3& center, double factor);

}  // namespace drapekit
