#include "drapekit/trimesh.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "drapekit/errors.hpp"

namespace drapekit {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = (b - a).cross(c - a);
  double len = n.norm();
  if (len < 1e-300) return Vec3::Zero();
  return n / len;
}

double triangle_area(const TriMesh& m, int t) {
  const auto& f = m.triangles[t];
  return triangle_area(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]);
}

Vec3 triangle_barycenter(const TriMesh& m, int t) {
  const auto& f = m.triangles[t];
  return triangle_barycenter(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]);
}

double total_area(const TriMesh& m) {
  double s = 0;
  for (int t = 0; t < m.triangle_count(); ++t) s += triangle_area(m, t);
  return s;
}

Vec3 area_weighted_center(const TriMesh& m) {
  if (m.empty()) throw InvalidMesh("area_weighted_center of empty mesh");
  Vec3 num = Vec3::Zero();
  double den = 0;
  for (int t = 0; t < m.triangle_count(); ++t) {
    double a = triangle_area(m, t);
    num += a * triangle_barycenter(m, t);
    den += a;
  }
  if (den <= 0) throw InvalidMesh("mesh has zero total area");
  return num / den;
}

double representative_size(const TriMesh& m) {
  if (m.empty()) throw InvalidMesh("representative_size of empty mesh");
  Vec3 c = area_weighted_center(m);
  double num = 0, den = 0;
  for (int t = 0; t < m.triangle_count(); ++t) {
    double a = triangle_area(m, t);
    num += a * (triangle_barycenter(m, t) - c).norm();
    den += a;
  }
  return num / den;
}

void validate(const TriMesh& m) {
  const int nv = m.vertex_count();
  for (const auto& f : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      if (f[k] < 0 || f[k] >= nv)
        throw InvalidMesh("triangle index out of range");
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw InvalidMesh("triangle with repeated vertex");
    if (triangle_area(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]) <=
        kDegenerateAreaThreshold)
      throw InvalidMesh("degenerate triangle (area below threshold)");
  }
  for (const auto& [label, idx] : m.anchors) {
    if (idx < 0 || idx >= nv)
      throw InvalidMesh("anchor '" + label + "' references missing vertex");
  }
  if (!m.uv.empty() && static_cast<int>(m.uv.size()) != nv)
    throw InvalidMesh("uv array size does not match vertex count");
}

Aabb bounding_box(const TriMesh& m) {
  if (m.vertices.empty()) throw InvalidMesh("bounding box of empty mesh");
  Aabb box{m.vertices[0], m.vertices[0]};
  for (const auto& v : m.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

EdgeTopology build_edge_topology(const TriMesh& m) {
  EdgeTopology topo;
  std::map<std::pair<int, int>, int> edge_index;
  bool manifold = true;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const auto& f = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3], opp = f[(k + 2) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        MeshEdge e;
        e.v0 = a;
        e.v1 = b;
        e.tri0 = t;
        e.opp0 = opp;
        edge_index.emplace(key, static_cast<int>(topo.edges.size()));
        topo.edges.push_back(e);
      } else {
        MeshEdge& e = topo.edges[it->second];
        if (e.tri1 >= 0) manifold = false;  // third triangle on one edge
        e.tri1 = t;
        e.opp1 = opp;
      }
    }
  }
  for (const auto& e : topo.edges)
    if (e.boundary()) manifold = false;
  topo.closed_manifold = manifold;
  return topo;
}

int euler_characteristic(const TriMesh& m) {
  EdgeTopology topo = build_edge_topology(m);
  return m.vertex_count() - static_cast<int>(topo.edges.size()) +
         m.triangle_count();
}

TriMesh translated(const TriMesh& m, const Vec3& t) {
  TriMesh out = m;
  for (auto& v : out.vertices) v += t;
  return out;
}

TriMesh rotated(const TriMesh& m, const Eigen::Matrix3d& r) {
  TriMesh out = m;
  for (auto& v : out.vertices) v = r * v;
  return out;
}

TriMesh scaled_about(const TriMesh& m, const Vec3& center, double factor) {
  TriMesh out = m;
  for (auto& v : out.vertices) v = center + factor * (v - center);
  return out;
}

}  // namespace drapekit
