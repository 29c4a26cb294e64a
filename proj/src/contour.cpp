#include "drapekit/contour.hpp"

#include <algorithm>
#include <cmath>
#include <list>

#include "drapekit/errors.hpp"
#include "drapekit/rng.hpp"

namespace drapekit {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross2(b - a, c - a);
}

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                 const Vec2& d) {
  double d1 = orient(c, d, a);
  double d2 = orient(c, d, b);
  double d3 = orient(a, b, c);
  double d4 = orient(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double polygon_signed_area(const std::vector<Vec2>& pts) {
  double s = 0;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) s += cross2(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

bool polygon_is_simple(const std::vector<Vec2>& pts) {
  const size_t n = pts.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_properly_intersect(pts[i], pts[(i + 1) % n], pts[j],
                                      pts[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

bool point_in_polygon(const std::vector<Vec2>& pts, const Vec2& p) {
  // Crossing-number test.
  bool inside = false;
  const size_t n = pts.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      double x_at =
          a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x_at) inside = !inside;
    }
  }
  return inside;
}

void validate_and_orient(Contour2D& contour) {
  if (contour.points.size() < 3)
    throw InvalidContour("contour needs at least 3 points");
  if (!polygon_is_simple(contour.points))
    throw InvalidContour("contour is self-intersecting");
  double area = polygon_signed_area(contour.points);
  if (std::abs(area) < 1e-12) throw InvalidContour("contour has no area");
  if (area < 0) std::reverse(contour.points.begin(), contour.points.end());
}

namespace {

// -- triangulation scaffolding ------------------------------------------------

struct Tri2 {
  int v[3];
  int neighbor[3];  // neighbor[k] shares edge (v[k], v[(k+1)%3]); -1 = border
  bool alive = true;
};

struct Triangulation {
  std::vector<Vec2> points;
  std::vector<Tri2> tris;
  // Edges on the contour; never flipped.
  std::vector<std::pair<int, int>> locked;

  bool edge_locked(int a, int b) const {
    auto key = std::minmax(a, b);
    for (const auto& e : locked)
      if (std::minmax(e.first, e.second) == key) return true;
    return false;
  }
};

double tri_area2(const Triangulation& t, const Tri2& tr) {
  return orient(t.points[tr.v[0]], t.points[tr.v[1]], t.points[tr.v[2]]);
}

// Ear clipping of a simple CCW polygon; produces index triples into pts.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::list<int> ring;
  for (int i = 0; i < n; ++i) ring.push_back(i);

  auto is_ear = [&](std::list<int>::iterator it) {
    auto prev = it == ring.begin() ? std::prev(ring.end()) : std::prev(it);
    auto next = std::next(it) == ring.end() ? ring.begin() : std::next(it);
    const Vec2& a = pts[*prev];
    const Vec2& b = pts[*it];
    const Vec2& c = pts[*next];
    double ar = orient(a, b, c);
    if (ar <= 1e-14) return false;  // reflex or collinear corner
    for (int idx : ring) {
      if (idx == *prev || idx == *it || idx == *next) continue;
      const Vec2& p = pts[idx];
      if (orient(a, b, p) >= -1e-16 && orient(b, c, p) >= -1e-16 &&
          orient(c, a, p) >= -1e-16)
        return false;  // another ring vertex inside the candidate ear
    }
    return true;
  };

  std::vector<std::array<int, 3>> out;
  size_t guard = 0;
  const size_t guard_max = static_cast<size_t>(n) * static_cast<size_t>(n) * 4 + 64;
  auto it = ring.begin();
  while (ring.size() > 3) {
    if (++guard > guard_max)
      throw InvalidContour("ear clipping failed to terminate (degenerate contour?)");
    if (is_ear(it)) {
      auto prev = it == ring.begin() ? std::prev(ring.end()) : std::prev(it);
      auto next = std::next(it) == ring.end() ? ring.begin() : std::next(it);
      out.push_back({*prev, *it, *next});
      it = ring.erase(it);
      if (it == ring.end()) it = ring.begin();
    } else {
      ++it;
      if (it == ring.end()) it = ring.begin();
    }
  }
  auto a = ring.begin();
  auto b = std::next(a);
  auto c = std::next(b);
  out.push_back({*a, *b, *c});
  return out;
}

void rebuild_adjacency(Triangulation& t) {
  std::map<std::pair<int, int>, std::pair<int, int>> half;  // edge -> (tri, slot)
  for (auto& tr : t.tris)
    for (int k = 0; k < 3; ++k) tr.neighbor[k] = -1;
  for (int i = 0; i < static_cast<int>(t.tris.size()); ++i) {
    if (!t.tris[i].alive) continue;
    for (int k = 0; k < 3; ++k) {
      int a = t.tris[i].v[k], b = t.tris[i].v[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = half.find(key);
      if (it == half.end()) {
        half[key] = {i, k};
      } else {
        t.tris[i].neighbor[k] = it->second.first;
        t.tris[it->second.first].neighbor[it->second.second] = i;
      }
    }
  }
}

bool in_circumcircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  // > 0 when d lies inside the circumcircle of CCW triangle (a, b, c).
  double ax = a.x() - d.x(), ay = a.y() - d.y();
  double bx = b.x() - d.x(), by = b.y() - d.y();
  double cx = c.x() - d.x(), cy = c.y() - d.y();
  double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
               (bx * bx + by * by) * (ax * cy - cx * ay) +
               (cx * cx + cy * cy) * (ax * by - bx * ay);
  return det > 1e-18;
}

// Lawson flips to restore (constrained) Delaunay after a point insertion.
void lawson_flip(Triangulation& t) {
  bool changed = true;
  int rounds = 0;
  while (changed && rounds++ < 200) {
    changed = false;
    rebuild_adjacency(t);
    for (int i = 0; i < static_cast<int>(t.tris.size()); ++i) {
      if (!t.tris[i].alive) continue;
      for (int k = 0; k < 3; ++k) {
        int j = t.tris[i].neighbor[k];
        if (j < 0 || !t.tris[j].alive) continue;
        int a = t.tris[i].v[k], b = t.tris[i].v[(k + 1) % 3];
        if (t.edge_locked(a, b)) continue;
        int c = t.tris[i].v[(k + 2) % 3];
        // Opposite vertex in neighbor.
        int d = -1;
        for (int m = 0; m < 3; ++m) {
          int vm = t.tris[j].v[m];
          if (vm != a && vm != b) d = vm;
        }
        if (d < 0) continue;
        if (!in_circumcircle(t.points[a], t.points[b], t.points[c], t.points[d]))
          continue;
        // Flip only if both result triangles stay CCW.
        if (orient(t.points[a], t.points[d], t.points[c]) <= 1e-16) continue;
        if (orient(t.points[d], t.points[b], t.points[c]) <= 1e-16) continue;
        t.tris[i] = Tri2{{a, d, c}, {-1, -1, -1}, true};
        t.tris[j] = Tri2{{d, b, c}, {-1, -1, -1}, true};
        changed = true;
        rebuild_adjacency(t);
      }
    }
  }
}

void insert_point(Triangulation& t, const Vec2& p) {
  // Locate containing triangle (brute force; interior meshes are small).
  int host = -1;
  for (int i = 0; i < static_cast<int>(t.tris.size()); ++i) {
    if (!t.tris[i].alive) continue;
    const Tri2& tr = t.tris[i];
    const Vec2& a = t.points[tr.v[0]];
    const Vec2& b = t.points[tr.v[1]];
    const Vec2& c = t.points[tr.v[2]];
    if (orient(a, b, p) >= -1e-16 && orient(b, c, p) >= -1e-16 &&
        orient(c, a, p) >= -1e-16) {
      host = i;
      break;
    }
  }
  if (host < 0) return;  // outside after jitter; skip
  // Refuse points that would create a sliver against a host corner.
  const Tri2 tr = t.tris[host];
  double a0 = orient(t.points[tr.v[0]], t.points[tr.v[1]], p);
  double a1 = orient(t.points[tr.v[1]], t.points[tr.v[2]], p);
  double a2 = orient(t.points[tr.v[2]], t.points[tr.v[0]], p);
  double min_split = std::min({a0, a1, a2});
  if (min_split < 1e-4 * std::abs(tri_area2(t, tr))) return;

  int pi = static_cast<int>(t.points.size());
  t.points.push_back(p);
  t.tris[host].alive = false;
  t.tris.push_back(Tri2{{tr.v[0], tr.v[1], pi}, {-1, -1, -1}, true});
  t.tris.push_back(Tri2{{tr.v[1], tr.v[2], pi}, {-1, -1, -1}, true});
  t.tris.push_back(Tri2{{tr.v[2], tr.v[0], pi}, {-1, -1, -1}, true});
  lawson_flip(t);
}

std::vector<Vec2> densify_contour(const std::vector<Vec2>& pts, double spacing) {
  std::vector<Vec2> out;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % n];
    out.push_back(a);
    double len = (b - a).norm();
    int segments = static_cast<int>(std::floor(len / spacing));
    for (int k = 1; k <= segments; ++k) {
      Vec2 p = a + (b - a) * (static_cast<double>(k) / (segments + 1));
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

TriMesh triangulate_contour(const Contour2D& contour, double target_edge_len,
                            uint64_t jitter_seed) {
  if (target_edge_len <= 0)
    throw InvalidContour("target edge length must be positive");
  Contour2D c = contour;
  validate_and_orient(c);

  Triangulation t;
  t.points = densify_contour(c.points, target_edge_len);
  const int boundary_count = static_cast<int>(t.points.size());
  for (int i = 0; i < boundary_count; ++i)
    t.locked.emplace_back(i, (i + 1) % boundary_count);

  for (const auto& tri : ear_clip(t.points))
    t.tris.push_back(Tri2{{tri[0], tri[1], tri[2]}, {-1, -1, -1}, true});
  lawson_flip(t);

  // Interior points on a jittered grid, clipped to the polygon with a margin
  // so the boundary triangles keep a sane shape.
  Vec2 lo = t.points[0], hi = t.points[0];
  for (const auto& p : t.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Rng rng = make_rng(jitter_seed, "contour-grid-jitter");
  const double margin = 0.35 * target_edge_len;
  for (double y = lo.y() + target_edge_len * 0.5; y < hi.y();
       y += target_edge_len) {
    for (double x = lo.x() + target_edge_len * 0.5; x < hi.x();
         x += target_edge_len) {
      Vec2 p(x + 0.1 * target_edge_len * (2 * rng.uniform() - 1),
             y + 0.1 * target_edge_len * (2 * rng.uniform() - 1));
      if (!point_in_polygon(c.points, p)) continue;
      // Keep a margin from every contour segment.
      bool too_close = false;
      const size_t n = c.points.size();
      for (size_t i = 0; i < n && !too_close; ++i) {
        const Vec2& a = c.points[i];
        const Vec2& b = c.points[(i + 1) % n];
        Vec2 ab = b - a;
        double tt = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
        if ((p - (a + tt * ab)).norm() < margin) too_close = true;
      }
      if (too_close) continue;
      insert_point(t, p);
    }
  }

  TriMesh mesh;
  mesh.vertices.reserve(t.points.size());
  for (const auto& p : t.points) mesh.vertices.emplace_back(p.x(), p.y(), 0.0);
  for (const auto& tr : t.tris) {
    if (!tr.alive) continue;
    double a2 = orient(t.points[tr.v[0]], t.points[tr.v[1]], t.points[tr.v[2]]);
    if (std::abs(a2) * 0.5 <= kDegenerateAreaThreshold) continue;
    if (a2 > 0)
      mesh.triangles.push_back({tr.v[0], tr.v[1], tr.v[2]});
    else
      mesh.triangles.push_back({tr.v[0], tr.v[2], tr.v[1]});
  }
  return mesh;
}

TriMesh mesh_from_contour(const Contour2D& contour, double target_edge_len,
                          uint64_t jitter_seed) {
  TriMesh flat = triangulate_contour(contour, target_edge_len, jitter_seed);

  // triangulate_contour lists the densified contour chain first, before any
  // interior insertions; recover its length to know which vertices are shared
  // between the two sides.
  Contour2D c = contour;
  validate_and_orient(c);
  const size_t n = c.points.size();
  size_t boundary_count = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = c.points[i];
    const Vec2& b = c.points[(i + 1) % n];
    boundary_count += 1 + static_cast<size_t>(std::floor((b - a).norm() / target_edge_len));
  }

  Aabb box = bounding_box(flat);
  const double offset = 1e-3 * box.diagonal();  // total thickness
  const double half = 0.5 * offset;

  TriMesh out;
  const int nv = flat.vertex_count();
  const int interior_count = nv - static_cast<int>(boundary_count);
  out.vertices.reserve(boundary_count + 2 * interior_count);

  // Shared contour ring at z = 0, then top copies (+half) and bottom copies
  // (-half) of the interior vertices.
  for (int i = 0; i < static_cast<int>(boundary_count); ++i)
    out.vertices.push_back(flat.vertices[i]);
  std::vector<int> top_index(nv), bottom_index(nv);
  for (int i = 0; i < static_cast<int>(boundary_count); ++i)
    top_index[i] = bottom_index[i] = i;
  for (int i = static_cast<int>(boundary_count); i < nv; ++i) {
    top_index[i] = out.vertex_count();
    out.vertices.push_back(flat.vertices[i] + Vec3(0, 0, half));
  }
  for (int i = static_cast<int>(boundary_count); i < nv; ++i) {
    bottom_index[i] = out.vertex_count();
    out.vertices.push_back(flat.vertices[i] - Vec3(0, 0, half));
  }

  for (const auto& tri : flat.triangles) {
    out.triangles.push_back(
        {top_index[tri[0]], top_index[tri[1]], top_index[tri[2]]});
    // Mirrored side winds the other way so normals stay outward.
    out.triangles.push_back(
        {bottom_index[tri[0]], bottom_index[tri[2]], bottom_index[tri[1]]});
  }
  return out;
}

}  // namespace drapekit
