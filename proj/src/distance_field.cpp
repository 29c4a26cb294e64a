#include "drapekit/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "drapekit/errors.hpp"

namespace drapekit {

ClosestPointResult point_triangle_closest(const Vec3& p, const Vec3& a,
                                          const Vec3& b, const Vec3& c) {
  // Ericson, Real-Time Collision Detection, 5.1.5.
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return {a, (p - a).norm()};

  Vec3 bp = p - b;
  double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return {b, (p - b).norm()};

  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    double v = d1 / (d1 - d3);
    Vec3 q = a + v * ab;
    return {q, (p - q).norm()};
  }

  Vec3 cp = p - c;
  double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return {c, (p - c).norm()};

  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    double w = d2 / (d2 - d6);
    Vec3 q = a + w * ac;
    return {q, (p - q).norm()};
  }

  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    Vec3 q = b + w * (c - b);
    return {q, (p - q).norm()};
  }

  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  Vec3 q = a + ab * v + ac * w;
  return {q, (p - q).norm()};
}

GridSpec auto_fit_grid(const TriMesh& mesh, double resolution) {
  if (mesh.vertices.empty()) throw InvalidMesh("auto_fit_grid of empty mesh");
  Aabb box = bounding_box(mesh);
  const double voxel = 1.0 / resolution;
  const double pad = std::max(0.05 * box.diagonal(), 2.5 * voxel);
  GridSpec spec;
  spec.resolution = resolution;
  spec.origin = box.min - Vec3::Constant(pad);
  Vec3 size = box.extent() + Vec3::Constant(2 * pad);
  for (int k = 0; k < 3; ++k)
    spec.dims[k] = std::max(2, static_cast<int>(std::ceil(size[k] / voxel)) + 1);
  return spec;
}

namespace {

struct NodeRange {
  int lo[3], hi[3];
};

NodeRange node_range_for(const GridSpec& spec, const Vec3& lo_pt,
                         const Vec3& hi_pt) {
  NodeRange r;
  const double voxel = spec.voxel_size();
  for (int k = 0; k < 3; ++k) {
    r.lo[k] = std::max(
        0, static_cast<int>(std::floor((lo_pt[k] - spec.origin[k]) / voxel)));
    r.hi[k] = std::min(
        spec.dims[k] - 1,
        static_cast<int>(std::ceil((hi_pt[k] - spec.origin[k]) / voxel)));
  }
  return r;
}

}  // namespace

DistanceField build_distance_field(const TriMesh& mesh, const GridSpec& spec) {
  if (mesh.empty()) throw InvalidMesh("build_distance_field of empty mesh");
  const double voxel = spec.voxel_size();
  {
    Aabb box = bounding_box(mesh);
    Vec3 lo_ok = spec.origin + Vec3::Constant(2 * voxel);
    Vec3 hi_ok = spec.max_corner() - Vec3::Constant(2 * voxel);
    for (int k = 0; k < 3; ++k)
      if (box.min[k] < lo_ok[k] || box.max[k] > hi_ok[k])
        throw OutOfBounds("mesh not inside grid with 2-voxel padding");
  }

  DistanceField f;
  f.spec = spec;
  f.distance.assign(spec.node_count(), std::numeric_limits<double>::infinity());
  f.closest.assign(spec.node_count(), Vec3::Zero());

  // Exact seeding in a 2-voxel band around every triangle.
  const double band = 2.0 * voxel;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    Vec3 lo = a.cwiseMin(b).cwiseMin(c) - Vec3::Constant(band);
    Vec3 hi = a.cwiseMax(b).cwiseMax(c) + Vec3::Constant(band);
    NodeRange r = node_range_for(spec, lo, hi);
    for (int k = r.lo[2]; k <= r.hi[2]; ++k)
      for (int j = r.lo[1]; j <= r.hi[1]; ++j)
        for (int i = r.lo[0]; i <= r.hi[0]; ++i) {
          size_t idx = spec.index(i, j, k);
          Vec3 node = spec.node_position(i, j, k);
          ClosestPointResult res = point_triangle_closest(node, a, b, c);
          if (res.distance < f.distance[idx]) {
            f.distance[idx] = res.distance;
            f.closest[idx] = res.closest;
          }
        }
  }

  // Fast sweeping: 8 axis-octant orderings, each relaxing from the 13
  // already-visited neighbors; repeated until converged.
  const int nx = spec.dims[0], ny = spec.dims[1], nz = spec.dims[2];
  struct Offset {
    int dx, dy, dz;
  };
  std::vector<Offset> all;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (dx || dy || dz) all.push_back({dx, dy, dz});

  for (int round = 0; round < 8; ++round) {
    double max_update = 0;
    for (int sweep = 0; sweep < 8; ++sweep) {
      const int sx = (sweep & 1) ? -1 : 1;
      const int sy = (sweep & 2) ? -1 : 1;
      const int sz = (sweep & 4) ? -1 : 1;
      std::vector<Offset> behind;
      for (const auto& o : all) {
        int rz = o.dz * sz, ry = o.dy * sy, rx = o.dx * sx;
        if (rz < 0 || (rz == 0 && (ry < 0 || (ry == 0 && rx < 0))))
          behind.push_back(o);
      }
      for (int kk = 0; kk < nz; ++kk) {
        int k = sz > 0 ? kk : nz - 1 - kk;
        for (int jj = 0; jj < ny; ++jj) {
          int j = sy > 0 ? jj : ny - 1 - jj;
          for (int ii = 0; ii < nx; ++ii) {
            int i = sx > 0 ? ii : nx - 1 - ii;
            size_t idx = spec.index(i, j, k);
            Vec3 node = spec.node_position(i, j, k);
            for (const auto& o : behind) {
              int ni = i + o.dx, nj = j + o.dy, nk = k + o.dz;
              if (ni < 0 || nj < 0 || nk < 0 || ni >= nx || nj >= ny || nk >= nz)
                continue;
              size_t nidx = spec.index(ni, nj, nk);
              if (!std::isfinite(f.distance[nidx])) continue;
              double cand = (node - f.closest[nidx]).norm();
              if (cand < f.distance[idx]) {
                max_update = std::max(max_update, f.distance[idx] - cand);
                f.distance[idx] = cand;
                f.closest[idx] = f.closest[nidx];
              }
            }
          }
        }
      }
    }
    if (max_update < 1e-6) break;
  }
  return f;
}

DistanceField build_distance_field(const TriMesh& mesh, double resolution) {
  return build_distance_field(mesh, auto_fit_grid(mesh, resolution));
}

DistanceField sign_field(const TriMesh& mesh, const DistanceField& field) {
  if (!is_closed_manifold(mesh))
    throw NotWatertight("sign_field requires a closed manifold mesh");
  DistanceField out = field;
  const GridSpec& spec = out.spec;
  const int nx = spec.dims[0], ny = spec.dims[1], nz = spec.dims[2];
  // 0 = unvisited, 1 = outside, 2 = blocked (near surface).
  std::vector<uint8_t> mark(spec.node_count(), 0);
  const double block = 0.5 * spec.voxel_size() * (1.0 + 1e-12);
  for (size_t idx = 0; idx < spec.node_count(); ++idx)
    if (out.distance[idx] <= block) mark[idx] = 2;

  std::deque<std::array<int, 3>> queue;
  auto push_if_open = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return;
    size_t idx = spec.index(i, j, k);
    if (mark[idx] != 0) return;
    mark[idx] = 1;
    queue.push_back({i, j, k});
  };
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 ||
            k == nz - 1)
          push_if_open(i, j, k);
  while (!queue.empty()) {
    auto [i, j, k] = queue.front();
    queue.pop_front();
    push_if_open(i + 1, j, k);
    push_if_open(i - 1, j, k);
    push_if_open(i, j + 1, k);
    push_if_open(i, j - 1, k);
    push_if_open(i, j, k + 1);
    push_if_open(i, j, k - 1);
  }
  out.sign.assign(spec.node_count(), 0);
  for (size_t idx = 0; idx < spec.node_count(); ++idx) {
    if (mark[idx] == 2)
      out.sign[idx] = 0;
    else
      out.sign[idx] = mark[idx] == 1 ? 1 : -1;
  }
  return out;
}

ClosestPointResult query_closest(const DistanceField& field, const Vec3& p) {
  const GridSpec& spec = field.spec;
  if (!spec.contains(p)) throw OutOfBounds("query point outside grid");
  const double voxel = spec.voxel_size();
  Vec3 local = (p - spec.origin) / voxel;
  int i0 = std::min(static_cast<int>(local.x()), spec.dims[0] - 2);
  int j0 = std::min(static_cast<int>(local.y()), spec.dims[1] - 2);
  int k0 = std::min(static_cast<int>(local.z()), spec.dims[2] - 2);
  ClosestPointResult best{Vec3::Zero(), std::numeric_limits<double>::infinity()};
  for (int dk = 0; dk < 2; ++dk)
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) {
        size_t idx = spec.index(i0 + di, j0 + dj, k0 + dk);
        if (!std::isfinite(field.distance[idx])) continue;
        const Vec3& cp = field.closest[idx];
        double d = (p - cp).norm();
        if (d < best.distance) best = {cp, d};
      }
  return best;
}

void save_field(const DistanceField& field, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw Error("IoError", "cannot write " + path.string());
  double header[7] = {static_cast<double>(field.spec.dims[0]),
                      static_cast<double>(field.spec.dims[1]),
                      static_cast<double>(field.spec.dims[2]),
                      field.spec.resolution,
                      field.spec.origin.x(),
                      field.spec.origin.y(),
                      field.spec.origin.z()};
  std::fwrite(header, sizeof(double), 7, f);
  std::vector<float> dist32(field.distance.begin(), field.distance.end());
  std::fwrite(dist32.data(), sizeof(float), dist32.size(), f);
  std::vector<int8_t> sign = field.sign;
  if (sign.empty()) sign.assign(field.spec.node_count(), 1);
  std::fwrite(sign.data(), sizeof(int8_t), sign.size(), f);
  std::fclose(f);
}

DistanceField load_field(const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "rb");
  if (!f) throw Error("IoError", "cannot open " + path.string());
  double header[7];
  if (std::fread(header, sizeof(double), 7, f) != 7) {
    std::fclose(f);
    throw Error("IoError", "truncated field header");
  }
  DistanceField out;
  out.spec.dims = {static_cast<int>(header[0]), static_cast<int>(header[1]),
                   static_cast<int>(header[2])};
  out.spec.resolution = header[3];
  out.spec.origin = Vec3(header[4], header[5], header[6]);
  size_t n = out.spec.node_count();
  std::vector<float> dist32(n);
  if (std::fread(dist32.data(), sizeof(float), n, f) != n) {
    std::fclose(f);
    throw Error("IoError", "truncated distance data");
  }
  out.distance.assign(dist32.begin(), dist32.end());
  out.sign.resize(n);
  if (std::fread(out.sign.data(), sizeof(int8_t), n, f) != n) {
    std::fclose(f);
    throw Error("IoError", "truncated sign data");
  }
  std::fclose(f);
  return out;
}

}  // namespace drapekit
