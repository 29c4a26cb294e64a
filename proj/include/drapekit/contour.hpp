#pragma once
#include <cstdint>
#include <vector>

#include "drapekit/trimesh.hpp"

namespace drapekit {

// Ordered closed polyline in the horizontal plane, meters. Orientation is
// normalized to CCW on validation; self-intersection is rejected.
struct Contour2D {
  std::vector<Vec2> points;
};

double polygon_signed_area(const std::vector<Vec2>& pts);
bool polygon_is_simple(const std::vector<Vec2>& pts);
bool point_in_polygon(const std::vector<Vec2>& pts, const Vec2& p);

// Throws InvalidContour on self-intersection or near-zero area; flips
// orientation in place if the input winds clockwise.
void validate_and_orient(Contour2D& contour);

// Builds a closed two-sided garment mesh from a flat contour: the contour is
// densified to the target spacing, interior points are inserted on a jittered
// grid, the region is triangulated, and the sheet is duplicated with a small
// offset along +/-z and stitched along the contour. Contour vertices are
// shared between the two sides, so the result is a closed orientable
// manifold (Euler characteristic 2). Original contour points always appear
// as mesh vertices. The sheet's mid-plane sits at z = 0.
TriMesh mesh_from_contour(const Contour2D& contour, double target_edge_len,
                          uint64_t jitter_seed = 0);

// The flat one-sided triangulation used as the first half of the above;
// exposed for area checks and tests. z = 0 for all vertices.
TriMesh triangulate_contour(const Contour2D& contour, double target_edge_len,
                            uint64_t jitter_seed = 0);

}  // namespace drapekit
