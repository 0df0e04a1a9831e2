#pragma once

#include <array>
#include <utility>
#include <vector>

#include "droplet/geometry.hpp"

namespace droplet {

// Triangulate the region enclosed by boundary_segments (a closed CCW loop over
// point indices; every segment endpoint must be a boundary point listed before
// any interior point). Returns CCW triangles covering the inside.
std::vector<std::array<int, 3>> constrained_delaunay(
    const std::vector<Vec2>& points, const std::vector<std::pair<int, int>>& boundary_segments);

// Laplacian smoothing of points[n_boundary..] with inversion rollback.
void smooth_interior(std::vector<Vec2>& points, const std::vector<std::array<int, 3>>& triangles,
                     int n_boundary, int sweeps);

}  // namespace droplet
