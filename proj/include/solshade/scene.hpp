// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solshade/ephemeris.hpp"
#include "solshade/geometry.hpp"

namespace solshade {

// Extruded prism: 2D footprint (CCW outer, CW holes, meters, local frame)
// with a flat roof at `height_m`.
struct Building {
    std::string id;
    Polygon footprint;
    double height_m = 0.0;
};

// One vertical wall rectangle. Surface coordinates are (s, z): s meters
// along the base edge from vertex_a, z meters above ground.
struct Facade {
    std::string id;           // "<building_id>/f<k>"
    std::string building_id;
    std::size_t building_index = 0;
    Vec2 vertex_a;
    Vec2 vertex_b;
    double height_m = 0.0;
    double length_m = 0.0;
    Vec2 outward_normal;      // unit, away from the footprint interior
    // Vertical plane A*x + B*y + C*z + D = 0 with C = 0, (A,B) = outward_normal.
    double plane_a = 0.0;
    double plane_b = 0.0;
    double plane_d = 0.0;

    double area_m2() const { return length_m * height_m; }
    Vec2 edge_dir() const { return (vertex_b - vertex_a).normalized(); }
};

struct RoofSurface {
    std::string id;  // "<building_id>/roof"
    std::string building_id;
    std::size_t building_index = 0;
    Polygon polygon;      // equals the footprint, at elevation z = height
    double height_m = 0.0;
    double area_m2 = 0.0;
};

// Conservative uniform-grid index over building footprint boxes. Queries may
// over-return candidates, never under-return.
class GridIndex {
public:
    GridIndex() = default;
    GridIndex(const std::vector<Aabb>& boxes, const Aabb& bounds, double cell_size);

    // Indices of all entries whose box intersects `query`, ascending.
    std::vector<std::size_t> candidates(const Aabb& query) const;

    double cell_size() const { return cell_; }

private:
    Aabb bounds_{};
    double cell_ = 1.0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<std::uint32_t>> cells_;
    std::vector<Aabb> boxes_;
};

struct Scene {
    std::vector<Building> buildings;
    std::vector<RoofSurface> roofs;    // one per building, same order
    std::vector<Facade> facades;       // grouped by building, edge order
    GeoLocation origin;                // lat/lon of the local-frame origin
    Aabb bounds;                       // tight box over all footprints
    GridIndex index;                   // over building footprint boxes
    double max_height_m = 0.0;

    const Building& building(std::size_t i) const { return buildings[i]; }
};

// Lon/lat feature before projection into the local frame.
struct GeoFeature {
    std::string id;
    Polygon polygon_lonlat;  // x = longitude deg, y = latitude deg
    double height_m = 0.0;
};

// One facade per exterior and hole edge (edges under 1 mm are skipped and
// reported via `skipped_edges` when non-null).
std::vector<Facade> decompose_facades(const Building& b, std::size_t building_index,
                                      std::vector<std::string>* skipped_edges = nullptr);

// Validates buildings (unique ids, simple footprints, area > 0.1 m^2,
// height in (0, 1000]) and assembles the immutable scene.
Scene build_scene(std::vector<Building> buildings, const GeoLocation& origin);

// Equirectangular tangent projection: x = R*cos(lat0)*dlon, y = R*dlat,
// R = 6,371,000 m. Vertices beyond 2 degrees of the origin are rejected.
std::vector<Building> project_to_local(const std::vector<GeoFeature>& features,
                                       const GeoLocation& origin);

// Inverse of project_to_local for exports.
Vec2 local_to_lonlat(const Vec2& xy, const GeoLocation& origin);

// Default scene origin: center of the features' lon/lat bounding box.
GeoLocation origin_from_features(const std::vector<GeoFeature>& features);

}  // namespace solshade
