// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/scene.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "solshade/errors.hpp"

namespace solshade {

namespace {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kMinEdgeM = 1e-3;
constexpr double kMinFootprintAreaM2 = 0.1;
constexpr double kMaxHeightM = 1000.0;
constexpr double kMaxProjectionSpanDeg = 2.0;

// Facades inherit the ring's winding; with CCW exterior / CW holes the solid
// always lies left of each directed edge, so the outward side is right:
// rotate the edge direction by -90 degrees.
Vec2 outward_from_edge(const Vec2& dir) { return Vec2{dir.y, -dir.x}; }

void append_ring_facades(const Building& b, std::size_t building_index, const Ring& ring,
                         std::size_t& k, std::vector<Facade>& out,
                         std::vector<std::string>* skipped_edges) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i, ++k) {
        const Vec2& va = ring[i];
        const Vec2& vb = ring[(i + 1) % n];
        const double len = (vb - va).norm();
        if (len < kMinEdgeM) {
            if (skipped_edges)
                skipped_edges->push_back(b.id + "/f" + std::to_string(k));
            continue;
        }
        Facade f;
        f.id = b.id + "/f" + std::to_string(k);
        f.building_id = b.id;
        f.building_index = building_index;
        f.vertex_a = va;
        f.vertex_b = vb;
        f.height_m = b.height_m;
        f.length_m = len;
        f.outward_normal = outward_from_edge((vb - va) * (1.0 / len));
        f.plane_a = f.outward_normal.x;
        f.plane_b = f.outward_normal.y;
        f.plane_d = -(f.plane_a * va.x + f.plane_b * va.y);
        out.push_back(std::move(f));
    }
}

}  // namespace

std::vector<Facade> decompose_facades(const Building& b, std::size_t building_index,
                                      std::vector<std::string>* skipped_edges) {
    std::vector<Facade> out;
    std::size_t k = 0;
    append_ring_facades(b, building_index, b.footprint.outer, k, out, skipped_edges);
    for (const Ring& hole : b.footprint.holes)
        append_ring_facades(b, building_index, hole, k, out, skipped_edges);
    return out;
}

GridIndex::GridIndex(const std::vector<Aabb>& boxes, const Aabb& bounds, double cell_size)
    : bounds_(bounds), cell_(std::max(cell_size, 1e-6)), boxes_(boxes) {
    nx_ = std::max(1, static_cast<int>(std::ceil(std::max(bounds_.width(), 0.0) / cell_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(std::max(bounds_.height(), 0.0) / cell_)));
    cells_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
        const Aabb& bx = boxes_[i];
        const int x0 = std::clamp(static_cast<int>((bx.min_x - bounds_.min_x) / cell_), 0, nx_ - 1);
        const int x1 = std::clamp(static_cast<int>((bx.max_x - bounds_.min_x) / cell_), 0, nx_ - 1);
        const int y0 = std::clamp(static_cast<int>((bx.min_y - bounds_.min_y) / cell_), 0, ny_ - 1);
        const int y1 = std::clamp(static_cast<int>((bx.max_y - bounds_.min_y) / cell_), 0, ny_ - 1);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                cells_[static_cast<std::size_t>(y) * nx_ + x].push_back(
                    static_cast<std::uint32_t>(i));
    }
}

std::vector<std::size_t> GridIndex::candidates(const Aabb& query) const {
    std::vector<std::size_t> out;
    if (cells_.empty()) return out;
    const int x0 = std::clamp(static_cast<int>((query.min_x - bounds_.min_x) / cell_), 0, nx_ - 1);
    const int x1 = std::clamp(static_cast<int>((query.max_x - bounds_.min_x) / cell_), 0, nx_ - 1);
    const int y0 = std::clamp(static_cast<int>((query.min_y - bounds_.min_y) / cell_), 0, ny_ - 1);
    const int y1 = std::clamp(static_cast<int>((query.max_y - bounds_.min_y) / cell_), 0, ny_ - 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            for (std::uint32_t idx : cells_[static_cast<std::size_t>(y) * nx_ + x])
                if (boxes_[idx].intersects(query)) out.push_back(idx);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Scene build_scene(std::vector<Building> buildings, const GeoLocation& origin) {
    if (buildings.empty()) throw ValidationError("scene contains no buildings");
    Scene scene;
    scene.origin = origin;

    std::unordered_set<std::string> seen_ids;
    for (const Building& b : buildings) {
        if (b.id.empty())
            throw ValidationError("building with empty id");
        if (!seen_ids.insert(b.id).second)
            throw ValidationError("duplicate building id: " + b.id);
        if (!(b.height_m > 0.0) || b.height_m > kMaxHeightM)
            throw ValidationError("building " + b.id + ": height " + std::to_string(b.height_m) +
                                  " outside (0, 1000] m");
        if (b.footprint.outer.size() < 3)
            throw ValidationError("building " + b.id + ": footprint ring has fewer than 3 vertices");
        if (!ring_is_simple(b.footprint.outer))
            throw ValidationError("building " + b.id + ": self-intersecting footprint ring");
        for (const Ring& hole : b.footprint.holes)
            if (hole.size() < 3 || !ring_is_simple(hole))
                throw ValidationError("building " + b.id + ": invalid hole ring");
        if (area(normalized(b.footprint)) <= kMinFootprintAreaM2)
            throw ValidationError("building " + b.id + ": footprint area below 0.1 m^2");
    }

    // Canonical winding before facade decomposition so outward normals hold.
    for (Building& b : buildings) b.footprint = normalized(b.footprint);
    scene.buildings = std::move(buildings);

    std::vector<Aabb> boxes;
    boxes.reserve(scene.buildings.size());
    std::vector<double> diagonals;
    diagonals.reserve(scene.buildings.size());
    bool first = true;
    for (std::size_t i = 0; i < scene.buildings.size(); ++i) {
        const Building& b = scene.buildings[i];

        RoofSurface roof;
        roof.id = b.id + "/roof";
        roof.building_id = b.id;
        roof.building_index = i;
        roof.polygon = b.footprint;
        roof.height_m = b.height_m;
        roof.area_m2 = area(b.footprint);
        scene.roofs.push_back(std::move(roof));

        std::vector<Facade> fs = decompose_facades(b, i);
        scene.facades.insert(scene.facades.end(), std::make_move_iterator(fs.begin()),
                             std::make_move_iterator(fs.end()));

        const Aabb box = bounding_box(b.footprint);
        boxes.push_back(box);
        diagonals.push_back(std::hypot(box.width(), box.height()));
        scene.bounds = first ? box : scene.bounds.united(box);
        first = false;
        scene.max_height_m = std::max(scene.max_height_m, b.height_m);
    }

    // Cell size: 95th-percentile footprint diagonal, so most buildings touch
    // only a handful of cells.
    double cell = 50.0;
    if (!diagonals.empty()) {
        std::sort(diagonals.begin(), diagonals.end());
        const std::size_t idx = std::min(
            diagonals.size() - 1, static_cast<std::size_t>(std::ceil(0.95 * diagonals.size())));
        cell = std::max(diagonals[idx], 1.0);
    }
    scene.index = GridIndex(boxes, scene.bounds, cell);
    return scene;
}

std::vector<Building> project_to_local(const std::vector<GeoFeature>& features,
                                       const GeoLocation& origin) {
    const double coslat0 = std::cos(origin.latitude_deg * kDegToRad);
    auto project = [&](const Vec2& lonlat) {
        if (std::abs(lonlat.x - origin.longitude_deg) > kMaxProjectionSpanDeg ||
            std::abs(lonlat.y - origin.latitude_deg) > kMaxProjectionSpanDeg)
            throw ValidationError("vertex farther than 2 degrees from scene origin");
        return Vec2{kEarthRadiusM * coslat0 * (lonlat.x - origin.longitude_deg) * kDegToRad,
                    kEarthRadiusM * (lonlat.y - origin.latitude_deg) * kDegToRad};
    };
    std::vector<Building> out;
    out.reserve(features.size());
    for (const GeoFeature& f : features) {
        Building b;
        b.id = f.id;
        b.height_m = f.height_m;
        b.footprint.outer.reserve(f.polygon_lonlat.outer.size());
        for (const Vec2& v : f.polygon_lonlat.outer) b.footprint.outer.push_back(project(v));
        for (const Ring& hole : f.polygon_lonlat.holes) {
            Ring local;
            local.reserve(hole.size());
            for (const Vec2& v : hole) local.push_back(project(v));
            b.footprint.holes.push_back(std::move(local));
        }
        out.push_back(std::move(b));
    }
    return out;
}

Vec2 local_to_lonlat(const Vec2& xy, const GeoLocation& origin) {
    const double coslat0 = std::cos(origin.latitude_deg * kDegToRad);
    return Vec2{origin.longitude_deg + xy.x / (kEarthRadiusM * coslat0) / kDegToRad,
                origin.latitude_deg + xy.y / kEarthRadiusM / kDegToRad};
}

GeoLocation origin_from_features(const std::vector<GeoFeature>& features) {
    if (features.empty()) throw ValidationError("no features to derive an origin from");
    double lon0 = features[0].polygon_lonlat.outer[0].x;
    double lat0 = features[0].polygon_lonlat.outer[0].y;
    double lon1 = lon0, lat1 = lat0;
    for (const GeoFeature& f : features)
        for (const Vec2& v : f.polygon_lonlat.outer) {
            lon0 = std::min(lon0, v.x);
            lon1 = std::max(lon1, v.x);
            lat0 = std::min(lat0, v.y);
            lat1 = std::max(lat1, v.y);
        }
    return GeoLocation{(lat0 + lat1) / 2.0, (lon0 + lon1) / 2.0};
}

}  // namespace solshade
