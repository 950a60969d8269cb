// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <cmath>
#include <vector>

namespace solshade {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Vertex ring without repeated closing point.
using Ring = std::vector<Vec2>;

// Simple polygon: counterclockwise outer ring, clockwise holes.
struct Polygon {
    Ring outer;
    std::vector<Ring> holes;
};

using MultiPolygon = std::vector<Polygon>;

struct Aabb {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool intersects(const Aabb& o) const {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
    bool contains(const Vec2& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    Aabb expanded(double m) const { return {min_x - m, min_y - m, max_x + m, max_y + m}; }
    Aabb united(const Aabb& o) const {
        return {std::min(min_x, o.min_x), std::min(min_y, o.min_y),
                std::max(max_x, o.max_x), std::max(max_y, o.max_y)};
    }
    Polygon to_polygon() const {
        return Polygon{{{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}}, {}};
    }
};

// ---------------------------------------------------------------------------
// Clipping kernel. Every polygon boolean in the project goes through these.
// Inputs are snapped to a 1e-7 m grid; output rings below 1e-4 m^2 are culled.
// ---------------------------------------------------------------------------

inline constexpr double kSnapGrid = 1e-7;     // m
inline constexpr double kSliverArea = 1e-4;   // m^2

double signed_ring_area(const Ring& r);
double ring_area(const Ring& r);  // |signed|

double area(const Polygon& p);
double area(const MultiPolygon& mp);

Vec2 ring_centroid(const Ring& r);
Aabb bounding_box(const Ring& r);
Aabb bounding_box(const Polygon& p);
Aabb bounding_box(const MultiPolygon& mp);

// Rounds every coordinate to the kernel grid.
Ring snap(const Ring& r);
Polygon snap(const Polygon& p);
MultiPolygon snap(const MultiPolygon& mp);

// Normalizes winding (CCW outer, CW holes) and drops duplicate vertices.
Polygon normalized(const Polygon& p);

// True when the ring (ignoring orientation) has no self-intersection and no
// repeated vertex. O(n^2); footprints are small.
bool ring_is_simple(const Ring& r);

MultiPolygon poly_union(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon poly_intersection(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon poly_difference(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon union_all(const std::vector<Polygon>& parts);

// Conserving two-way split of `a` by `b`: inside = a ∩ b, outside = a \ b,
// with the guarantee that area(inside) + area(outside) reproduces area(a)
// to 1e-9 relative when `consistent` is true. Unlike the plain booleans the
// split keeps every output ring (no sliver cull) and retries ill-conditioned
// cuts with the cutter shifted by one grid step before giving up; callers
// must keep `a` whole on one side when `consistent` comes back false.
struct SplitResult {
    MultiPolygon inside;
    MultiPolygon outside;
    bool consistent = false;
};
SplitResult poly_split(const MultiPolygon& a, const MultiPolygon& b);

// Point membership including the boundary.
bool covers_point(const Polygon& p, const Vec2& pt);
bool covers_point(const MultiPolygon& mp, const Vec2& pt);

// A point guaranteed to lie inside the multipolygon (first polygon).
Vec2 interior_point(const MultiPolygon& mp);

}  // namespace solshade
