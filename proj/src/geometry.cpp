// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/geometry.hpp"

#include <algorithm>
#include <iterator>

#include <boost/geometry.hpp>
#include <boost/geometry/algorithms/point_on_surface.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "solshade/errors.hpp"

namespace solshade {

namespace bg = boost::geometry;
using BoostPoint = bg::model::d2::point_xy<double>;
using BoostPolygon = bg::model::polygon<BoostPoint, /*ClockWise=*/false, /*Closed=*/false>;
using BoostMulti = bg::model::multi_polygon<BoostPolygon>;

namespace {

double snap_value(double v) { return std::round(v / kSnapGrid) * kSnapGrid; }

void append_ring(BoostPolygon::ring_type& dst, const Ring& src) {
    dst.reserve(src.size());
    for (const Vec2& v : src) dst.emplace_back(v.x, v.y);
}

BoostMulti to_boost(const MultiPolygon& mp) {
    BoostMulti out;
    out.reserve(mp.size());
    for (const Polygon& p : mp) {
        if (p.outer.size() < 3) continue;
        BoostPolygon bp;
        append_ring(bp.outer(), p.outer);
        for (const Ring& h : p.holes) {
            if (h.size() < 3) continue;
            bp.inners().emplace_back();
            append_ring(bp.inners().back(), h);
        }
        out.push_back(std::move(bp));
    }
    bg::correct(out);
    return out;
}

Ring ring_from_boost(const BoostPolygon::ring_type& r) {
    Ring out;
    out.reserve(r.size());
    for (const BoostPoint& p : r) out.push_back({bg::get<0>(p), bg::get<1>(p)});
    // Drop an explicit closing vertex if present.
    if (out.size() > 1 && out.front().x == out.back().x && out.front().y == out.back().y) {
        out.pop_back();
    }
    return out;
}

// Converts back and culls slivers per the kernel contract.
MultiPolygon from_boost(const BoostMulti& bm) {
    MultiPolygon out;
    out.reserve(bm.size());
    for (const BoostPolygon& bp : bm) {
        Polygon p;
        p.outer = ring_from_boost(bp.outer());
        if (p.outer.size() < 3 || ring_area(p.outer) < kSliverArea) continue;
        for (const auto& h : bp.inners()) {
            Ring hr = ring_from_boost(h);
            if (hr.size() >= 3 && ring_area(hr) >= kSliverArea) p.holes.push_back(std::move(hr));
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

double signed_ring_area(const Ring& r) {
    if (r.size() < 3) return 0.0;
    double s = 0.0;
    for (size_t i = 0, n = r.size(); i < n; ++i) {
        const Vec2& a = r[i];
        const Vec2& b = r[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

double ring_area(const Ring& r) { return std::abs(signed_ring_area(r)); }

double area(const Polygon& p) {
    double a = ring_area(p.outer);
    for (const Ring& h : p.holes) a -= ring_area(h);
    return a;
}

double area(const MultiPolygon& mp) {
    double a = 0.0;
    for (const Polygon& p : mp) a += area(p);
    return a;
}

Vec2 ring_centroid(const Ring& r) {
    const double s = signed_ring_area(r);
    if (r.empty()) return {0.0, 0.0};
    if (std::abs(s) < 1e-12) {
        Vec2 c{0.0, 0.0};
        for (const Vec2& v : r) c = c + v;
        return c * (1.0 / static_cast<double>(r.size()));
    }
    double cx = 0.0, cy = 0.0;
    for (size_t i = 0, n = r.size(); i < n; ++i) {
        const Vec2& a = r[i];
        const Vec2& b = r[(i + 1) % n];
        const double w = a.x * b.y - b.x * a.y;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {cx / (6.0 * s), cy / (6.0 * s)};
}

Aabb bounding_box(const Ring& r) {
    Aabb b{r.empty() ? 0.0 : r[0].x, r.empty() ? 0.0 : r[0].y,
           r.empty() ? 0.0 : r[0].x, r.empty() ? 0.0 : r[0].y};
    for (const Vec2& v : r) {
        b.min_x = std::min(b.min_x, v.x);
        b.min_y = std::min(b.min_y, v.y);
        b.max_x = std::max(b.max_x, v.x);
        b.max_y = std::max(b.max_y, v.y);
    }
    return b;
}

Aabb bounding_box(const Polygon& p) { return bounding_box(p.outer); }

Aabb bounding_box(const MultiPolygon& mp) {
    if (mp.empty()) return {};
    Aabb b = bounding_box(mp[0]);
    for (size_t i = 1; i < mp.size(); ++i) b = b.united(bounding_box(mp[i]));
    return b;
}

Ring snap(const Ring& r) {
    Ring out;
    out.reserve(r.size());
    for (const Vec2& v : r) {
        Vec2 s{snap_value(v.x), snap_value(v.y)};
        if (!out.empty() && out.back().x == s.x && out.back().y == s.y) continue;
        out.push_back(s);
    }
    if (out.size() > 1 && out.front().x == out.back().x && out.front().y == out.back().y) {
        out.pop_back();
    }
    return out;
}

Polygon snap(const Polygon& p) {
    Polygon out;
    out.outer = snap(p.outer);
    for (const Ring& h : p.holes) {
        Ring s = snap(h);
        if (s.size() >= 3) out.holes.push_back(std::move(s));
    }
    return out;
}

MultiPolygon snap(const MultiPolygon& mp) {
    MultiPolygon out;
    out.reserve(mp.size());
    for (const Polygon& p : mp) {
        Polygon s = snap(p);
        if (s.outer.size() >= 3) out.push_back(std::move(s));
    }
    return out;
}

Polygon normalized(const Polygon& p) {
    Polygon out = p;
    if (signed_ring_area(out.outer) < 0.0) std::reverse(out.outer.begin(), out.outer.end());
    for (Ring& h : out.holes) {
        if (signed_ring_area(h) > 0.0) std::reverse(h.begin(), h.end());
    }
    return out;
}

namespace {

// Proper or touching intersection of segments (a,b) and (c,d), excluding the
// shared endpoint of adjacent edges (handled by the caller).
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = (b - a).cross(c - a);
    const double d2 = (b - a).cross(d - a);
    const double d3 = (d - c).cross(a - c);
    const double d4 = (d - c).cross(b - c);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return std::abs((q - p).cross(r - p)) < 1e-12 &&
               std::min(p.x, q.x) - 1e-12 <= r.x && r.x <= std::max(p.x, q.x) + 1e-12 &&
               std::min(p.y, q.y) - 1e-12 <= r.y && r.y <= std::max(p.y, q.y) + 1e-12;
    };
    if (std::abs(d1) < 1e-12 && on_segment(a, b, c)) return true;
    if (std::abs(d2) < 1e-12 && on_segment(a, b, d)) return true;
    if (std::abs(d3) < 1e-12 && on_segment(c, d, a)) return true;
    if (std::abs(d4) < 1e-12 && on_segment(c, d, b)) return true;
    return false;
}

}  // namespace

bool ring_is_simple(const Ring& r) {
    const size_t n = r.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (r[i].x == r[j].x && r[i].y == r[j].y) return false;  // repeated vertex
        }
    }
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = r[i];
        const Vec2& b = r[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent
            const Vec2& c = r[j];
            const Vec2& d = r[(j + 1) % n];
            if (segments_cross(a, b, c, d)) return false;
        }
    }
    return true;
}

MultiPolygon poly_union(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty()) return from_boost(to_boost(snap(b)));
    if (b.empty()) return from_boost(to_boost(snap(a)));
    BoostMulti out;
    bg::union_(to_boost(snap(a)), to_boost(snap(b)), out);
    return from_boost(out);
}

MultiPolygon poly_intersection(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty() || b.empty()) return {};
    BoostMulti out;
    bg::intersection(to_boost(snap(a)), to_boost(snap(b)), out);
    return from_boost(out);
}

MultiPolygon poly_difference(const MultiPolygon& a, const MultiPolygon& b) {
    if (a.empty()) return {};
    if (b.empty()) return from_boost(to_boost(snap(a)));
    BoostMulti out;
    bg::difference(to_boost(snap(a)), to_boost(snap(b)), out);
    return from_boost(out);
}

MultiPolygon union_all(const std::vector<Polygon>& parts) {
    MultiPolygon acc;
    for (const Polygon& p : parts) {
        acc = poly_union(acc, MultiPolygon{p});
    }
    return acc;
}

namespace {

// Keeps every ring with positive area; used by poly_split, which must not
// shed sub-sliver shards (they would leak partition area).
MultiPolygon from_boost_keep_all(const BoostMulti& bm) {
    MultiPolygon out;
    out.reserve(bm.size());
    for (const BoostPolygon& bp : bm) {
        Polygon p;
        p.outer = ring_from_boost(bp.outer());
        if (p.outer.size() < 3 || ring_area(p.outer) <= 0.0) continue;
        for (const auto& h : bp.inners()) {
            Ring hr = ring_from_boost(h);
            if (hr.size() >= 3 && ring_area(hr) > 0.0) p.holes.push_back(std::move(hr));
        }
        out.push_back(std::move(p));
    }
    return out;
}

MultiPolygon translated(const MultiPolygon& mp, double dx, double dy) {
    MultiPolygon out = mp;
    for (Polygon& p : out) {
        for (Vec2& v : p.outer) v = {v.x + dx, v.y + dy};
        for (Ring& h : p.holes)
            for (Vec2& v : h) v = {v.x + dx, v.y + dy};
    }
    return out;
}

}  // namespace

SplitResult poly_split(const MultiPolygon& a, const MultiPolygon& b) {
    SplitResult r;
    const MultiPolygon sa = snap(a);
    if (sa.empty()) {
        r.consistent = true;
        return r;
    }
    if (b.empty()) {
        r.outside = sa;
        r.consistent = true;
        return r;
    }
    const double a_area = area(sa);
    const double tol = 1e-9 * std::max(1.0, a_area);
    const BoostMulti ba = to_boost(sa);
    const MultiPolygon sb = snap(b);
    // a \ b is computed as a ∩ (box \ b) rather than with the backend's
    // difference, which drops cuts outright when operands share vertices or
    // run collinear (common here: shadows start exactly at roof corners).
    // The box strictly contains both operands, so carving b from it never
    // hits a degenerate contact. 1.0 m margin keeps corners on the grid.
    const Aabb box = bounding_box(sa).united(bounding_box(sb)).expanded(1.0);
    const BoostMulti bbox = to_boost(MultiPolygon{box.to_polygon()});
    // Shared vertices / collinear contact can still make a cut inconsistent;
    // shifting the cutter one grid step breaks the degeneracy while moving
    // the cut line by at most ~1e-7 m.
    static constexpr double g = kSnapGrid;
    static constexpr double kOffsets[][2] = {{0.0, 0.0}, {g, 0.0},  {0.0, -g}, {-g, 0.0},
                                             {0.0, g},   {g, g},    {-g, -g},  {g, -g},
                                             {-g, g}};
    for (std::size_t attempt = 0; attempt < std::size(kOffsets); ++attempt) {
        const MultiPolygon sbk =
            attempt == 0 ? sb : snap(translated(sb, kOffsets[attempt][0], kOffsets[attempt][1]));
        const BoostMulti bb = to_boost(sbk);
        BoostMulti bcomp, bi, bo;
        bg::difference(bbox, bb, bcomp);
        bg::intersection(ba, bb, bi);
        bg::intersection(ba, bcomp, bo);
        MultiPolygon inside = from_boost_keep_all(bi);
        MultiPolygon outside = from_boost_keep_all(bo);
        const bool ok = std::abs(area(inside) + area(outside) - a_area) <= tol;
        if (ok || attempt == 0) {
            r.inside = std::move(inside);
            r.outside = std::move(outside);
            r.consistent = ok;
        }
        if (ok) break;
    }
    return r;
}

namespace {

// Even-odd crossing test, no allocation. Points exactly on an edge land on
// either side; callers that care keep clear of boundaries.
bool ring_contains(const Ring& r, const Vec2& pt) {
    bool inside = false;
    for (size_t i = 0, n = r.size(), j = n - 1; i < n; j = i++) {
        const Vec2& a = r[j];
        const Vec2& b = r[i];
        if ((b.y > pt.y) != (a.y > pt.y)) {
            const double x_cross = b.x + (pt.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (pt.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

bool covers_point(const Polygon& p, const Vec2& pt) {
    if (!ring_contains(p.outer, pt)) return false;
    for (const Ring& h : p.holes) {
        if (ring_contains(h, pt)) return false;
    }
    return true;
}

bool covers_point(const MultiPolygon& mp, const Vec2& pt) {
    for (const Polygon& p : mp) {
        if (covers_point(p, pt)) return true;
    }
    return false;
}

Vec2 interior_point(const MultiPolygon& mp) {
    if (mp.empty()) throw InternalError("interior_point on empty multipolygon");
    BoostMulti bm = to_boost(mp);
    BoostPoint p(0.0, 0.0);
    bg::point_on_surface(bm[0], p);
    return {bg::get<0>(p), bg::get<1>(p)};
}

}  // namespace solshade
