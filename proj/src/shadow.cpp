// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/shadow.hpp"

#include <algorithm>
#include <cmath>

#include "solshade/errors.hpp"

namespace solshade {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kMaxReachM = 1e6;          // keeps grazing-sun coordinates finite
constexpr double kGrazingDenom = 1e-12;     // light parallel to a facade plane
constexpr double kDegenerateArea = 1e-12;   // m^2, drop before the kernel sees it

void require_daylight(const SunSample& sun) {
    if (!(sun.altitude_deg > 0.0))
        throw SunBelowHorizonError("sun altitude " + std::to_string(sun.altitude_deg) +
                                   " deg is not above the horizon");
}

// Quadrilateral swept by one base edge displaced by D, winding-normalized.
// Returns false for degenerate (D parallel to the edge) quads.
bool sweep_quad(const Vec2& va, const Vec2& vb, const Vec2& d, Polygon& out) {
    Ring r{va, vb, vb + d, va + d};
    if (ring_area(r) < kDegenerateArea) return false;
    out = normalized(Polygon{std::move(r), {}});
    return true;
}

// Union of the footprint and every edge's sweep quad: the full ground-plane
// occupancy of a prism's shadow for a uniform top displacement D.
MultiPolygon prism_sweep(const Polygon& footprint, const Vec2& d) {
    std::vector<Polygon> parts;
    parts.push_back(normalized(footprint));
    auto add_ring = [&](const Ring& ring) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            Polygon quad;
            if (sweep_quad(ring[i], ring[(i + 1) % n], d, quad)) parts.push_back(std::move(quad));
        }
    };
    add_ring(footprint.outer);
    for (const Ring& hole : footprint.holes) add_ring(hole);
    return union_all(parts);
}

struct Displacement {
    Vec2 per_meter;     // horizontal offset per meter of height
    bool clamped = false;
};

Displacement displacement(const SunSample& sun, double height_m, double max_reach_m) {
    Displacement d;
    d.per_meter = shadow_displacement_per_meter(sun);
    const double reach = d.per_meter.norm() * height_m;
    if (reach > max_reach_m && reach > 0.0) {
        d.per_meter = d.per_meter * (max_reach_m / reach);
        d.clamped = true;
    }
    return d;
}

// Clip a convex polygon (3-D points + per-vertex scalar field value) to
// field >= 0 by Sutherland-Hodgman; the field must be affine over the points.
struct FieldPoint {
    Vec3 p;
    double f;
};

std::vector<FieldPoint> clip_nonnegative(const std::vector<FieldPoint>& poly) {
    std::vector<FieldPoint> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const FieldPoint& a = poly[i];
        const FieldPoint& b = poly[(i + 1) % n];
        if (a.f >= 0.0) out.push_back(a);
        if ((a.f >= 0.0) != (b.f >= 0.0)) {
            const double u = a.f / (a.f - b.f);
            out.push_back({Vec3{a.p.x + u * (b.p.x - a.p.x), a.p.y + u * (b.p.y - a.p.y),
                                a.p.z + u * (b.p.z - a.p.z)},
                           0.0});
        }
    }
    return out;
}

// Sutherland-Hodgman against an axis-aligned box in (s, z); keeps the
// snap-rounding kernel away from the huge coordinates a near-grazing
// projection can produce.
Ring clip_to_box(const Ring& poly, double s0, double s1, double z0, double z1) {
    auto clip_axis = [](const Ring& in, bool x_axis, double bound, bool keep_below) {
        Ring out;
        const std::size_t n = in.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = in[i];
            const Vec2& b = in[(i + 1) % n];
            const double fa = (x_axis ? a.x : a.y) - bound;
            const double fb = (x_axis ? b.x : b.y) - bound;
            const bool ina = keep_below ? fa <= 0.0 : fa >= 0.0;
            const bool inb = keep_below ? fb <= 0.0 : fb >= 0.0;
            if (ina) out.push_back(a);
            if (ina != inb) {
                const double u = fa / (fa - fb);
                out.push_back(Vec2{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
            }
        }
        return out;
    };
    Ring r = clip_axis(poly, true, s0, false);
    r = clip_axis(r, true, s1, true);
    r = clip_axis(r, false, z0, false);
    r = clip_axis(r, false, z1, true);
    return r;
}

Polygon facade_rect(const Facade& f) {
    return Polygon{Ring{Vec2{0.0, 0.0}, Vec2{f.length_m, 0.0}, Vec2{f.length_m, f.height_m},
                        Vec2{0.0, f.height_m}},
                   {}};
}


// Project one wall quad of `caster` onto the target facade plane and clip it
// to a margin box around the target rectangle. Returns an empty ring when the
// quad lies behind the plane or degenerates.
Ring project_wall_quad(const Vec2& wa, const Vec2& wb, double caster_height, const Facade& target,
                       const Vec3& light, double denom) {
    const double fa = target.plane_a * wa.x + target.plane_b * wa.y + target.plane_d;
    const double fb = target.plane_a * wb.x + target.plane_b * wb.y + target.plane_d;
    if (fa < 0.0 && fb < 0.0) return {};  // fully behind the target plane

    std::vector<FieldPoint> quad{{Vec3{wa.x, wa.y, 0.0}, fa},
                                 {Vec3{wb.x, wb.y, 0.0}, fb},
                                 {Vec3{wb.x, wb.y, caster_height}, fb},
                                 {Vec3{wa.x, wa.y, caster_height}, fa}};
    if (fa < 0.0 || fb < 0.0) quad = clip_nonnegative(quad);
    if (quad.size() < 3) return {};

    const Vec2 e = target.edge_dir();
    Ring sz;
    sz.reserve(quad.size());
    for (const FieldPoint& v : quad) {
        const double t = -v.f / denom;  // >= 0: wall is sunward of the plane
        const double px = v.p.x + t * light.x;
        const double py = v.p.y + t * light.y;
        const double pz = v.p.z + t * light.z;
        if (!std::isfinite(px) || !std::isfinite(py) || !std::isfinite(pz)) return {};
        sz.push_back(Vec2{(px - target.vertex_a.x) * e.x + (py - target.vertex_a.y) * e.y, pz});
    }
    // Margin box: tame coordinates; the exact rectangle cut happens in the
    // snapping kernel afterwards.
    sz = clip_to_box(sz, -1.0, target.length_m + 1.0, -1.0, target.height_m + 1.0);
    if (sz.size() < 3 || ring_area(sz) < kDegenerateArea) return {};
    return sz;
}

std::vector<std::size_t> sorted_candidates(const Scene& scene, const Aabb& query) {
    std::vector<std::size_t> c = scene.index.candidates(query);
    std::sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
        return scene.buildings[a].id < scene.buildings[b].id;
    });
    return c;
}

double prune_reach(double height_span_m, const SunSample& sun) {
    const double cot = shadow_displacement_per_meter(sun).norm();
    return std::min(height_span_m * cot, kMaxReachM) + 1.0;
}

}  // namespace

bool facade_sun_facing(const Facade& f, const SunSample& sun) {
    const double az = sun.azimuth_deg * kDegToRad;
    return f.outward_normal.x * std::sin(az) + f.outward_normal.y * std::cos(az) > 0.0;
}

Vec2 shadow_displacement_per_meter(const SunSample& sun) {
    const double az = sun.azimuth_deg * kDegToRad;
    const double cot = 1.0 / std::tan(sun.altitude_deg * kDegToRad);
    return Vec2{-std::sin(az) * cot, -std::cos(az) * cot};
}

ShadowPolygon ground_shadow(const Building& b, const SunSample& sun, const ShadowConfig& cfg,
                            const std::optional<Aabb>& clip) {
    require_daylight(sun);
    ShadowPolygon out;
    out.surface_ref = "ground";
    out.caster_id = b.id;
    out.timestamp = sun.timestamp;

    double max_reach = kMaxReachM;
    if (clip)
        max_reach = std::min(max_reach, 2.0 * std::hypot(clip->width(), clip->height()) + 1.0);
    const Displacement d = displacement(sun, b.height_m, max_reach);

    out.polygon = prism_sweep(b.footprint, d.per_meter * b.height_m);
    if (clip) out.polygon = poly_intersection(out.polygon, MultiPolygon{clip->to_polygon()});
    out.truncated = d.clamped || sun.altitude_deg < cfg.min_altitude_deg;
    return out;
}

ShadowPolygon roof_shadow(const Building& caster, const Building& target, const SunSample& sun,
                          const ShadowConfig& cfg) {
    require_daylight(sun);
    ShadowPolygon out;
    out.surface_ref = target.id + "/roof";
    out.caster_id = caster.id;
    out.timestamp = sun.timestamp;

    const double h_eff = caster.height_m - target.height_m;
    if (h_eff <= 0.0) return out;

    // Clip to a margin box, not the roof itself: a roof-clipped shadow would
    // share boundary segments with the roof, which polygon booleans cut badly.
    const Displacement d = displacement(sun, h_eff, kMaxReachM);
    const Aabb box = bounding_box(target.footprint).expanded(1.0);
    out.polygon = poly_intersection(prism_sweep(caster.footprint, d.per_meter * h_eff),
                                    MultiPolygon{box.to_polygon()});
    out.truncated = d.clamped || sun.altitude_deg < cfg.min_altitude_deg;
    return out;
}

ShadowPolygon facade_shadow(const Building& caster, const Facade& target, const SunSample& sun,
                            const ShadowConfig& cfg, const std::string& skip_facade_id) {
    (void)cfg;
    require_daylight(sun);
    ShadowPolygon out;
    out.surface_ref = target.id;
    out.caster_id = caster.id;
    out.timestamp = sun.timestamp;

    if (!facade_sun_facing(target, sun)) {
        out.fully_shaded = true;  // turned away: no direct beam by orientation
        return out;
    }

    const Vec3& l = sun.light_vector;
    const double denom = target.plane_a * l.x + target.plane_b * l.y;
    if (std::abs(denom) < kGrazingDenom) {
        out.grazing = true;
        return out;
    }

    std::vector<Polygon> parts;
    std::size_t k = 0;
    auto add_ring = [&](const Ring& ring) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i, ++k) {
            if (!skip_facade_id.empty() &&
                caster.id + "/f" + std::to_string(k) == skip_facade_id)
                continue;
            Ring sz = project_wall_quad(ring[i], ring[(i + 1) % n], caster.height_m, target, l,
                                        denom);
            if (!sz.empty()) parts.push_back(normalized(Polygon{std::move(sz), {}}));
        }
    };
    add_ring(caster.footprint.outer);
    for (const Ring& hole : caster.footprint.holes) add_ring(hole);

    // Stays margin-box clipped; restriction to the rectangle is the caller's
    // concern (see the header note on boundary-hugging shadows).
    if (!parts.empty()) out.polygon = union_all(parts);
    return out;
}

InstantShade roof_instant_shade(const Scene& scene, std::size_t roof_index, const SunSample& sun,
                                const ShadowConfig& cfg) {
    require_daylight(sun);
    const RoofSurface& roof = scene.roofs[roof_index];
    const Building& target = scene.buildings[roof.building_index];
    InstantShade shade;

    const double span = scene.max_height_m - target.height_m;
    if (span <= 0.0) return shade;

    const Aabb query = bounding_box(target.footprint).expanded(prune_reach(span, sun));
    std::vector<Polygon> parts;
    for (std::size_t c : sorted_candidates(scene, query)) {
        if (c == roof.building_index) continue;
        const Building& caster = scene.buildings[c];
        if (caster.height_m <= target.height_m) continue;
        ShadowPolygon sp = roof_shadow(caster, target, sun, cfg);
        shade.truncated = shade.truncated || sp.truncated;
        for (Polygon& p : sp.polygon) parts.push_back(std::move(p));
    }
    if (parts.empty()) return shade;

    shade.shadow = union_all(parts);
    if (shade.shadow.empty()) return shade;
    // Classify on the restriction to the roof; the stored polygon overhangs.
    const double on_roof =
        area(poly_intersection(shade.shadow, MultiPolygon{normalized(target.footprint)}));
    if (on_roof <= 0.0) {
        shade.shadow.clear();
        return shade;
    }
    shade.kind = on_roof >= roof.area_m2 * (1.0 - 1e-9) ? InstantShade::Kind::kFull
                                                        : InstantShade::Kind::kPartial;
    if (shade.kind == InstantShade::Kind::kFull) shade.shadow.clear();
    return shade;
}

InstantShade facade_instant_shade(const Scene& scene, std::size_t facade_index,
                                  const SunSample& sun, const ShadowConfig& cfg) {
    require_daylight(sun);
    const Facade& target = scene.facades[facade_index];
    InstantShade shade;

    if (!facade_sun_facing(target, sun)) {
        shade.kind = InstantShade::Kind::kFull;
        return shade;
    }

    const Aabb seg{std::min(target.vertex_a.x, target.vertex_b.x),
                   std::min(target.vertex_a.y, target.vertex_b.y),
                   std::max(target.vertex_a.x, target.vertex_b.x),
                   std::max(target.vertex_a.y, target.vertex_b.y)};
    const Aabb query = seg.expanded(prune_reach(scene.max_height_m, sun));

    std::vector<Polygon> parts;
    for (std::size_t c : sorted_candidates(scene, query)) {
        const Building& caster = scene.buildings[c];
        const std::string skip = c == target.building_index ? target.id : std::string{};
        ShadowPolygon sp = facade_shadow(caster, target, sun, cfg, skip);
        shade.grazing = shade.grazing || sp.grazing;
        for (Polygon& p : sp.polygon) parts.push_back(std::move(p));
    }
    if (parts.empty()) return shade;

    shade.shadow = union_all(parts);
    if (shade.shadow.empty()) return shade;
    // Classify on the restriction to the rectangle; the stored polygon
    // overhangs (margin box around the facade).
    const double on_rect =
        area(poly_intersection(shade.shadow, MultiPolygon{facade_rect(target)}));
    if (on_rect <= 0.0) {
        shade.shadow.clear();
        return shade;
    }
    const double rect_area = target.length_m * target.height_m;
    shade.kind = on_rect >= rect_area * (1.0 - 1e-9) ? InstantShade::Kind::kFull
                                                     : InstantShade::Kind::kPartial;
    if (shade.kind == InstantShade::Kind::kFull) shade.shadow.clear();
    return shade;
}

SceneShadows scene_shadows(const Scene& scene, const SunSample& sun, const ShadowConfig& cfg,
                           bool include_ground) {
    require_daylight(sun);
    SceneShadows out;
    out.sun = sun;

    if (include_ground) {
        const double alt_eff = std::max(sun.altitude_deg, cfg.min_altitude_deg);
        const double reach =
            scene.max_height_m / std::tan(alt_eff * kDegToRad) + 1.0;
        const Aabb canvas = scene.bounds.expanded(reach);
        std::vector<Polygon> parts;
        for (const Building& b : scene.buildings) {
            ShadowPolygon sp = ground_shadow(b, sun, cfg, canvas);
            out.ground_truncated = out.ground_truncated || sp.truncated;
            for (Polygon& p : sp.polygon) parts.push_back(std::move(p));
        }
        out.ground = union_all(parts);
    }

    out.roofs.reserve(scene.roofs.size());
    for (std::size_t i = 0; i < scene.roofs.size(); ++i) {
        ShadowPolygon sp;
        sp.surface_ref = scene.roofs[i].id;
        sp.caster_id = "scene";
        sp.timestamp = sun.timestamp;
        try {
            InstantShade shade = roof_instant_shade(scene, i, sun, cfg);
            sp.truncated = shade.truncated;
            if (shade.kind == InstantShade::Kind::kFull)
                sp.polygon = MultiPolygon{normalized(scene.roofs[i].polygon)};
            else
                sp.polygon = poly_intersection(
                    shade.shadow, MultiPolygon{normalized(scene.roofs[i].polygon)});
        } catch (const std::exception& e) {
            sp.fully_shaded = true;  // conservative degradation
            out.diagnostics.push_back(scene.roofs[i].id + ": " + e.what());
        }
        out.roofs.push_back(std::move(sp));
    }

    out.facades.reserve(scene.facades.size());
    for (std::size_t j = 0; j < scene.facades.size(); ++j) {
        const Facade& f = scene.facades[j];
        ShadowPolygon sp;
        sp.surface_ref = f.id;
        sp.caster_id = "scene";
        sp.timestamp = sun.timestamp;
        try {
            InstantShade shade = facade_instant_shade(scene, j, sun, cfg);
            sp.grazing = shade.grazing;
            if (shade.kind == InstantShade::Kind::kFull) {
                sp.fully_shaded = true;
                sp.polygon = MultiPolygon{facade_rect(f)};
            } else {
                sp.polygon = poly_intersection(shade.shadow, MultiPolygon{facade_rect(f)});
            }
        } catch (const std::exception& e) {
            sp.fully_shaded = true;
            sp.polygon = MultiPolygon{facade_rect(f)};
            out.diagnostics.push_back(f.id + ": " + e.what());
        }
        out.facades.push_back(std::move(sp));
    }
    return out;
}

}  // namespace solshade
