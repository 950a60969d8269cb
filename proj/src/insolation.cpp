// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/insolation.hpp"

#include <bit>
#include <map>
#include <utility>

#include "solshade/errors.hpp"

namespace solshade {

int ShadeMask::popcount() const {
    int n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

std::string ShadeMask::to_string() const {
    std::string s(bits_, '0');
    for (std::size_t k = 0; k < bits_; ++k)
        if (test(k)) s[k] = '1';
    return s;
}

namespace {

Polygon facade_rectangle(const Facade& f) {
    return Polygon{Ring{Vec2{0.0, 0.0}, Vec2{f.length_m, 0.0}, Vec2{f.length_m, f.height_m},
                        Vec2{0.0, f.height_m}},
                   {}};
}

void append(MultiPolygon& dst, MultiPolygon&& src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()),
               std::make_move_iterator(src.end()));
}

SurfacePatch degraded_patch(const std::string& surface_ref, const Polygon& surface_polygon,
                            std::size_t n_instants) {
    SurfacePatch p;
    p.surface_ref = surface_ref;
    p.polygon = MultiPolygon{normalized(surface_polygon)};
    p.area_m2 = area(p.polygon);
    p.shade_mask = ShadeMask(n_instants);
    for (std::size_t k = 0; k < n_instants; ++k) p.shade_mask.set(k);  // conservative
    p.overlap_count = static_cast<int>(n_instants);
    p.unpartitioned = true;
    return p;
}

}  // namespace

std::vector<SurfacePatch> overlay_partition(const std::string& surface_ref,
                                            const Polygon& surface_polygon,
                                            const std::vector<InstantShade>& instants) {
    const std::size_t n = instants.size();
    // Patches keyed by mask; equal-mask pieces merge by concatenation (they
    // are interior-disjoint by construction).
    std::map<ShadeMask, MultiPolygon> patches;
    patches.emplace(ShadeMask(n), MultiPolygon{normalized(surface_polygon)});

    for (std::size_t k = 0; k < n; ++k) {
        const InstantShade& shade = instants[k];
        if (shade.kind == InstantShade::Kind::kNone) continue;
        if (shade.kind == InstantShade::Kind::kFull) {
            std::map<ShadeMask, MultiPolygon> next;
            for (auto& [mask, mp] : patches) {
                ShadeMask m = mask;
                m.set(k);
                append(next[m], std::move(mp));
            }
            patches = std::move(next);
            continue;
        }
        const Aabb shadow_box = bounding_box(shade.shadow);
        std::map<ShadeMask, MultiPolygon> next;
        for (auto& [mask, mp] : patches) {
            if (!bounding_box(mp).intersects(shadow_box)) {
                append(next[mask], std::move(mp));
                continue;
            }
            SplitResult split = poly_split(mp, shade.shadow);
            const double a_inter = area(split.inside);
            // Sliver pieces stay whole on one side so areas keep summing to
            // the surface area.
            if (a_inter < kSliverArea) {
                append(next[mask], std::move(mp));
                continue;
            }
            const double a_diff = area(split.outside);
            ShadeMask shaded = mask;
            shaded.set(k);
            if (a_diff < kSliverArea) {
                append(next[shaded], std::move(mp));
                continue;
            }
            // A cut the kernel cannot make conserving would leak area; keep
            // such pieces whole on the dominant side instead.
            if (!split.consistent) {
                append(next[a_inter >= a_diff ? shaded : mask], std::move(mp));
                continue;
            }
            append(next[mask], std::move(split.outside));
            append(next[shaded], std::move(split.inside));
        }
        patches = std::move(next);
    }

    std::vector<SurfacePatch> out;
    out.reserve(patches.size());
    for (auto& [mask, mp] : patches) {
        if (mp.empty()) continue;
        SurfacePatch p;
        p.surface_ref = surface_ref;
        p.polygon = std::move(mp);
        p.area_m2 = area(p.polygon);
        if (p.area_m2 <= 0.0) continue;
        p.shade_mask = mask;
        p.overlap_count = mask.popcount();
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<SurfacePatches> accumulate_shadows(const Scene& scene,
                                               const std::vector<UtcInstant>& instants,
                                               const GeoLocation& loc, const ShadowConfig& cfg) {
    if (instants.empty()) throw ValidationError("empty timeline");
    std::vector<SunSample> suns;
    suns.reserve(instants.size());
    for (UtcInstant t : instants) suns.push_back(sun_position(t, loc));

    std::vector<SurfacePatches> out;
    out.reserve(scene.roofs.size() + scene.facades.size());

    for (std::size_t i = 0; i < scene.roofs.size(); ++i) {
        SurfacePatches sp;
        sp.surface_ref = scene.roofs[i].id;
        try {
            std::vector<InstantShade> shades;
            shades.reserve(suns.size());
            for (const SunSample& sun : suns)
                shades.push_back(roof_instant_shade(scene, i, sun, cfg));
            sp.patches = overlay_partition(sp.surface_ref, scene.roofs[i].polygon, shades);
        } catch (const std::exception& e) {
            sp.diagnostic = e.what();
            sp.patches = {degraded_patch(sp.surface_ref, scene.roofs[i].polygon, suns.size())};
        }
        out.push_back(std::move(sp));
    }
    for (std::size_t j = 0; j < scene.facades.size(); ++j) {
        const Facade& f = scene.facades[j];
        SurfacePatches sp;
        sp.surface_ref = f.id;
        try {
            std::vector<InstantShade> shades;
            shades.reserve(suns.size());
            for (const SunSample& sun : suns)
                shades.push_back(facade_instant_shade(scene, j, sun, cfg));
            sp.patches = overlay_partition(sp.surface_ref, facade_rectangle(f), shades);
        } catch (const std::exception& e) {
            sp.diagnostic = e.what();
            sp.patches = {degraded_patch(sp.surface_ref, facade_rectangle(f), suns.size())};
        }
        out.push_back(std::move(sp));
    }
    return out;
}

ExposureResult exposure(const SurfacePatch& patch, int interval_minutes, int window_minutes) {
    ExposureResult r;
    r.t_p_minutes = patch.overlap_count * interval_minutes;
    r.t_s_minutes = window_minutes - r.t_p_minutes;
    return r;
}

double shade_fraction(const std::vector<SurfacePatch>& patches, std::size_t instant_index) {
    double total = 0.0, shaded = 0.0;
    for (const SurfacePatch& p : patches) {
        total += p.area_m2;
        if (p.shade_mask.test(instant_index)) shaded += p.area_m2;
    }
    return total > 0.0 ? shaded / total : 0.0;
}

}  // namespace solshade
