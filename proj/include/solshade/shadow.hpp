// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solshade/ephemeris.hpp"
#include "solshade/geometry.hpp"
#include "solshade/scene.hpp"

namespace solshade {

struct ShadowConfig {
    // Below this altitude shadow reach is clamped to the scene canvas and the
    // result flagged truncated (energy stays conservative instead of the
    // polygons blowing up at grazing sun).
    double min_altitude_deg = 5.0;
};

// Shadow cast onto a single target surface, in that surface's own frame:
// ground/roof polygons live in world x-y meters, facade polygons in (s, z)
// with s meters along the base edge from vertex_a and z meters above ground.
struct ShadowPolygon {
    std::string surface_ref;  // "ground" | "<id>/roof" | facade id
    MultiPolygon polygon;
    std::string caster_id;
    UtcInstant timestamp = 0;
    bool truncated = false;     // reach clamped at the canvas (grazing sun)
    bool grazing = false;       // light nearly parallel to the facade plane
    bool fully_shaded = false;  // facade turned away from the sun

    double area_m2() const { return area(polygon); }
};

// True when the facade's outward normal has a positive component toward the
// sun's horizontal bearing; facades failing this receive no direct beam.
bool facade_sun_facing(const Facade& f, const SunSample& sun);

// Horizontal displacement of a roof vertex per meter of height:
// cot(altitude) meters opposite the sun's bearing.
Vec2 shadow_displacement_per_meter(const SunSample& sun);

// Shadow of one prism on the ground plane: union of the footprint and one
// quadrilateral per facade (base edge swept to the projected top edge).
// `clip` bounds the result; reach is clamped so coordinates stay finite.
ShadowPolygon ground_shadow(const Building& b, const SunSample& sun,
                            const ShadowConfig& cfg = {},
                            const std::optional<Aabb>& clip = std::nullopt);

// Shadow of `caster` on `target`'s roof plane, empty unless the caster is
// strictly taller; computed with the height difference and clipped to a
// margin box around the target roof. The result deliberately overhangs the
// roof polygon: restricting it to the roof would lay shadow edges exactly
// along roof edges, the one configuration polygon booleans cut badly, so
// the restriction is left to consumers that need it.
ShadowPolygon roof_shadow(const Building& caster, const Building& target, const SunSample& sun,
                          const ShadowConfig& cfg = {});

// Shadow of the caster prism's wall silhouette on the target facade plane,
// in (s, z) coordinates, clipped to a 1 m margin box around the facade
// rectangle. Overhangs the rectangle by design (see roof_shadow). Wall
// pieces behind the target plane are discarded; light parallel to the plane
// yields an empty, grazing result. `skip_facade_id` suppresses the target's
// own wall when the caster is the target's building.
ShadowPolygon facade_shadow(const Building& caster, const Facade& target, const SunSample& sun,
                            const ShadowConfig& cfg = {},
                            const std::string& skip_facade_id = {});

// Per-instant shade state of one surface: nothing, a partial polygon in the
// surface frame, or the whole surface. The partial polygon may overhang the
// surface boundary; the kind classification is made on its restriction to
// the surface, and point membership inside the surface is unaffected.
struct InstantShade {
    enum class Kind { kNone, kPartial, kFull };
    Kind kind = Kind::kNone;
    MultiPolygon shadow;  // kPartial only
    bool truncated = false;
    bool grazing = false;
};

// Union of candidate-caster shadows on one roof / one facade. Candidates are
// pruned with the scene index by maximum shadow reach and merged in caster-id
// order so results are schedule-independent.
InstantShade roof_instant_shade(const Scene& scene, std::size_t roof_index, const SunSample& sun,
                                const ShadowConfig& cfg = {});
InstantShade facade_instant_shade(const Scene& scene, std::size_t facade_index,
                                  const SunSample& sun, const ShadowConfig& cfg = {});

struct SceneShadows {
    SunSample sun;
    MultiPolygon ground;                // union over casters, clipped to canvas
    bool ground_truncated = false;
    std::vector<ShadowPolygon> roofs;   // parallel to scene.roofs, clipped to each roof
    std::vector<ShadowPolygon> facades; // parallel to scene.facades, clipped to each rectangle
    std::vector<std::string> diagnostics;  // per-surface failures, never fatal
};

// Every surface's merged shadow at one instant (ground included when
// `include_ground`). Per-surface failures degrade to a fully-shaded entry
// plus a diagnostic; the scene as a whole never aborts.
SceneShadows scene_shadows(const Scene& scene, const SunSample& sun, const ShadowConfig& cfg = {},
                           bool include_ground = true);

}  // namespace solshade
