// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solshade/ephemeris.hpp"
#include "solshade/geometry.hpp"
#include "solshade/scene.hpp"
#include "solshade/shadow.hpp"

namespace solshade {

// Per-instant shade history as a packed bitset, LSB-first within each word.
class ShadeMask {
public:
    ShadeMask() = default;
    explicit ShadeMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    void set(std::size_t k) { words_[k / 64] |= std::uint64_t{1} << (k % 64); }
    bool test(std::size_t k) const {
        return (words_[k / 64] >> (k % 64)) & std::uint64_t{1};
    }
    std::size_t size() const { return bits_; }
    int popcount() const;
    std::string to_string() const;  // bit k at position k, '1' = shaded

    const std::vector<std::uint64_t>& words() const { return words_; }
    bool operator==(const ShadeMask& o) const = default;
    bool operator<(const ShadeMask& o) const {
        return words_ < o.words_;  // bits_ equal within one surface
    }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

// One cell of the shadow-overlay arrangement on a surface: every point of
// `polygon` shares the same shade history.
struct SurfacePatch {
    std::string surface_ref;
    MultiPolygon polygon;   // surface frame (roof: world x-y; facade: (s, z))
    double area_m2 = 0.0;
    ShadeMask shade_mask;
    int overlap_count = 0;  // set bits in shade_mask
    bool unpartitioned = false;  // degraded surface: single all-shaded patch
};

struct SurfacePatches {
    std::string surface_ref;
    std::vector<SurfacePatch> patches;
    std::string diagnostic;  // non-empty when degraded
};

struct ExposureResult {
    int t_p_minutes = 0;  // shaded
    int t_s_minutes = 0;  // sunlit
};

// Overlay one surface's per-instant shadows into mask-keyed patches.
// `surface_polygon` is the whole surface in its own frame; `instants` holds
// one InstantShade per timeline index.
std::vector<SurfacePatch> overlay_partition(const std::string& surface_ref,
                                            const Polygon& surface_polygon,
                                            const std::vector<InstantShade>& instants);

// Shadows for every surface across a timeline, overlaid per surface.
// Order: all roofs (scene order), then all facades. Per-surface failures
// degrade to one whole-surface all-shaded patch with a diagnostic.
std::vector<SurfacePatches> accumulate_shadows(const Scene& scene,
                                               const std::vector<UtcInstant>& instants,
                                               const GeoLocation& loc,
                                               const ShadowConfig& cfg = {});

// t_p = overlaps x interval; t_s is the remainder of the window. Exact
// integer arithmetic.
ExposureResult exposure(const SurfacePatch& patch, int interval_minutes, int window_minutes);

// Area-weighted shaded fraction of a patch collection at one instant.
double shade_fraction(const std::vector<SurfacePatch>& patches, std::size_t instant_index);

}  // namespace solshade
