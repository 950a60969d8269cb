// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <string>
#include <vector>

#include "solshade/aggregate.hpp"
#include "solshade/insolation.hpp"
#include "solshade/irradiance.hpp"
#include "solshade/scene.hpp"
#include "solshade/shadow.hpp"
#include "solshade/time_utils.hpp"

namespace solshade {

struct RejectedFeature {
    std::string id;
    std::string reason;
};

struct IngestReport {
    std::size_t input_count = 0;
    std::size_t accepted_count = 0;
    std::vector<RejectedFeature> rejected;
    std::size_t height_from_levels = 0;  // features using the levels x 3 m rule
    std::vector<std::string> levels_feature_ids;
};

// GeoJSON FeatureCollection of building footprints (lon/lat). Features
// without a usable height, with self-intersecting rings, or smaller than
// 0.1 m^2 are rejected into the report; exact duplicate geometries are
// dropped after the first.
std::vector<GeoFeature> load_buildings(const std::string& path, IngestReport& report);

// CSV weather series: header + rows of timestamp (ISO-8601), dni, dhi, ghi,
// temp_air, wind_speed. NSRDB-style column names are accepted.
WeatherSeries load_weather(const std::string& path);

// One patch enriched with simulation results, ready for export.
struct PatchFeature {
    std::string building_id;
    std::string surface_ref;
    SurfaceClass surface_class = SurfaceClass::kRoof;
    CivilDate date{};
    MultiPolygon polygon;  // surface frame
    double area_m2 = 0.0;
    int sunlit_minutes = 0;
    double poa_kwh_m2 = 0.0;
    double pv_kwh_m2 = 0.0;
    // Facade georeferencing: patches are unfolded outward onto the ground
    // from the base edge, with the height band kept as properties.
    std::size_t facade_index = 0;  // into scene.facades when facade class
    double z_min_m = 0.0;
    double z_max_m = 0.0;
};

// GeoJSON FeatureCollection (lon/lat, 6-decimal coordinates, sorted keys;
// byte-stable across runs).
void export_patches_geojson(const std::vector<PatchFeature>& patches, const Scene& scene,
                            const std::string& path);
// Flat CSV with the same per-patch properties, centroid georeferenced.
void export_patches_csv(const std::vector<PatchFeature>& patches, const Scene& scene,
                        const std::string& path);

void export_buildings_csv(const std::vector<BuildingPotential>& buildings,
                          const std::string& path);

void export_region_report(const RegionReport& region, const std::string& path);

// Per-surface shadow polygons at one instant, georeferenced like patches.
void export_shadows_geojson(const SceneShadows& shadows, const Scene& scene,
                            const std::string& path);

// Buildings as a GeoJSON FeatureCollection (ids + heights), for round-trips.
void export_buildings_geojson(const std::vector<GeoFeature>& features, const std::string& path);

// FNV-1a 64-bit digest of a file's bytes, hex-encoded; run-manifest input pin.
std::string file_digest(const std::string& path);

// Fixed-precision numeric formatting shared by every exporter.
std::string format_fixed(double v, int decimals);

}  // namespace solshade
