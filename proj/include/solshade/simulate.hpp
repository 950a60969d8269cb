// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solshade/aggregate.hpp"
#include "solshade/io.hpp"
#include "solshade/pvmodel.hpp"
#include "solshade/scene.hpp"
#include "solshade/time_utils.hpp"

namespace solshade {

inline constexpr const char* kVersion = "solshade 1.0.0";

struct RunConfig {
    std::string buildings_path;
    std::string weather_path;
    std::string out_dir = ".";
    std::string format = "geojson";  // patch export: geojson | csv
    std::optional<GeoLocation> origin;  // default: footprint bounding-box center
    CivilDate start_date{};
    CivilDate end_date{};
    int interval_minutes = 60;
    int padding_minutes = 30;
    double min_altitude_deg = 5.0;
    double albedo = 0.2;
    PVConfig pv;
    int threads = 0;  // 0 = hardware concurrency; never affects output bytes

    void validate() const;  // throws ValidationError
};

struct SimulationResult {
    Scene scene;
    IngestReport ingest;
    std::vector<PatchFeature> patches;  // day -> surface -> mask order
    std::vector<BuildingPotential> buildings;
    RegionReport region;
    std::size_t truncated_instants = 0;  // sun under the shadow floor
    std::vector<std::string> skipped_days;  // polar nights etc., with reasons
    std::vector<std::string> diagnostics;   // degraded surfaces
};

// Full pipeline: ingest, project, per-day shadow overlay, irradiance, PV
// power, rollups. Parallel over surfaces; output independent of `threads`.
SimulationResult run_simulation(const RunConfig& cfg);

// Writes patches.(geojson|csv), buildings.csv, region.json, manifest.json
// into cfg.out_dir. The manifest echoes the config (threads excluded), pins
// input digests, and never contains wall-clock values.
void write_outputs(const RunConfig& cfg, const SimulationResult& result);

}  // namespace solshade
