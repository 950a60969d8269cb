// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "solshade/geometry.hpp"
#include "solshade/pvmodel.hpp"

namespace solshade {

struct BuildingPotential {
    std::string building_id;
    double roof_kwh = 0.0;
    double facade_kwh = 0.0;
    double roof_area_m2 = 0.0;
    double facade_area_m2 = 0.0;
    double roof_kwh_per_m2 = 0.0;
    double facade_kwh_per_m2 = 0.0;
};

// Area-weighted shade fraction of each class at one timeline instant.
struct ShadePoint {
    UtcInstant timestamp = 0;
    double roof_fraction = 0.0;
    double facade_fraction = 0.0;
};

struct RegionReport {
    Aabb bounds{};
    std::size_t building_count = 0;
    double roof_kwh = 0.0;
    double facade_kwh = 0.0;
    double roof_area_m2 = 0.0;
    double facade_area_m2 = 0.0;
    double facade_to_roof_ratio = 0.0;  // facade_kwh / roof_kwh when roof > 0
    bool empty_region = false;
    std::vector<ShadePoint> shade_series;
    // Mean electrical W/m^2 by local hour of day (0-23), averaged over the
    // instants that fall in each hour; hours without samples stay 0.
    std::array<double, 24> roof_profile_w_m2{};
    std::array<double, 24> facade_profile_w_m2{};
};

// Left-Riemann energy of ordered samples over one patch: each sample holds
// for `interval_minutes`, scaled by the patch area.
double integrate_energy_kwh(const std::vector<PowerSample>& samples, int interval_minutes,
                            double area_m2);

// Class-wise sums for one building from (class, area, kwh) patch results.
struct PatchEnergy {
    SurfaceClass surface_class = SurfaceClass::kRoof;
    double area_m2 = 0.0;
    double kwh = 0.0;
};
BuildingPotential building_rollup(const std::string& building_id,
                                  const std::vector<PatchEnergy>& patches, double roof_area_m2,
                                  double facade_area_m2);

// Totals, ratio, and per-class series over member buildings; the shade series
// and hourly profiles are passed through from the simulation loop.
RegionReport region_rollup(const std::vector<BuildingPotential>& buildings, const Aabb& bounds,
                           std::vector<ShadePoint> shade_series = {},
                           const std::array<double, 24>& roof_profile = {},
                           const std::array<double, 24>& facade_profile = {});

}  // namespace solshade
