// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/aggregate.hpp"

#include "solshade/errors.hpp"

namespace solshade {

double integrate_energy_kwh(const std::vector<PowerSample>& samples, int interval_minutes,
                            double area_m2) {
    if (interval_minutes <= 0) throw ValidationError("interval_minutes must be positive");
    double w_m2_hours = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && samples[i].timestamp < samples[i - 1].timestamp)
            throw ValidationError("power samples out of order");
        w_m2_hours += samples[i].p_unit * (interval_minutes / 60.0);
    }
    return w_m2_hours * area_m2 / 1000.0;
}

BuildingPotential building_rollup(const std::string& building_id,
                                  const std::vector<PatchEnergy>& patches, double roof_area_m2,
                                  double facade_area_m2) {
    BuildingPotential b;
    b.building_id = building_id;
    b.roof_area_m2 = roof_area_m2;
    b.facade_area_m2 = facade_area_m2;
    for (const PatchEnergy& p : patches) {
        if (p.surface_class == SurfaceClass::kRoof)
            b.roof_kwh += p.kwh;
        else
            b.facade_kwh += p.kwh;
    }
    b.roof_kwh_per_m2 = roof_area_m2 > 0.0 ? b.roof_kwh / roof_area_m2 : 0.0;
    b.facade_kwh_per_m2 = facade_area_m2 > 0.0 ? b.facade_kwh / facade_area_m2 : 0.0;
    return b;
}

RegionReport region_rollup(const std::vector<BuildingPotential>& buildings, const Aabb& bounds,
                           std::vector<ShadePoint> shade_series,
                           const std::array<double, 24>& roof_profile,
                           const std::array<double, 24>& facade_profile) {
    RegionReport r;
    r.bounds = bounds;
    r.building_count = buildings.size();
    r.empty_region = buildings.empty();
    for (const BuildingPotential& b : buildings) {
        r.roof_kwh += b.roof_kwh;
        r.facade_kwh += b.facade_kwh;
        r.roof_area_m2 += b.roof_area_m2;
        r.facade_area_m2 += b.facade_area_m2;
    }
    r.facade_to_roof_ratio = r.roof_kwh > 0.0 ? r.facade_kwh / r.roof_kwh : 0.0;
    r.shade_series = std::move(shade_series);
    r.roof_profile_w_m2 = roof_profile;
    r.facade_profile_w_m2 = facade_profile;
    return r;
}

}  // namespace solshade
