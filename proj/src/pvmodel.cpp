// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/pvmodel.hpp"

#include <algorithm>
#include <cmath>

#include "solshade/errors.hpp"

namespace solshade {

void PVConfig::validate() const {
    if (!(eta_stc > 0.0) || !(eta_stc < 1.0))
        throw ValidationError("eta_stc must be in (0, 1)");
    if (!(gamma < 0.0)) throw ValidationError("gamma must be negative");
    if (!(facade_derate > 0.0) || facade_derate > 1.0)
        throw ValidationError("facade_derate must be in (0, 1]");
    if (!(thermal_u0 > 0.0)) throw ValidationError("thermal_u0 must be positive");
    if (thermal_u1 < 0.0) throw ValidationError("thermal_u1 must be >= 0");
    if (!std::isnan(rooftop_tilt_deg) &&
        (rooftop_tilt_deg < 0.0 || rooftop_tilt_deg > 90.0))
        throw ValidationError("rooftop tilt must be in [0, 90] degrees");
}

double cell_temperature(double poa_total_w_m2, double temp_air_c, double wind_m_s,
                        const PVConfig& cfg) {
    return temp_air_c + poa_total_w_m2 / (cfg.thermal_u0 + cfg.thermal_u1 * wind_m_s);
}

double unit_power(double poa_total_w_m2, double t_cell_c, SurfaceClass cls, const PVConfig& cfg) {
    double p = poa_total_w_m2 * cfg.eta_stc * (1.0 + cfg.gamma * (t_cell_c - cfg.t_ref));
    if (cls == SurfaceClass::kFacade) p *= cfg.facade_derate;
    return std::max(p, 0.0);
}

SurfaceOrientation rooftop_orientation(const GeoLocation& loc, const PVConfig& cfg,
                                       double albedo) {
    SurfaceOrientation o;
    o.tilt_deg = std::isnan(cfg.rooftop_tilt_deg)
                     ? std::min(std::abs(loc.latitude_deg), cfg.max_rooftop_tilt_deg)
                     : cfg.rooftop_tilt_deg;
    o.azimuth_deg = loc.latitude_deg >= 0.0 ? 180.0 : 0.0;  // equator-facing
    o.albedo = albedo;
    return o;
}

SurfaceOrientation facade_orientation(const Facade& f, double albedo) {
    SurfaceOrientation o;
    o.tilt_deg = 90.0;
    const double az = std::atan2(f.outward_normal.x, f.outward_normal.y) * 180.0 / M_PI;
    o.azimuth_deg = az < 0.0 ? az + 360.0 : az;
    o.albedo = albedo;
    return o;
}

}  // namespace solshade
