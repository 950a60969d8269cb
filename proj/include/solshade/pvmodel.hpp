// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <limits>

#include "solshade/ephemeris.hpp"
#include "solshade/irradiance.hpp"
#include "solshade/scene.hpp"

namespace solshade {

enum class SurfaceClass { kRoof, kFacade };

struct PVConfig {
    double eta_stc = 0.20;        // module efficiency at STC
    double gamma = -0.004;        // power temperature coefficient, 1/degC
    double t_ref = 25.0;          // reference cell temperature, degC
    double facade_derate = 0.68;  // facade vs rooftop efficiency penalty
    double thermal_u0 = 25.0;     // W/(m^2 K)
    double thermal_u1 = 6.84;     // W s/(m^3 K)
    // NaN = latitude rule (tilt = |lat| clamped to 60 deg); a number pins a
    // fixed rooftop tilt.
    double rooftop_tilt_deg = std::numeric_limits<double>::quiet_NaN();
    double max_rooftop_tilt_deg = 60.0;

    void validate() const;  // throws ValidationError
};

struct PowerSample {
    UtcInstant timestamp = 0;
    double p_unit = 0.0;  // W/m^2 electrical
    SurfaceClass surface_class = SurfaceClass::kRoof;
};

// Steady-state linear thermal model: cell = air + poa / (u0 + u1 * wind).
double cell_temperature(double poa_total_w_m2, double temp_air_c, double wind_m_s,
                        const PVConfig& cfg);

// Electrical output per module area with linear temperature derate and the
// facade penalty; clamped at zero.
double unit_power(double poa_total_w_m2, double t_cell_c, SurfaceClass cls, const PVConfig& cfg);

// Equator-facing array at latitude tilt (clamped), or the fixed override.
SurfaceOrientation rooftop_orientation(const GeoLocation& loc, const PVConfig& cfg,
                                       double albedo = 0.2);

// Vertical array along the facade's outward normal bearing.
SurfaceOrientation facade_orientation(const Facade& f, double albedo = 0.2);

}  // namespace solshade
