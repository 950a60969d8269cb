// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "solshade/ephemeris.hpp"

namespace solshade {

struct WeatherRecord {
    UtcInstant timestamp = 0;
    double dni = 0.0;         // W/m^2
    double dhi = 0.0;         // W/m^2
    double ghi = 0.0;         // W/m^2
    double temp_air = 0.0;    // deg C
    double wind_speed = 0.0;  // m/s
};

// Ordered, uniformly spaced weather records. Lookup snaps to the nearest
// record within half the spacing; anything farther is a gap.
class WeatherSeries {
public:
    WeatherSeries() = default;
    explicit WeatherSeries(std::vector<WeatherRecord> records);  // validates

    const WeatherRecord& at(UtcInstant t) const;  // throws WeatherGapError
    // Gap spans among `instants`, for batch validation before a run.
    std::vector<std::pair<UtcInstant, UtcInstant>> missing_spans(
        const std::vector<UtcInstant>& instants) const;

    const std::vector<WeatherRecord>& records() const { return records_; }
    std::int64_t spacing_seconds() const { return spacing_s_; }
    bool empty() const { return records_.empty(); }

private:
    std::vector<WeatherRecord> records_;
    std::int64_t spacing_s_ = 0;
};

struct SurfaceOrientation {
    double tilt_deg = 0.0;     // 0 horizontal .. 90 vertical
    double azimuth_deg = 0.0;  // clockwise from north, [0, 360)
    double albedo = 0.2;       // ground reflectance fraction
};

struct PoaBreakdown {
    double g_dir = 0.0;
    double g_dif = 0.0;
    double g_ref = 0.0;
    double total = 0.0;
};

// Angle between the incoming beam and the panel normal, degrees in [0, 180].
double angle_of_incidence(const SunSample& sun, const SurfaceOrientation& orient);

// Isotropic-sky plane-of-array irradiance. Shading removes only the direct
// beam; diffuse and ground-reflected terms survive.
PoaBreakdown poa(const WeatherRecord& rec, const SurfaceOrientation& orient, const SunSample& sun,
                 bool shaded);

// Area-weighted mean irradiance over (area_m2, irradiance) pairs.
double surface_mean_irradiance(const std::vector<std::pair<double, double>>& patches);

}  // namespace solshade
