// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <vector>

#include "solshade/geometry.hpp"
#include "solshade/time_utils.hpp"

namespace solshade {

struct GeoLocation {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180]
};

struct SunSample {
    UtcInstant timestamp = 0;
    double altitude_deg = 0.0;  // [-90, 90], geometric (no refraction)
    double azimuth_deg = 0.0;   // [0, 360), clockwise from north
    Vec3 light_vector;          // unit, from the sun toward the scene
};

struct DayWindow {
    UtcInstant start = 0;  // sunrise + padding
    UtcInstant end = 0;    // sunset - padding
    int padding_minutes = 0;
};

// Solar altitude/azimuth from a low-precision fractional-Julian-day chain
// (apparent longitude + obliquity + equation of time). Good to well under
// 0.5 degrees for 2000-2050; valid 1950-2150. Axis convention: x east,
// y north, z up; azimuth clockwise from north.
// Throws ValidationError on out-of-range location or timestamp.
SunSample sun_position(UtcInstant t, const GeoLocation& loc);

// Daylight window for the solar day whose local noon falls on `date`.
// Sunrise/sunset located by bisection on altitude to <= 1 minute.
// Throws NoCrossingError (polar day/night) or WindowCollapsedError.
DayWindow day_window(const CivilDate& date, const GeoLocation& loc, int padding_minutes);

// Instants start, start+dt, ... <= end. A window shorter than one interval
// yields the single instant `start`.
std::vector<UtcInstant> timeline(const DayWindow& window, int interval_minutes);

}  // namespace solshade
