// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "solshade/ephemeris.hpp"
#include "solshade/geometry.hpp"
#include "solshade/irradiance.hpp"
#include "solshade/scene.hpp"
#include "solshade/time_utils.hpp"

namespace solshade::test {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDeg = kPi / 180.0;

// Synthetic sun: altitude/azimuth chosen directly, light vector derived the
// same way the ephemeris does so downstream geometry sees a consistent sample.
inline SunSample make_sun(double altitude_deg, double azimuth_deg, UtcInstant t = 0) {
    SunSample s;
    s.timestamp = t;
    s.altitude_deg = altitude_deg;
    s.azimuth_deg = azimuth_deg;
    const double al = altitude_deg * kDeg;
    const double az = azimuth_deg * kDeg;
    s.light_vector = Vec3{-std::sin(az) * std::cos(al), -std::cos(az) * std::cos(al),
                          -std::sin(al)};
    return s;
}

// Axis-aligned CCW rectangle footprint centered at (cx, cy).
inline Building rect_building(const std::string& id, double cx, double cy, double w, double d,
                              double height) {
    Building b;
    b.id = id;
    b.height_m = height;
    const double hw = w / 2.0, hd = d / 2.0;
    b.footprint.outer = {Vec2{cx - hw, cy - hd}, Vec2{cx + hw, cy - hd}, Vec2{cx + hw, cy + hd},
                         Vec2{cx - hw, cy + hd}};
    return b;
}

// CCW rectangle rotated by `angle_rad` about its center.
inline Building rotated_building(const std::string& id, double cx, double cy, double w, double d,
                                 double angle_rad, double height) {
    Building b = rect_building(id, 0.0, 0.0, w, d, height);
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    for (Vec2& v : b.footprint.outer) v = Vec2{cx + c * v.x - s * v.y, cy + s * v.x + c * v.y};
    return b;
}

// Random non-overlapping rectangular prisms (bounding boxes separated by a
// margin) scattered over a square region. Heights uniform in [h_min, h_max].
inline std::vector<Building> random_buildings(std::mt19937_64& rng, std::size_t count,
                                              double region_m, double edge_min, double edge_max,
                                              double h_min, double h_max) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<Building> out;
    std::vector<Aabb> boxes;
    int attempts = 0;
    while (out.size() < count && attempts < 4000) {
        ++attempts;
        const double w = edge_min + (edge_max - edge_min) * u01(rng);
        const double d = edge_min + (edge_max - edge_min) * u01(rng);
        const double cx = region_m * u01(rng);
        const double cy = region_m * u01(rng);
        const double ang = 2.0 * kPi * u01(rng);
        const double h = h_min + (h_max - h_min) * u01(rng);
        Building b = rotated_building("b" + std::to_string(out.size()), cx, cy, w, d, ang, h);
        Aabb box = bounding_box(b.footprint);
        const Aabb grown{box.min_x - 0.5, box.min_y - 0.5, box.max_x + 0.5, box.max_y + 0.5};
        bool clash = false;
        for (const Aabb& other : boxes)
            if (grown.intersects(other)) {
                clash = true;
                break;
            }
        if (clash) continue;
        boxes.push_back(box);
        out.push_back(std::move(b));
    }
    return out;
}

// Deterministic clear-sky synthetic weather: direct beam ramps up with
// altitude, diffuse scales with it, and GHI closes the horizontal identity
// ghi = dni*sin(alt) + dhi so horizontal-closure checks hold exactly.
inline WeatherRecord clear_sky_record(UtcInstant t, const GeoLocation& loc) {
    const SunSample sun = sun_position(t, loc);
    WeatherRecord r;
    r.timestamp = t;
    if (sun.altitude_deg > 0.0) {
        const double sa = std::sin(sun.altitude_deg * kDeg);
        r.dni = 900.0 * std::pow(sa, 0.3);
        r.dhi = 120.0 * sa;
        r.ghi = r.dni * sa + r.dhi;
    }
    r.temp_air = 20.0;
    r.wind_speed = 2.0;
    return r;
}

// Hourly clear-sky series spanning [start_day, end_day] civil UTC inclusive.
inline WeatherSeries clear_sky_series(const CivilDate& start_day, const CivilDate& end_day,
                                      const GeoLocation& loc, int interval_minutes = 60) {
    const UtcInstant t0 = utc_from_civil(start_day.year, start_day.month, start_day.day, 0);
    const UtcInstant t1 =
        utc_from_civil(end_day.year, end_day.month, end_day.day, 0) + 86400;
    std::vector<WeatherRecord> recs;
    for (UtcInstant t = t0; t < t1; t += static_cast<UtcInstant>(interval_minutes) * 60)
        recs.push_back(clear_sky_record(t, loc));
    return WeatherSeries(std::move(recs));
}

// CSV text for the same series, in the native column schema.
inline std::string weather_csv(const WeatherSeries& series) {
    std::string text = "timestamp,dni,dhi,ghi,temp_air,wind_speed\n";
    char buf[160];
    for (const WeatherRecord& r : series.records()) {
        std::snprintf(buf, sizeof buf, "%s,%.3f,%.3f,%.3f,%.2f,%.2f\n",
                      format_iso8601(r.timestamp).c_str(), r.dni, r.dhi, r.ghi, r.temp_air,
                      r.wind_speed);
        text += buf;
    }
    return text;
}

// GeoJSON FeatureCollection for buildings given in the local frame around
// `origin` (vertices are unprojected back to lon/lat).
inline std::string buildings_geojson(const std::vector<Building>& buildings,
                                     const GeoLocation& origin) {
    std::string text = "{\"type\":\"FeatureCollection\",\"features\":[";
    char buf[96];
    for (std::size_t i = 0; i < buildings.size(); ++i) {
        const Building& b = buildings[i];
        if (i) text += ",";
        text += "{\"type\":\"Feature\",\"id\":\"" + b.id + "\",\"properties\":{\"height\":";
        std::snprintf(buf, sizeof buf, "%.3f", b.height_m);
        text += buf;
        text += "},\"geometry\":{\"type\":\"Polygon\",\"coordinates\":[[";
        Ring ring = b.footprint.outer;
        ring.push_back(ring.front());
        for (std::size_t k = 0; k < ring.size(); ++k) {
            const Vec2 ll = local_to_lonlat(ring[k], origin);
            if (k) text += ",";
            std::snprintf(buf, sizeof buf, "[%.9f,%.9f]", ll.x, ll.y);
            text += buf;
        }
        text += "]]}}";
    }
    text += "]}";
    return text;
}

}  // namespace solshade::test
