// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/irradiance.hpp"

#include <algorithm>
#include <cmath>

#include "solshade/errors.hpp"
#include "solshade/time_utils.hpp"

namespace solshade {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

void check_record(const WeatherRecord& r) {
    if (r.dni < 0.0 || r.dhi < 0.0 || r.ghi < 0.0)
        throw ValidationError("negative irradiance in weather record at " +
                              format_iso8601(r.timestamp));
    if (!std::isfinite(r.dni) || !std::isfinite(r.dhi) || !std::isfinite(r.ghi) ||
        !std::isfinite(r.temp_air) || !std::isfinite(r.wind_speed))
        throw ValidationError("non-finite weather value at " + format_iso8601(r.timestamp));
    if (r.wind_speed < 0.0)
        throw ValidationError("negative wind speed at " + format_iso8601(r.timestamp));
    if (r.ghi > r.dni + r.dhi + 50.0)
        throw ValidationError("ghi exceeds dni + dhi + 50 W/m^2 at " +
                              format_iso8601(r.timestamp));
}

}  // namespace

WeatherSeries::WeatherSeries(std::vector<WeatherRecord> records)
    : records_(std::move(records)) {
    if (records_.empty()) throw ValidationError("weather series is empty");
    for (const WeatherRecord& r : records_) check_record(r);
    if (records_.size() > 1) {
        spacing_s_ = records_[1].timestamp - records_[0].timestamp;
        if (spacing_s_ <= 0)
            throw ValidationError("weather timestamps not strictly increasing at " +
                                  format_iso8601(records_[1].timestamp));
        for (std::size_t i = 1; i < records_.size(); ++i) {
            const std::int64_t d = records_[i].timestamp - records_[i - 1].timestamp;
            if (std::llabs(d - spacing_s_) > 1)
                throw ValidationError("weather spacing not uniform at " +
                                      format_iso8601(records_[i].timestamp));
        }
    } else {
        spacing_s_ = 3600;  // lone record: give lookup a usable half-window
    }
}

const WeatherRecord& WeatherSeries::at(UtcInstant t) const {
    if (records_.empty())
        throw WeatherGapError("weather series is empty", {format_iso8601(t)});
    auto it = std::lower_bound(records_.begin(), records_.end(), t,
                               [](const WeatherRecord& r, UtcInstant v) { return r.timestamp < v; });
    const WeatherRecord* best = nullptr;
    if (it != records_.end()) best = &*it;
    if (it != records_.begin()) {
        const WeatherRecord* prev = &*(it - 1);
        if (!best || t - prev->timestamp <= best->timestamp - t) best = prev;
    }
    if (!best || std::llabs(best->timestamp - t) * 2 > spacing_s_)
        throw WeatherGapError("no weather record within half the series spacing of " +
                                  format_iso8601(t),
                              {format_iso8601(t)});
    return *best;
}

std::vector<std::pair<UtcInstant, UtcInstant>> WeatherSeries::missing_spans(
    const std::vector<UtcInstant>& instants) const {
    std::vector<std::pair<UtcInstant, UtcInstant>> spans;
    bool prev_missing = false;
    for (UtcInstant t : instants) {
        bool covered = true;
        try {
            (void)at(t);
        } catch (const WeatherGapError&) {
            covered = false;
        }
        if (covered) {
            prev_missing = false;
            continue;
        }
        if (prev_missing)
            spans.back().second = t;  // extend the run of consecutive misses
        else
            spans.emplace_back(t, t);
        prev_missing = true;
    }
    return spans;
}

double angle_of_incidence(const SunSample& sun, const SurfaceOrientation& orient) {
    const double tilt = orient.tilt_deg * kDegToRad;
    const double alt = sun.altitude_deg * kDegToRad;
    const double daz = (sun.azimuth_deg - orient.azimuth_deg) * kDegToRad;
    const double c = std::cos(tilt) * std::sin(alt) + std::sin(tilt) * std::cos(alt) * std::cos(daz);
    return std::acos(std::clamp(c, -1.0, 1.0)) / kDegToRad;
}

namespace {

double cos_incidence(const SunSample& sun, const SurfaceOrientation& orient) {
    const double tilt = orient.tilt_deg * kDegToRad;
    const double alt = sun.altitude_deg * kDegToRad;
    const double daz = (sun.azimuth_deg - orient.azimuth_deg) * kDegToRad;
    return std::cos(tilt) * std::sin(alt) + std::sin(tilt) * std::cos(alt) * std::cos(daz);
}

}  // namespace

PoaBreakdown poa(const WeatherRecord& rec, const SurfaceOrientation& orient, const SunSample& sun,
                 bool shaded) {
    check_record(rec);
    PoaBreakdown b;
    const double cos_tilt = std::cos(orient.tilt_deg * kDegToRad);
    if (!shaded && sun.altitude_deg > 0.0)
        b.g_dir = rec.dni * std::max(cos_incidence(sun, orient), 0.0);
    b.g_dif = rec.dhi * (1.0 + cos_tilt) / 2.0;
    b.g_ref = rec.ghi * orient.albedo * (1.0 - cos_tilt) / 2.0;
    // Sky terms first, beam last: shading toggles the beam term alone, so
    // shaded and unshaded totals differ by exactly g_dir.
    b.total = (b.g_dif + b.g_ref) + b.g_dir;
    return b;
}

double surface_mean_irradiance(const std::vector<std::pair<double, double>>& patches) {
    double area_sum = 0.0, weighted = 0.0;
    for (const auto& [a, irr] : patches) {
        area_sum += a;
        weighted += a * irr;
    }
    if (area_sum <= 0.0) throw ValidationError("surface_mean_irradiance: zero total area");
    return weighted / area_sum;
}

}  // namespace solshade
