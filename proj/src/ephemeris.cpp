// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/ephemeris.hpp"

#include <cmath>

#include "solshade/errors.hpp"

namespace solshade {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

double wrap360(double deg) {
    deg = std::fmod(deg, 360.0);
    return deg < 0.0 ? deg + 360.0 : deg;
}

void check_location(const GeoLocation& loc) {
    if (!std::isfinite(loc.latitude_deg) || loc.latitude_deg < -90.0 || loc.latitude_deg > 90.0) {
        throw ValidationError("latitude out of range: " + std::to_string(loc.latitude_deg));
    }
    if (!std::isfinite(loc.longitude_deg) || loc.longitude_deg < -180.0 ||
        loc.longitude_deg > 180.0) {
        throw ValidationError("longitude out of range: " + std::to_string(loc.longitude_deg));
    }
}

}  // namespace

SunSample sun_position(UtcInstant t, const GeoLocation& loc) {
    check_location(loc);
    // Validity window of the low-precision chain.
    if (t < utc_from_civil(1950, 1, 1) || t >= utc_from_civil(2151, 1, 1)) {
        throw ValidationError("timestamp outside 1950-2150: " + format_iso8601(t));
    }

    const double jd = static_cast<double>(t) / 86400.0 + 2440587.5;
    const double jc = (jd - 2451545.0) / 36525.0;  // Julian centuries from J2000

    const double mean_long = wrap360(280.46646 + jc * (36000.76983 + jc * 0.0003032));
    const double mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
    const double eccent = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
    const double ma_rad = mean_anom * kDegToRad;
    const double eq_of_center =
        std::sin(ma_rad) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
        std::sin(2.0 * ma_rad) * (0.019993 - 0.000101 * jc) + std::sin(3.0 * ma_rad) * 0.000289;
    const double true_long = mean_long + eq_of_center;
    const double omega = (125.04 - 1934.136 * jc) * kDegToRad;
    const double app_long = true_long - 0.00569 - 0.00478 * std::sin(omega);

    const double mean_obliq =
        23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
    const double obliq = mean_obliq + 0.00256 * std::cos(omega);
    const double obliq_rad = obliq * kDegToRad;
    const double app_long_rad = app_long * kDegToRad;

    const double decl = std::asin(std::sin(obliq_rad) * std::sin(app_long_rad));

    const double var_y = std::tan(obliq_rad / 2.0) * std::tan(obliq_rad / 2.0);
    const double ml_rad = mean_long * kDegToRad;
    const double eq_time_min =
        4.0 * kRadToDeg *
        (var_y * std::sin(2.0 * ml_rad) - 2.0 * eccent * std::sin(ma_rad) +
         4.0 * eccent * var_y * std::sin(ma_rad) * std::cos(2.0 * ml_rad) -
         0.5 * var_y * var_y * std::sin(4.0 * ml_rad) -
         1.25 * eccent * eccent * std::sin(2.0 * ma_rad));

    std::int64_t sod = t % 86400;
    if (sod < 0) sod += 86400;
    const double minutes_utc = static_cast<double>(sod) / 60.0;
    double true_solar_min =
        std::fmod(minutes_utc + eq_time_min + 4.0 * loc.longitude_deg + 1440.0, 1440.0);
    if (true_solar_min < 0.0) true_solar_min += 1440.0;
    const double hour_angle_deg = true_solar_min / 4.0 - 180.0;
    const double ha = hour_angle_deg * kDegToRad;

    const double lat = loc.latitude_deg * kDegToRad;
    double cos_zen = std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(ha);
    cos_zen = std::clamp(cos_zen, -1.0, 1.0);
    const double altitude = 90.0 - std::acos(cos_zen) * kRadToDeg;

    // Azimuth clockwise from north: atan2 form measured from south, then shifted.
    const double az_from_south =
        std::atan2(std::sin(ha), std::cos(ha) * std::sin(lat) - std::tan(decl) * std::cos(lat));
    const double azimuth = wrap360(az_from_south * kRadToDeg + 180.0);

    SunSample s;
    s.timestamp = t;
    s.altitude_deg = altitude;
    s.azimuth_deg = azimuth;
    const double al = altitude * kDegToRad;
    const double az = azimuth * kDegToRad;
    s.light_vector = {-std::sin(az) * std::cos(al), -std::cos(az) * std::cos(al), -std::sin(al)};
    return s;
}

namespace {

double altitude_at(UtcInstant t, const GeoLocation& loc) {
    return sun_position(t, loc).altitude_deg;
}

// Bisects an altitude zero crossing bracketed by [lo, hi] down to one minute;
// returns the endpoint on the positive side.
UtcInstant bisect_crossing(UtcInstant lo, UtcInstant hi, const GeoLocation& loc,
                           bool rising) {
    while (hi - lo > 60) {
        const UtcInstant mid = lo + (hi - lo) / 2;
        if (altitude_at(mid, loc) > 0.0) {
            (rising ? hi : lo) = mid;
        } else {
            (rising ? lo : hi) = mid;
        }
    }
    return rising ? hi : lo;  // the endpoint still in daylight
}

}  // namespace

DayWindow day_window(const CivilDate& date, const GeoLocation& loc, int padding_minutes) {
    check_location(loc);
    if (padding_minutes < 0) {
        throw ValidationError("padding_minutes must be >= 0, got " +
                              std::to_string(padding_minutes));
    }

    // Approximate local solar noon of the requested calendar date.
    const UtcInstant noon_guess =
        utc_from_civil(date.year, date.month, date.day, 12) -
        static_cast<UtcInstant>(std::llround(loc.longitude_deg / 15.0 * 3600.0));

    // Locate the altitude maximum on a 10-minute grid around noon.
    constexpr std::int64_t kScanHalfSpan = 13 * 3600;
    constexpr std::int64_t kStep = 600;
    UtcInstant t_max = noon_guess;
    double best = -1e9;
    bool any_negative = false;
    for (std::int64_t off = -kScanHalfSpan; off <= kScanHalfSpan; off += kStep) {
        const double a = altitude_at(noon_guess + off, loc);
        if (a > best) {
            best = a;
            t_max = noon_guess + off;
        }
        if (a < 0.0) any_negative = true;
    }
    const std::string date_str = format_date(date);
    if (best <= 0.0) {
        throw NoCrossingError("no sunrise on " + date_str + ": sun stays below the horizon",
                              /*positive=*/false);
    }
    if (!any_negative) {
        throw NoCrossingError("no sunset on " + date_str + ": sun stays above the horizon",
                              /*positive=*/true);
    }

    // Walk out from the maximum to bracket the two crossings.
    UtcInstant rise_lo = t_max;
    while (altitude_at(rise_lo, loc) > 0.0) rise_lo -= kStep;
    UtcInstant set_hi = t_max;
    while (altitude_at(set_hi, loc) > 0.0) set_hi += kStep;

    const UtcInstant sunrise = bisect_crossing(rise_lo, rise_lo + kStep, loc, /*rising=*/true);
    const UtcInstant sunset = bisect_crossing(set_hi - kStep, set_hi, loc, /*rising=*/false);

    DayWindow w;
    w.padding_minutes = padding_minutes;
    w.start = sunrise + static_cast<UtcInstant>(padding_minutes) * 60;
    w.end = sunset - static_cast<UtcInstant>(padding_minutes) * 60;
    if (w.start >= w.end) {
        throw WindowCollapsedError("padding of " + std::to_string(padding_minutes) +
                                   " min collapses the daylight window on " + date_str);
    }
    return w;
}

std::vector<UtcInstant> timeline(const DayWindow& window, int interval_minutes) {
    if (interval_minutes < 1) {
        throw ValidationError("interval_minutes must be >= 1, got " +
                              std::to_string(interval_minutes));
    }
    std::vector<UtcInstant> out;
    const std::int64_t step = static_cast<std::int64_t>(interval_minutes) * 60;
    for (UtcInstant t = window.start; t <= window.end; t += step) out.push_back(t);
    if (out.empty()) out.push_back(window.start);  // degenerate window
    return out;
}

}  // namespace solshade
