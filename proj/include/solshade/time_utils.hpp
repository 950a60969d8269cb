// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <cstdint>
#include <string>

namespace solshade {

// UTC instant as seconds since the Unix epoch.
using UtcInstant = std::int64_t;

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
};

// Proleptic Gregorian day arithmetic (Howard Hinnant's algorithms).
std::int64_t days_from_civil(int year, int month, int day);
CivilDate civil_from_days(std::int64_t days);

UtcInstant utc_from_civil(int year, int month, int day,
                          int hour = 0, int minute = 0, int second = 0);

// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS" with optional "Z", "+HH:MM",
// "-HH:MM", or "+HHMM" zone suffix. Space instead of 'T' is accepted.
// Throws ValidationError with the offending text.
UtcInstant parse_iso8601(const std::string& text);

// Parses just a calendar date "YYYY-MM-DD".
CivilDate parse_date(const std::string& text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(UtcInstant t);
// "YYYY-MM-DD"
std::string format_date(const CivilDate& d);

}  // namespace solshade
