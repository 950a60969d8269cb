// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/time_utils.hpp"

#include <cstdio>
#include <cstdlib>

#include "solshade/errors.hpp"

namespace solshade {

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);              // [0, 399]
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u + static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;             // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);           // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);           // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                                // [0, 11]
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;                        // [1, 31]
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;                           // [1, 12]
    CivilDate out;
    out.year = static_cast<int>(y + (m <= 2));
    out.month = static_cast<int>(m);
    out.day = static_cast<int>(d);
    return out;
}

UtcInstant utc_from_civil(int year, int month, int day, int hour, int minute, int second) {
    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

namespace {

bool parse_int(const char* s, int n, int& out) {
    out = 0;
    for (int i = 0; i < n; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

}  // namespace

CivilDate parse_date(const std::string& text) {
    CivilDate d;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-' ||
        !parse_int(text.c_str(), 4, d.year) ||
        !parse_int(text.c_str() + 5, 2, d.month) ||
        !parse_int(text.c_str() + 8, 2, d.day)) {
        throw ValidationError("invalid date '" + text + "', expected YYYY-MM-DD");
    }
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw ValidationError("date out of range: '" + text + "'");
    }
    // Round-trip through the day count rejects dates that normalize away
    // (e.g. Feb 30 becomes Mar 2).
    const CivilDate back = civil_from_days(days_from_civil(d.year, d.month, d.day));
    if (back.year != d.year || back.month != d.month || back.day != d.day) {
        throw ValidationError("date out of range: '" + text + "'");
    }
    return d;
}

UtcInstant parse_iso8601(const std::string& text) {
    const CivilDate d = parse_date(text);
    if (text.size() == 10) return utc_from_civil(d.year, d.month, d.day);

    const char sep = text[10];
    if ((sep != 'T' && sep != ' ') || text.size() < 19 || text[13] != ':' || text[16] != ':') {
        throw ValidationError("invalid timestamp '" + text + "'");
    }
    int hh = 0, mm = 0, ss = 0;
    if (!parse_int(text.c_str() + 11, 2, hh) ||
        !parse_int(text.c_str() + 14, 2, mm) ||
        !parse_int(text.c_str() + 17, 2, ss) ||
        hh > 23 || mm > 59 || ss > 60) {
        throw ValidationError("invalid time of day in '" + text + "'");
    }
    UtcInstant t = utc_from_civil(d.year, d.month, d.day, hh, mm, ss);

    // Zone suffix. Absent zone is taken as UTC.
    std::string zone = text.substr(19);
    if (zone.empty() || zone == "Z" || zone == "z") return t;
    if (zone[0] == '+' || zone[0] == '-') {
        int zh = 0, zm = 0;
        bool ok = false;
        if (zone.size() == 6 && zone[3] == ':') {
            ok = parse_int(zone.c_str() + 1, 2, zh) && parse_int(zone.c_str() + 4, 2, zm);
        } else if (zone.size() == 5) {
            ok = parse_int(zone.c_str() + 1, 2, zh) && parse_int(zone.c_str() + 3, 2, zm);
        } else if (zone.size() == 3) {
            ok = parse_int(zone.c_str() + 1, 2, zh);
        }
        if (ok && zh <= 14 && zm <= 59) {
            const std::int64_t off = zh * 3600 + zm * 60;
            return zone[0] == '+' ? t - off : t + off;
        }
    }
    throw ValidationError("invalid zone suffix in '" + text + "'");
}

std::string format_iso8601(UtcInstant t) {
    std::int64_t days = t / 86400;
    std::int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    const CivilDate d = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month, d.day,
                  static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

std::string format_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace solshade
