// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace solshade {

// Bad input data or parameters. CLI exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / parse failures. CLI exit code 2.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken internal invariant. CLI exit code 3.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// Sun altitude never crosses zero on the requested day (polar day or night).
// altitude_positive tells which side it stayed on.
struct NoCrossingError : ValidationError {
    bool altitude_positive;
    NoCrossingError(const std::string& msg, bool positive)
        : ValidationError(msg), altitude_positive(positive) {}
};

// Padding consumed the whole daylight window.
struct WindowCollapsedError : ValidationError {
    explicit WindowCollapsedError(const std::string& msg) : ValidationError(msg) {}
};

struct SunBelowHorizonError : ValidationError {
    explicit SunBelowHorizonError(const std::string& msg) : ValidationError(msg) {}
};

// Weather series does not cover the simulation timeline.
struct WeatherGapError : ValidationError {
    std::vector<std::string> missing_spans;
    WeatherGapError(const std::string& msg, std::vector<std::string> spans)
        : ValidationError(msg), missing_spans(std::move(spans)) {}
};

}  // namespace solshade
