// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "solshade/ephemeris.hpp"
#include "solshade/errors.hpp"
#include "solshade/io.hpp"
#include "solshade/scene.hpp"
#include "solshade/shadow.hpp"
#include "solshade/simulate.hpp"
#include "solshade/time_utils.hpp"

namespace {

using namespace solshade;

// Shared command-line state; dates and the optional origin are parsed after CLI11 runs.
struct CliOptions {
    RunConfig cfg;
    std::string start_str;
    std::string end_str;
    double origin_lat = std::numeric_limits<double>::quiet_NaN();
    double origin_lon = std::numeric_limits<double>::quiet_NaN();
    std::string instant_str;                 // shadow only
    std::string shadow_out = "shadows.geojson";  // shadow only
    std::vector<std::string> report_inputs;  // report only
    std::string report_out;                  // report only; empty = stdout
};

void add_origin_options(CLI::App* sub, CliOptions& o) {
    sub->add_option("--origin-lat", o.origin_lat,
                    "Latitude of the local coordinate origin (default: footprint bbox center)");
    sub->add_option("--origin-lon", o.origin_lon,
                    "Longitude of the local coordinate origin (default: footprint bbox center)");
}

void add_pv_options(CLI::App* sub, PVConfig& pv) {
    sub->add_option("--eta-stc", pv.eta_stc, "Module efficiency at standard test conditions");
    sub->add_option("--gamma", pv.gamma, "Power temperature coefficient [1/degC]");
    sub->add_option("--t-ref", pv.t_ref, "Reference cell temperature [degC]");
    sub->add_option("--facade-derate", pv.facade_derate, "Facade performance derate factor");
    sub->add_option("--thermal-u0", pv.thermal_u0, "Thermal model constant term [W/m2K]");
    sub->add_option("--thermal-u1", pv.thermal_u1, "Thermal model wind term [W/m2K/(m/s)]");
    sub->add_option("--rooftop-tilt", pv.rooftop_tilt_deg,
                    "Fixed rooftop tilt [deg] (default: latitude rule)");
    sub->add_option("--max-rooftop-tilt", pv.max_rooftop_tilt_deg,
                    "Cap for the latitude-rule rooftop tilt [deg]");
}

void resolve_origin(CliOptions& o) {
    const bool has_lat = !std::isnan(o.origin_lat);
    const bool has_lon = !std::isnan(o.origin_lon);
    if (has_lat != has_lon)
        throw ValidationError("--origin-lat and --origin-lon must be given together");
    if (has_lat) o.cfg.origin = GeoLocation{o.origin_lat, o.origin_lon};
}

int cmd_simulate(CliOptions& o) {
    o.cfg.start_date = parse_date(o.start_str);
    o.cfg.end_date = parse_date(o.end_str);
    resolve_origin(o);
    o.cfg.validate();

    SimulationResult result = run_simulation(o.cfg);
    write_outputs(o.cfg, result);

    std::cout << kVersion << " simulate\n"
              << "buildings: " << result.ingest.accepted_count << " accepted, "
              << result.ingest.rejected.size() << " rejected\n"
              << "surfaces: " << result.scene.roofs.size() << " roofs, "
              << result.scene.facades.size() << " facades\n"
              << "patches: " << result.patches.size() << "\n"
              << "instants: " << result.region.shade_series.size() << " simulated, "
              << result.truncated_instants << " low-sun\n"
              << "skipped days: " << result.skipped_days.size() << "\n"
              << "roof energy [kWh]: " << format_fixed(result.region.roof_kwh, 6) << "\n"
              << "facade energy [kWh]: " << format_fixed(result.region.facade_kwh, 6) << "\n"
              << "facade/roof ratio: " << format_fixed(result.region.facade_to_roof_ratio, 6)
              << "\n"
              << "outputs: " << o.cfg.out_dir << "\n";
    for (const std::string& d : result.diagnostics) std::cout << "diagnostic: " << d << "\n";
    for (const std::string& s : result.skipped_days) std::cout << "skipped: " << s << "\n";
    return 0;
}

// Describes the daylight window when a shadow instant falls at night.
std::string night_message(UtcInstant t, const CivilDate& date, const GeoLocation& origin) {
    std::string msg = "sun below horizon at " + format_iso8601(t);
    try {
        const DayWindow w = day_window(date, origin, 0);
        msg += "; daylight on " + format_date(date) + " runs " + format_iso8601(w.start) +
               " (sunrise) to " + format_iso8601(w.end) + " (sunset)";
    } catch (const NoCrossingError&) {
        msg += "; the sun never rises on " + format_date(date) + " at this latitude";
    }
    return msg;
}

int cmd_shadow(CliOptions& o) {
    resolve_origin(o);
    const UtcInstant t = parse_iso8601(o.instant_str);

    IngestReport ingest;
    const std::vector<GeoFeature> features = load_buildings(o.cfg.buildings_path, ingest);
    if (features.empty())
        throw ValidationError(o.cfg.buildings_path + ": no usable building features");
    const GeoLocation origin = o.cfg.origin ? *o.cfg.origin : origin_from_features(features);
    const Scene scene = build_scene(project_to_local(features, origin), origin);

    const SunSample sun = sun_position(t, origin);
    if (sun.altitude_deg <= 0.0) {
        const CivilDate date = civil_from_days(t >= 0 ? t / 86400 : (t - 86399) / 86400);
        throw ValidationError(night_message(t, date, origin));
    }

    ShadowConfig shadow_cfg;
    shadow_cfg.min_altitude_deg = o.cfg.min_altitude_deg;
    const SceneShadows shadows = scene_shadows(scene, sun, shadow_cfg);
    export_shadows_geojson(shadows, scene, o.shadow_out);

    std::size_t shaded_facades = 0;
    for (const ShadowPolygon& s : shadows.facades)
        if (s.fully_shaded || !s.polygon.empty()) ++shaded_facades;
    std::cout << kVersion << " shadow\n"
              << "instant: " << format_iso8601(t) << "\n"
              << "sun: altitude " << format_fixed(sun.altitude_deg, 3) << " deg, azimuth "
              << format_fixed(sun.azimuth_deg, 3) << " deg\n"
              << "buildings: " << scene.buildings.size() << "\n"
              << "facades shaded or facing away: " << shaded_facades << " of "
              << scene.facades.size() << "\n"
              << "output: " << o.shadow_out << "\n";
    for (const std::string& d : shadows.diagnostics) std::cout << "diagnostic: " << d << "\n";
    return 0;
}

// One region per buildings.csv: totals plus the facade/roof energy ratio.
struct RegionRow {
    std::string label;
    double roof_kwh = 0.0;
    double facade_kwh = 0.0;
    double roof_area_m2 = 0.0;
    double facade_area_m2 = 0.0;
    int building_count = 0;
};

RegionRow read_region_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open for reading");
    std::string header;
    if (!std::getline(in, header)) throw IoError(path + ": empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const std::string expected =
        "building_id,roof_kwh,facade_kwh,roof_area_m2,facade_area_m2,"
        "roof_kwh_per_m2,facade_kwh_per_m2";
    if (header != expected)
        throw IoError(path + ": unexpected header '" + header + "', expected '" + expected + "'");

    RegionRow row;
    std::string::size_type slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") base.resize(base.size() - 4);
    row.label = base;

    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7)
            throw IoError(path + ": line " + std::to_string(lineno) + ": expected 7 columns, got " +
                          std::to_string(cells.size()));
        try {
            row.roof_kwh += std::stod(cells[1]);
            row.facade_kwh += std::stod(cells[2]);
            row.roof_area_m2 += std::stod(cells[3]);
            row.facade_area_m2 += std::stod(cells[4]);
        } catch (const std::exception&) {
            throw IoError(path + ": line " + std::to_string(lineno) + ": non-numeric value");
        }
        ++row.building_count;
    }
    if (row.building_count == 0) throw IoError(path + ": no building rows");
    return row;
}

int cmd_report(CliOptions& o) {
    std::vector<RegionRow> rows;
    rows.reserve(o.report_inputs.size());
    for (const std::string& path : o.report_inputs) rows.push_back(read_region_csv(path));

    std::string text = "region,buildings,roof_kwh,facade_kwh,facade_roof_ratio\n";
    double ratio_sum = 0.0;
    for (const RegionRow& r : rows) {
        const double ratio = r.roof_kwh > 0.0 ? r.facade_kwh / r.roof_kwh : 0.0;
        ratio_sum += ratio;
        text += r.label + "," + std::to_string(r.building_count) + "," +
                format_fixed(r.roof_kwh, 6) + "," + format_fixed(r.facade_kwh, 6) + "," +
                format_fixed(ratio, 6) + "\n";
    }
    text += "mean,,,," + format_fixed(ratio_sum / static_cast<double>(rows.size()), 6) + "\n";

    if (o.report_out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.report_out, std::ios::binary);
        if (!out) throw IoError(o.report_out + ": cannot open for writing");
        out << text;
        std::cout << "output: " << o.report_out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions o;
    int rc = 0;
    CLI::App app{"solshade: building-integrated PV potential from footprint shadow casting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(solshade::kVersion));

    CLI::App* sim = app.add_subcommand("simulate", "Run a full simulation over a date range");
    sim->set_config("--config", "", "Key=value config file; command-line flags override it");
    sim->add_option("--buildings", o.cfg.buildings_path, "GeoJSON building footprints")
        ->required();
    sim->add_option("--weather", o.cfg.weather_path, "Weather CSV (NSRDB-style columns)")
        ->required();
    sim->add_option("--start", o.start_str, "First simulated day, YYYY-MM-DD")->required();
    sim->add_option("--end", o.end_str, "Last simulated day, YYYY-MM-DD")->required();
    sim->add_option("--interval-min", o.cfg.interval_minutes, "Timeline step [minutes]");
    sim->add_option("--padding-min", o.cfg.padding_minutes,
                    "Padding inside sunrise/sunset [minutes]");
    sim->add_option("--min-altitude", o.cfg.min_altitude_deg,
                    "Sun altitude below which shadows are truncated [deg]");
    sim->add_option("--albedo", o.cfg.albedo, "Ground albedo for reflected irradiance");
    sim->add_option("--out", o.cfg.out_dir, "Output directory");
    sim->add_option("--format", o.cfg.format, "Patch output format: geojson | csv");
    sim->add_option("--threads", o.cfg.threads, "Worker threads (0 = all cores)");
    add_origin_options(sim, o);
    add_pv_options(sim, o.cfg.pv);
    sim->callback([&o, &rc] { rc = cmd_simulate(o); });

    CLI::App* shadow = app.add_subcommand("shadow", "Export scene shadows for one instant");
    shadow->set_config("--config", "", "Key=value config file; command-line flags override it");
    shadow->add_option("--buildings", o.cfg.buildings_path, "GeoJSON building footprints")
        ->required();
    shadow->add_option("--instant", o.instant_str, "UTC instant, e.g. 2022-06-21T12:00:00Z")
        ->required();
    shadow->add_option("--min-altitude", o.cfg.min_altitude_deg,
                       "Sun altitude below which shadows are truncated [deg]");
    shadow->add_option("--out", o.shadow_out, "Output GeoJSON path");
    add_origin_options(shadow, o);
    shadow->callback([&o, &rc] { rc = cmd_shadow(o); });

    CLI::App* report = app.add_subcommand("report", "Compare per-building CSVs across regions");
    report->add_option("inputs", o.report_inputs, "buildings.csv files, one per region")
        ->required()
        ->expected(-1);
    report->add_option("--out", o.report_out, "Write the table here instead of stdout");
    report->callback([&o, &rc] { rc = cmd_report(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const solshade::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const solshade::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
