// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/simulate.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "solshade/errors.hpp"
#include "solshade/insolation.hpp"
#include "solshade/irradiance.hpp"
#include "solshade/shadow.hpp"

namespace solshade {

namespace {

// Index-addressed parallel loop: fn(i) fills slot i, so results never depend
// on scheduling. The first worker exception is rethrown after the join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    int t = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
    t = std::max(1, std::min<int>(t, static_cast<int>(n)));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct SurfaceTask {
    std::string surface_ref;
    std::string building_id;
    std::size_t building_index = 0;
    SurfaceClass surface_class = SurfaceClass::kRoof;
    std::size_t roof_index = 0;    // when roof
    std::size_t facade_index = 0;  // when facade
    double area_m2 = 0.0;
};

// One surface's contribution to a single day.
struct SurfaceDayResult {
    std::vector<PatchFeature> patches;
    std::vector<PatchEnergy> energies;  // parallel to patches
    std::vector<double> shaded_area;    // per instant
    std::vector<double> power_area;     // per instant: sum p_unit * area
    std::string diagnostic;
};

struct DayContext {
    CivilDate date;
    std::vector<UtcInstant> instants;
    std::vector<SunSample> suns;
    std::vector<const WeatherRecord*> records;
    int window_minutes = 0;
};

Polygon facade_rectangle(const Facade& f) {
    return Polygon{Ring{Vec2{0.0, 0.0}, Vec2{f.length_m, 0.0}, Vec2{f.length_m, f.height_m},
                        Vec2{0.0, f.height_m}},
                   {}};
}

SurfaceDayResult process_surface_day(const Scene& scene, const SurfaceTask& task,
                                     const DayContext& day, const RunConfig& cfg,
                                     const SurfaceOrientation& roof_orient) {
    SurfaceDayResult out;
    const std::size_t n = day.instants.size();
    const ShadowConfig shadow_cfg{cfg.min_altitude_deg};

    std::vector<SurfacePatch> patches;
    const Polygon surface_poly = task.surface_class == SurfaceClass::kRoof
                                     ? scene.roofs[task.roof_index].polygon
                                     : facade_rectangle(scene.facades[task.facade_index]);
    try {
        std::vector<InstantShade> shades;
        shades.reserve(n);
        for (const SunSample& sun : day.suns)
            shades.push_back(task.surface_class == SurfaceClass::kRoof
                                 ? roof_instant_shade(scene, task.roof_index, sun, shadow_cfg)
                                 : facade_instant_shade(scene, task.facade_index, sun,
                                                        shadow_cfg));
        patches = overlay_partition(task.surface_ref, surface_poly, shades);
    } catch (const std::exception& e) {
        out.diagnostic = task.surface_ref + ": " + e.what();
        SurfacePatch p;
        p.surface_ref = task.surface_ref;
        p.polygon = MultiPolygon{normalized(surface_poly)};
        p.area_m2 = area(p.polygon);
        p.shade_mask = ShadeMask(n);
        for (std::size_t k = 0; k < n; ++k) p.shade_mask.set(k);
        p.overlap_count = static_cast<int>(n);
        p.unpartitioned = true;
        patches = {std::move(p)};
    }

    const SurfaceOrientation orient =
        task.surface_class == SurfaceClass::kRoof
            ? roof_orient
            : facade_orientation(scene.facades[task.facade_index], cfg.albedo);

    out.shaded_area.assign(n, 0.0);
    out.power_area.assign(n, 0.0);
    out.patches.reserve(patches.size());
    out.energies.reserve(patches.size());

    for (SurfacePatch& patch : patches) {
        double poa_kwh_m2 = 0.0;
        double pv_kwh_m2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const bool shaded = patch.shade_mask.test(k);
            const WeatherRecord& rec = *day.records[k];
            const PoaBreakdown b = poa(rec, orient, day.suns[k], shaded);
            const double t_cell = cell_temperature(b.total, rec.temp_air, rec.wind_speed, cfg.pv);
            const double p_unit = unit_power(b.total, t_cell, task.surface_class, cfg.pv);
            poa_kwh_m2 += b.total * (cfg.interval_minutes / 60.0) / 1000.0;
            pv_kwh_m2 += p_unit * (cfg.interval_minutes / 60.0) / 1000.0;
            if (shaded) out.shaded_area[k] += patch.area_m2;
            out.power_area[k] += p_unit * patch.area_m2;
        }
        const ExposureResult exp = exposure(patch, cfg.interval_minutes, day.window_minutes);

        PatchFeature f;
        f.building_id = task.building_id;
        f.surface_ref = task.surface_ref;
        f.surface_class = task.surface_class;
        f.date = day.date;
        f.area_m2 = patch.area_m2;
        f.sunlit_minutes = exp.t_s_minutes;
        f.poa_kwh_m2 = poa_kwh_m2;
        f.pv_kwh_m2 = pv_kwh_m2;
        if (task.surface_class == SurfaceClass::kFacade) {
            f.facade_index = task.facade_index;
            double z0 = 0.0, z1 = 0.0;
            bool first = true;
            for (const Polygon& p : patch.polygon)
                for (const Vec2& v : p.outer) {
                    z0 = first ? v.y : std::min(z0, v.y);
                    z1 = first ? v.y : std::max(z1, v.y);
                    first = false;
                }
            f.z_min_m = z0;
            f.z_max_m = z1;
        }
        f.polygon = std::move(patch.polygon);

        PatchEnergy e;
        e.surface_class = task.surface_class;
        e.area_m2 = f.area_m2;
        e.kwh = pv_kwh_m2 * f.area_m2;

        out.patches.push_back(std::move(f));
        out.energies.push_back(e);
    }
    return out;
}

nlohmann::json config_echo(const RunConfig& cfg, const GeoLocation& origin) {
    nlohmann::json j;
    j["albedo"] = cfg.albedo;
    j["buildings_path"] = cfg.buildings_path;
    j["end"] = format_date(cfg.end_date);
    j["format"] = cfg.format;
    j["interval_minutes"] = cfg.interval_minutes;
    j["min_altitude_deg"] = cfg.min_altitude_deg;
    j["origin_lat"] = origin.latitude_deg;
    j["origin_lon"] = origin.longitude_deg;
    j["padding_minutes"] = cfg.padding_minutes;
    nlohmann::json pv;
    pv["eta_stc"] = cfg.pv.eta_stc;
    pv["facade_derate"] = cfg.pv.facade_derate;
    pv["gamma"] = cfg.pv.gamma;
    pv["max_rooftop_tilt_deg"] = cfg.pv.max_rooftop_tilt_deg;
    pv["rooftop_tilt_deg"] = std::isnan(cfg.pv.rooftop_tilt_deg)
                                 ? nlohmann::json("latitude")
                                 : nlohmann::json(cfg.pv.rooftop_tilt_deg);
    pv["t_ref"] = cfg.pv.t_ref;
    pv["thermal_u0"] = cfg.pv.thermal_u0;
    pv["thermal_u1"] = cfg.pv.thermal_u1;
    j["pv"] = std::move(pv);
    j["start"] = format_date(cfg.start_date);
    j["weather_path"] = cfg.weather_path;
    return j;
}

}  // namespace

void RunConfig::validate() const {
    if (buildings_path.empty()) throw ValidationError("buildings path is required");
    if (weather_path.empty()) throw ValidationError("weather path is required");
    if (interval_minutes < 1) throw ValidationError("interval_minutes must be >= 1");
    if (padding_minutes < 0) throw ValidationError("padding_minutes must be >= 0");
    if (days_from_civil(end_date.year, end_date.month, end_date.day) <
        days_from_civil(start_date.year, start_date.month, start_date.day))
        throw ValidationError("empty date range: end " + format_date(end_date) +
                              " precedes start " + format_date(start_date));
    if (albedo < 0.0 || albedo > 1.0) throw ValidationError("albedo must be in [0, 1]");
    if (min_altitude_deg < 0.0 || min_altitude_deg >= 90.0)
        throw ValidationError("min_altitude_deg must be in [0, 90)");
    if (format != "geojson" && format != "csv")
        throw ValidationError("format must be geojson or csv, got " + format);
    if (threads < 0) throw ValidationError("threads must be >= 0");
    pv.validate();
}

SimulationResult run_simulation(const RunConfig& cfg) {
    cfg.validate();

    SimulationResult result;
    std::vector<GeoFeature> features = load_buildings(cfg.buildings_path, result.ingest);
    if (features.empty())
        throw ValidationError(cfg.buildings_path + ": no usable building features");

    const GeoLocation origin = cfg.origin ? *cfg.origin : origin_from_features(features);

    result.scene = build_scene(project_to_local(features, origin), origin);
    const Scene& scene = result.scene;

    const WeatherSeries weather = load_weather(cfg.weather_path);
    const SurfaceOrientation roof_orient = rooftop_orientation(origin, cfg.pv, cfg.albedo);

    // Flat surface list: roofs in scene order, then facades.
    std::vector<SurfaceTask> tasks;
    tasks.reserve(scene.roofs.size() + scene.facades.size());
    for (std::size_t i = 0; i < scene.roofs.size(); ++i) {
        SurfaceTask t;
        t.surface_ref = scene.roofs[i].id;
        t.building_id = scene.roofs[i].building_id;
        t.building_index = scene.roofs[i].building_index;
        t.surface_class = SurfaceClass::kRoof;
        t.roof_index = i;
        t.area_m2 = scene.roofs[i].area_m2;
        tasks.push_back(std::move(t));
    }
    for (std::size_t j = 0; j < scene.facades.size(); ++j) {
        SurfaceTask t;
        t.surface_ref = scene.facades[j].id;
        t.building_id = scene.facades[j].building_id;
        t.building_index = scene.facades[j].building_index;
        t.surface_class = SurfaceClass::kFacade;
        t.facade_index = j;
        t.area_m2 = scene.facades[j].area_m2();
        tasks.push_back(std::move(t));
    }

    double roof_area_total = 0.0, facade_area_total = 0.0;
    for (const SurfaceTask& t : tasks)
        (t.surface_class == SurfaceClass::kRoof ? roof_area_total : facade_area_total) +=
            t.area_m2;

    std::vector<std::vector<PatchEnergy>> building_patches(scene.buildings.size());
    std::vector<ShadePoint> shade_series;
    std::array<double, 24> roof_hour_sum{}, facade_hour_sum{};
    std::array<int, 24> hour_count{};
    const std::int64_t tz_offset_s =
        static_cast<std::int64_t>(std::llround(origin.longitude_deg / 15.0)) * 3600;

    const std::int64_t day0 =
        days_from_civil(cfg.start_date.year, cfg.start_date.month, cfg.start_date.day);
    const std::int64_t day1 =
        days_from_civil(cfg.end_date.year, cfg.end_date.month, cfg.end_date.day);
    for (std::int64_t d = day0; d <= day1; ++d) {
        const CivilDate date = civil_from_days(d);

        DayContext day;
        day.date = date;
        try {
            const DayWindow w = day_window(date, origin, cfg.padding_minutes);
            day.instants = timeline(w, cfg.interval_minutes);
        } catch (const NoCrossingError& e) {
            if (e.altitude_positive) {
                // Polar day: run the whole civil day, padded at both ends.
                DayWindow w;
                w.start = utc_from_civil(date.year, date.month, date.day, 0) +
                          static_cast<UtcInstant>(cfg.padding_minutes) * 60;
                w.end = utc_from_civil(date.year, date.month, date.day, 0) + 86400 -
                        static_cast<UtcInstant>(cfg.padding_minutes) * 60;
                w.padding_minutes = cfg.padding_minutes;
                day.instants = timeline(w, cfg.interval_minutes);
            } else {
                result.skipped_days.push_back(format_date(date) + ": " + e.what());
                continue;
            }
        } catch (const WindowCollapsedError& e) {
            result.skipped_days.push_back(format_date(date) + ": " + e.what());
            continue;
        }

        const std::size_t n = day.instants.size();
        day.window_minutes = static_cast<int>(n) * cfg.interval_minutes;
        day.suns.reserve(n);
        for (UtcInstant t : day.instants) {
            day.suns.push_back(sun_position(t, origin));
            if (day.suns.back().altitude_deg < cfg.min_altitude_deg) result.truncated_instants++;
        }

        // Hard gate: the whole padded timeline must have weather.
        std::vector<std::string> missing;
        for (const auto& [a, b] : weather.missing_spans(day.instants)) {
            missing.push_back(format_iso8601(a) + " .. " + format_iso8601(b));
        }
        if (!missing.empty()) {
            std::string msg = cfg.weather_path + " does not cover the timeline:";
            for (const std::string& s : missing) msg += " [" + s + "]";
            throw WeatherGapError(msg, std::move(missing));
        }
        day.records.reserve(n);
        for (UtcInstant t : day.instants) day.records.push_back(&weather.at(t));

        std::vector<SurfaceDayResult> slots(tasks.size());
        parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
            slots[i] = process_surface_day(scene, tasks[i], day, cfg, roof_orient);
        });

        // Deterministic merge in task order.
        std::vector<double> roof_shaded(n, 0.0), facade_shaded(n, 0.0);
        std::vector<double> roof_power(n, 0.0), facade_power(n, 0.0);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            SurfaceDayResult& r = slots[i];
            if (!r.diagnostic.empty()) result.diagnostics.push_back(r.diagnostic);
            auto& shaded =
                tasks[i].surface_class == SurfaceClass::kRoof ? roof_shaded : facade_shaded;
            auto& power = tasks[i].surface_class == SurfaceClass::kRoof ? roof_power
                                                                        : facade_power;
            for (std::size_t k = 0; k < n; ++k) {
                shaded[k] += r.shaded_area[k];
                power[k] += r.power_area[k];
            }
            for (const PatchEnergy& e : r.energies)
                building_patches[tasks[i].building_index].push_back(e);
            for (PatchFeature& f : r.patches) result.patches.push_back(std::move(f));
        }

        for (std::size_t k = 0; k < n; ++k) {
            ShadePoint pt;
            pt.timestamp = day.instants[k];
            pt.roof_fraction = roof_area_total > 0.0 ? roof_shaded[k] / roof_area_total : 0.0;
            pt.facade_fraction =
                facade_area_total > 0.0 ? facade_shaded[k] / facade_area_total : 0.0;
            shade_series.push_back(pt);

            const int hour = static_cast<int>(
                (((day.instants[k] + tz_offset_s) % 86400) + 86400) % 86400 / 3600);
            roof_hour_sum[hour] += roof_area_total > 0.0 ? roof_power[k] / roof_area_total : 0.0;
            facade_hour_sum[hour] +=
                facade_area_total > 0.0 ? facade_power[k] / facade_area_total : 0.0;
            hour_count[hour]++;
        }
    }

    if (result.patches.empty() && !result.skipped_days.empty())
        throw ValidationError("no daylight in the requested date range (" +
                              std::to_string(result.skipped_days.size()) + " days skipped)");

    result.buildings.reserve(scene.buildings.size());
    for (std::size_t b = 0; b < scene.buildings.size(); ++b) {
        double facade_area = 0.0;
        for (const Facade& f : scene.facades)
            if (f.building_index == b) facade_area += f.area_m2();
        result.buildings.push_back(building_rollup(scene.buildings[b].id, building_patches[b],
                                                   scene.roofs[b].area_m2, facade_area));
    }

    std::array<double, 24> roof_profile{}, facade_profile{};
    for (int h = 0; h < 24; ++h) {
        if (hour_count[h] == 0) continue;
        roof_profile[h] = roof_hour_sum[h] / hour_count[h];
        facade_profile[h] = facade_hour_sum[h] / hour_count[h];
    }
    result.region = region_rollup(result.buildings, scene.bounds, std::move(shade_series),
                                  roof_profile, facade_profile);
    return result;
}

void write_outputs(const RunConfig& cfg, const SimulationResult& result) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir);
    const std::string base = cfg.out_dir + "/";

    if (cfg.format == "csv")
        export_patches_csv(result.patches, result.scene, base + "patches.csv");
    else
        export_patches_geojson(result.patches, result.scene, base + "patches.geojson");
    export_buildings_csv(result.buildings, base + "buildings.csv");
    export_region_report(result.region, base + "region.json");

    nlohmann::json manifest;
    manifest["config"] = config_echo(cfg, result.scene.origin);
    manifest["inputs"] = {{"buildings_fnv1a64", file_digest(cfg.buildings_path)},
                          {"weather_fnv1a64", file_digest(cfg.weather_path)}};
    nlohmann::json ingest;
    ingest["accepted"] = result.ingest.accepted_count;
    ingest["height_from_levels"] = result.ingest.height_from_levels;
    ingest["input_features"] = result.ingest.input_count;
    nlohmann::json rejected = nlohmann::json::array();
    for (const RejectedFeature& r : result.ingest.rejected)
        rejected.push_back({{"id", r.id}, {"reason", r.reason}});
    ingest["rejected"] = std::move(rejected);
    manifest["ingest"] = std::move(ingest);
    manifest["diagnostics"] = result.diagnostics;
    manifest["skipped_days"] = result.skipped_days;
    manifest["truncated_instants"] = result.truncated_instants;
    manifest["version"] = kVersion;

    std::ofstream out(base + "manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write " + base + "manifest.json");
    out << manifest.dump(2) << "\n";
}

}  // namespace solshade
