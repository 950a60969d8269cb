// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include "solshade/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "solshade/errors.hpp"

namespace solshade {

namespace {

using nlohmann::json;

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kEarthRadiusM = 6371000.0;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Numeric property that may arrive as a JSON number or a numeric string.
bool numeric_property(const json& props, const char* key, double& out) {
    if (!props.contains(key)) return false;
    const json& v = props.at(key);
    if (v.is_number()) {
        out = v.get<double>();
        return true;
    }
    if (v.is_string()) {
        try {
            std::size_t pos = 0;
            out = std::stod(v.get<std::string>(), &pos);
            return pos > 0;
        } catch (...) {
            return false;
        }
    }
    return false;
}

bool ring_from_geojson(const json& arr, Ring& out) {
    if (!arr.is_array() || arr.size() < 4) return false;  // closed ring: >= 4
    out.clear();
    out.reserve(arr.size());
    for (const json& pt : arr) {
        if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() || !pt[1].is_number())
            return false;
        out.push_back(Vec2{pt[0].get<double>(), pt[1].get<double>()});
    }
    // GeoJSON repeats the first vertex; project rings do not.
    if (out.front().x == out.back().x && out.front().y == out.back().y) out.pop_back();
    return out.size() >= 3;
}

bool polygon_from_geojson(const json& rings, Polygon& out) {
    if (!rings.is_array() || rings.empty()) return false;
    out = Polygon{};
    if (!ring_from_geojson(rings[0], out.outer)) return false;
    for (std::size_t i = 1; i < rings.size(); ++i) {
        Ring hole;
        if (!ring_from_geojson(rings[i], hole)) return false;
        out.holes.push_back(std::move(hole));
    }
    return true;
}

// Footprint area in m^2 from lon/lat vertices via the local tangent scale.
double lonlat_area_m2(const Polygon& p) {
    if (p.outer.empty()) return 0.0;
    const double lat_c = ring_centroid(p.outer).y;
    const double sx = kEarthRadiusM * std::cos(lat_c * kDegToRad) * kDegToRad;
    const double sy = kEarthRadiusM * kDegToRad;
    double a = ring_area(p.outer);
    for (const Ring& h : p.holes) a -= ring_area(h);
    return std::abs(a) * sx * sy;
}

std::string geometry_key(const Polygon& p) {
    std::string key;
    char buf[64];
    auto add = [&](const Ring& r) {
        for (const Vec2& v : r) {
            std::snprintf(buf, sizeof buf, "%a,%a;", v.x, v.y);
            key += buf;
        }
        key += '|';
    };
    add(p.outer);
    for (const Ring& h : p.holes) add(h);
    return key;
}

bool polygon_is_simple(const Polygon& p) {
    if (!ring_is_simple(p.outer)) return false;
    for (const Ring& h : p.holes)
        if (!ring_is_simple(h)) return false;
    return true;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;  // fold -0 into +0 for stable output
}

json coords_from_multipolygon(const MultiPolygon& mp, const GeoLocation& origin,
                              bool already_lonlat) {
    auto ring_json = [&](const Ring& r) {
        json arr = json::array();
        for (const Vec2& v : r) {
            const Vec2 ll = already_lonlat ? v : local_to_lonlat(v, origin);
            arr.push_back(json::array({round6(ll.x), round6(ll.y)}));
        }
        if (!r.empty()) {
            const Vec2 ll = already_lonlat ? r.front() : local_to_lonlat(r.front(), origin);
            arr.push_back(json::array({round6(ll.x), round6(ll.y)}));  // close
        }
        return arr;
    };
    json polys = json::array();
    for (const Polygon& p : mp) {
        json rings = json::array();
        rings.push_back(ring_json(p.outer));
        for (const Ring& h : p.holes) rings.push_back(ring_json(h));
        polys.push_back(std::move(rings));
    }
    return polys;
}

json geometry_json(const MultiPolygon& mp, const GeoLocation& origin, bool already_lonlat) {
    json g;
    json coords = coords_from_multipolygon(mp, origin, already_lonlat);
    if (coords.size() == 1) {
        g["type"] = "Polygon";
        g["coordinates"] = coords[0];
    } else {
        g["type"] = "MultiPolygon";
        g["coordinates"] = std::move(coords);
    }
    return g;
}

// Facade patches live in (s, z); unfold them outward onto the ground plane
// from the base edge so 2-D viewers can render them next to the wall.
MultiPolygon unfold_facade(const MultiPolygon& sz, const Facade& f) {
    const Vec2 e = f.edge_dir();
    const Vec2 n = f.outward_normal;
    MultiPolygon out;
    out.reserve(sz.size());
    for (const Polygon& p : sz) {
        Polygon w;
        auto map_ring = [&](const Ring& r) {
            Ring m;
            m.reserve(r.size());
            for (const Vec2& v : r)
                m.push_back(Vec2{f.vertex_a.x + e.x * v.x + n.x * v.y,
                                 f.vertex_a.y + e.y * v.x + n.y * v.y});
            return m;
        };
        w.outer = map_ring(p.outer);
        for (const Ring& h : p.holes) w.holes.push_back(map_ring(h));
        out.push_back(std::move(w));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace

std::vector<GeoFeature> load_buildings(const std::string& path, IngestReport& report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        throw IoError(path + ": not a GeoJSON FeatureCollection");

    report = IngestReport{};
    std::vector<GeoFeature> accepted;
    std::unordered_set<std::string> seen_geoms;

    std::size_t index = 0;
    for (const json& feat : doc["features"]) {
        const std::size_t i = index++;
        report.input_count++;

        std::string id = "f" + std::to_string(i);
        if (feat.contains("id")) {
            if (feat["id"].is_string())
                id = feat["id"].get<std::string>();
            else if (feat["id"].is_number_integer())
                id = std::to_string(feat["id"].get<std::int64_t>());
        } else if (feat.contains("properties") && feat["properties"].is_object()) {
            const json& props = feat["properties"];
            if (props.contains("id") && props["id"].is_string())
                id = props["id"].get<std::string>();
            else if (props.contains("@id") && props["@id"].is_string())
                id = props["@id"].get<std::string>();
        }

        auto reject = [&](const std::string& reason) {
            report.rejected.push_back({id, reason});
        };

        if (!feat.is_object() || !feat.contains("geometry") || !feat["geometry"].is_object()) {
            reject("missing geometry");
            continue;
        }
        const json& geom = feat["geometry"];
        const std::string gtype = geom.value("type", "");

        std::vector<Polygon> parts;
        if (gtype == "Polygon") {
            Polygon p;
            if (!polygon_from_geojson(geom.value("coordinates", json::array()), p)) {
                reject("invalid polygon geometry");
                continue;
            }
            parts.push_back(std::move(p));
        } else if (gtype == "MultiPolygon") {
            bool ok = true;
            for (const json& rings : geom.value("coordinates", json::array())) {
                Polygon p;
                if (!polygon_from_geojson(rings, p)) {
                    ok = false;
                    break;
                }
                parts.push_back(std::move(p));
            }
            if (!ok || parts.empty()) {
                reject("invalid multipolygon geometry");
                continue;
            }
        } else {
            reject("unsupported geometry type: " + (gtype.empty() ? "none" : gtype));
            continue;
        }

        double height = 0.0;
        bool has_height = false;
        bool from_levels = false;
        if (feat.contains("properties") && feat["properties"].is_object()) {
            const json& props = feat["properties"];
            if (numeric_property(props, "height", height)) {
                has_height = true;
            } else {
                double levels = 0.0;
                if (numeric_property(props, "levels", levels) ||
                    numeric_property(props, "building:levels", levels)) {
                    height = levels * 3.0;
                    has_height = true;
                    from_levels = true;
                }
            }
        }
        if (!has_height) {
            reject("missing height");
            continue;
        }
        if (!(height > 0.0)) {
            reject("non-positive height");
            continue;
        }

        bool part_rejected = false;
        std::vector<GeoFeature> staged;
        for (std::size_t pi = 0; pi < parts.size(); ++pi) {
            Polygon& poly = parts[pi];
            const std::string part_id =
                parts.size() == 1 ? id : id + "#" + std::to_string(pi);
            if (!polygon_is_simple(poly)) {
                report.rejected.push_back({part_id, "self-intersection"});
                part_rejected = true;
                continue;
            }
            if (lonlat_area_m2(poly) < 0.1) {
                report.rejected.push_back({part_id, "area below 0.1 m^2"});
                part_rejected = true;
                continue;
            }
            if (!seen_geoms.insert(geometry_key(poly)).second) {
                report.rejected.push_back({part_id, "duplicate geometry"});
                part_rejected = true;
                continue;
            }
            GeoFeature f;
            f.id = part_id;
            f.polygon_lonlat = std::move(poly);
            f.height_m = height;
            staged.push_back(std::move(f));
        }
        (void)part_rejected;
        if (!staged.empty() && from_levels) {
            report.height_from_levels++;
            report.levels_feature_ids.push_back(id);
        }
        for (GeoFeature& f : staged) {
            accepted.push_back(std::move(f));
            report.accepted_count++;
        }
    }
    return accepted;
}

WeatherSeries load_weather(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");

    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (!s.empty() && s.back() == ',') cells.push_back("");
        return cells;
    };

    // Header mapping, NSRDB-style names included.
    int c_time = -1, c_dni = -1, c_dhi = -1, c_ghi = -1, c_temp = -1, c_wind = -1;
    const std::vector<std::string> header = split(line);
    for (int c = 0; c < static_cast<int>(header.size()); ++c) {
        const std::string h = lower(header[c]);
        if (h == "timestamp" || h == "time" || h == "datetime" || h == "date_time")
            c_time = c;
        else if (h == "dni" || h == "direct normal irradiance")
            c_dni = c;
        else if (h == "dhi" || h == "diffuse horizontal irradiance")
            c_dhi = c;
        else if (h == "ghi" || h == "global horizontal irradiance")
            c_ghi = c;
        else if (h == "temp_air" || h == "temperature" || h == "air temperature" || h == "temp")
            c_temp = c;
        else if (h == "wind_speed" || h == "wind speed" || h == "wind")
            c_wind = c;
    }
    auto require = [&](int c, const char* name) {
        if (c < 0) throw IoError(path + ": missing column " + name);
    };
    require(c_time, "timestamp");
    require(c_dni, "dni");
    require(c_dhi, "dhi");
    require(c_ghi, "ghi");
    require(c_temp, "temp_air");
    require(c_wind, "wind_speed");

    std::vector<WeatherRecord> records;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split(line);
        const int needed = std::max({c_time, c_dni, c_dhi, c_ghi, c_temp, c_wind});
        if (static_cast<int>(cells.size()) <= needed)
            throw IoError(path + ": row " + std::to_string(row) + " has too few columns");
        WeatherRecord rec;
        try {
            rec.timestamp = parse_iso8601(cells[c_time]);
        } catch (const std::exception& e) {
            throw IoError(path + ": row " + std::to_string(row) + " timestamp: " + e.what());
        }
        auto num = [&](int c, const char* name) {
            try {
                return std::stod(cells[c]);
            } catch (...) {
                throw IoError(path + ": row " + std::to_string(row) + " column " + name +
                              ": not a number: " + cells[c]);
            }
        };
        rec.dni = num(c_dni, "dni");
        rec.dhi = num(c_dhi, "dhi");
        rec.ghi = num(c_ghi, "ghi");
        rec.temp_air = num(c_temp, "temp_air");
        rec.wind_speed = num(c_wind, "wind_speed");
        if (rec.dni < 0.0 || rec.dhi < 0.0 || rec.ghi < 0.0)
            throw IoError(path + ": row " + std::to_string(row) + ": negative irradiance");
        if (!records.empty() && rec.timestamp <= records.back().timestamp)
            throw IoError(path + ": row " + std::to_string(row) +
                          ": timestamps not strictly increasing");
        records.push_back(rec);
    }
    if (records.empty()) throw IoError(path + ": no data rows");
    try {
        return WeatherSeries(std::move(records));
    } catch (const ValidationError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void export_patches_geojson(const std::vector<PatchFeature>& patches, const Scene& scene,
                            const std::string& path) {
    json features = json::array();
    for (const PatchFeature& p : patches) {
        json props;
        props["area_m2"] = round6(p.area_m2);
        props["building_id"] = p.building_id;
        props["date"] = format_date(p.date);
        props["poa_kwh_m2"] = round6(p.poa_kwh_m2);
        props["pv_kwh_m2"] = round6(p.pv_kwh_m2);
        props["sunlit_minutes"] = p.sunlit_minutes;
        props["surface_class"] = p.surface_class == SurfaceClass::kRoof ? "roof" : "facade";
        props["surface_ref"] = p.surface_ref;
        MultiPolygon world = p.polygon;
        if (p.surface_class == SurfaceClass::kFacade) {
            world = unfold_facade(p.polygon, scene.facades[p.facade_index]);
            props["z_min_m"] = round6(p.z_min_m);
            props["z_max_m"] = round6(p.z_max_m);
        }
        json f;
        f["geometry"] = geometry_json(world, scene.origin, false);
        f["properties"] = std::move(props);
        f["type"] = "Feature";
        features.push_back(std::move(f));
    }
    json doc;
    doc["features"] = std::move(features);
    doc["type"] = "FeatureCollection";
    write_text(path, doc.dump(2) + "\n");
}

void export_patches_csv(const std::vector<PatchFeature>& patches, const Scene& scene,
                        const std::string& path) {
    std::string text =
        "building_id,surface_ref,surface_class,date,area_m2,sunlit_minutes,"
        "poa_kwh_m2,pv_kwh_m2,centroid_lon,centroid_lat,z_min_m,z_max_m\n";
    for (const PatchFeature& p : patches) {
        MultiPolygon world = p.polygon;
        if (p.surface_class == SurfaceClass::kFacade)
            world = unfold_facade(p.polygon, scene.facades[p.facade_index]);
        Vec2 c{0.0, 0.0};
        double asum = 0.0;
        for (const Polygon& poly : world) {
            const double a = area(poly);
            const Vec2 rc = ring_centroid(poly.outer);
            c = c + rc * a;
            asum += a;
        }
        if (asum > 0.0) c = c * (1.0 / asum);
        const Vec2 ll = local_to_lonlat(c, scene.origin);
        text += p.building_id + "," + p.surface_ref + "," +
                (p.surface_class == SurfaceClass::kRoof ? "roof" : "facade") + "," +
                format_date(p.date) + "," + format_fixed(p.area_m2, 6) + "," +
                std::to_string(p.sunlit_minutes) + "," + format_fixed(p.poa_kwh_m2, 6) + "," +
                format_fixed(p.pv_kwh_m2, 6) + "," + format_fixed(ll.x, 6) + "," +
                format_fixed(ll.y, 6) + "," + format_fixed(p.z_min_m, 6) + "," +
                format_fixed(p.z_max_m, 6) + "\n";
    }
    write_text(path, text);
}

void export_buildings_csv(const std::vector<BuildingPotential>& buildings,
                          const std::string& path) {
    std::string text =
        "building_id,roof_kwh,facade_kwh,roof_area_m2,facade_area_m2,"
        "roof_kwh_per_m2,facade_kwh_per_m2\n";
    for (const BuildingPotential& b : buildings) {
        text += b.building_id + "," + format_fixed(b.roof_kwh, 6) + "," +
                format_fixed(b.facade_kwh, 6) + "," + format_fixed(b.roof_area_m2, 6) + "," +
                format_fixed(b.facade_area_m2, 6) + "," + format_fixed(b.roof_kwh_per_m2, 6) +
                "," + format_fixed(b.facade_kwh_per_m2, 6) + "\n";
    }
    write_text(path, text);
}

void export_region_report(const RegionReport& region, const std::string& path) {
    json doc;
    doc["bounds"] = {{"max_x", round6(region.bounds.max_x)},
                     {"max_y", round6(region.bounds.max_y)},
                     {"min_x", round6(region.bounds.min_x)},
                     {"min_y", round6(region.bounds.min_y)}};
    doc["building_count"] = region.building_count;
    doc["empty_region"] = region.empty_region;
    doc["facade_area_m2"] = round6(region.facade_area_m2);
    doc["facade_kwh"] = round6(region.facade_kwh);
    doc["facade_to_roof_ratio"] = round6(region.facade_to_roof_ratio);
    doc["roof_area_m2"] = round6(region.roof_area_m2);
    doc["roof_kwh"] = round6(region.roof_kwh);
    json profile_roof = json::array(), profile_facade = json::array();
    for (double v : region.roof_profile_w_m2) profile_roof.push_back(round6(v));
    for (double v : region.facade_profile_w_m2) profile_facade.push_back(round6(v));
    doc["hourly_profile_facade_w_m2"] = std::move(profile_facade);
    doc["hourly_profile_roof_w_m2"] = std::move(profile_roof);
    json series = json::array();
    for (const ShadePoint& s : region.shade_series) {
        json pt;
        pt["facade_fraction"] = round6(s.facade_fraction);
        pt["roof_fraction"] = round6(s.roof_fraction);
        pt["timestamp"] = format_iso8601(s.timestamp);
        series.push_back(std::move(pt));
    }
    doc["shade_series"] = std::move(series);
    write_text(path, doc.dump(2) + "\n");
}

void export_shadows_geojson(const SceneShadows& shadows, const Scene& scene,
                            const std::string& path) {
    json features = json::array();
    auto add = [&](const MultiPolygon& world, json props) {
        if (world.empty()) return;
        json f;
        f["geometry"] = geometry_json(world, scene.origin, false);
        f["properties"] = std::move(props);
        f["type"] = "Feature";
        features.push_back(std::move(f));
    };

    {
        json props;
        props["surface_ref"] = "ground";
        props["timestamp"] = format_iso8601(shadows.sun.timestamp);
        props["truncated"] = shadows.ground_truncated;
        add(shadows.ground, std::move(props));
    }
    for (const ShadowPolygon& sp : shadows.roofs) {
        json props;
        props["surface_ref"] = sp.surface_ref;
        props["timestamp"] = format_iso8601(sp.timestamp);
        props["truncated"] = sp.truncated;
        add(sp.polygon, std::move(props));
    }
    for (std::size_t j = 0; j < shadows.facades.size(); ++j) {
        const ShadowPolygon& sp = shadows.facades[j];
        json props;
        props["fully_shaded"] = sp.fully_shaded;
        props["grazing"] = sp.grazing;
        props["surface_ref"] = sp.surface_ref;
        props["timestamp"] = format_iso8601(sp.timestamp);
        add(unfold_facade(sp.polygon, scene.facades[j]), std::move(props));
    }
    json doc;
    doc["features"] = std::move(features);
    doc["type"] = "FeatureCollection";
    write_text(path, doc.dump(2) + "\n");
}

void export_buildings_geojson(const std::vector<GeoFeature>& features, const std::string& path) {
    json arr = json::array();
    for (const GeoFeature& f : features) {
        json props;
        props["height"] = f.height_m;
        props["id"] = f.id;
        json feat;
        feat["geometry"] = geometry_json(MultiPolygon{f.polygon_lonlat}, GeoLocation{}, true);
        feat["properties"] = std::move(props);
        feat["type"] = "Feature";
        arr.push_back(std::move(feat));
    }
    json doc;
    doc["features"] = std::move(arr);
    doc["type"] = "FeatureCollection";
    write_text(path, doc.dump(2) + "\n");
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for digest");
    std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;  // FNV prime
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s == "-0" || s.rfind("-0.", 0) == 0) {
        // normalize negative zero artifacts from rounding
        bool all_zero = true;
        for (char c : s)
            if (c != '-' && c != '0' && c != '.') all_zero = false;
        if (all_zero) s = s.substr(1);
    }
    return s;
}

}  // namespace solshade
