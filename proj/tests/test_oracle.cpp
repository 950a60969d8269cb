// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

// Self-validation of the ray-cast reference against closed-form single-wall
// shadows, so the cross-check between pipeline and reference rests on a
// third, analytic leg.

#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"
#include "solshade/insolation.hpp"
#include "solshade/scene.hpp"
#include "solshade/shadow.hpp"

using namespace solshade;
using test::make_sun;
using test::rect_building;

TEST_CASE("point-in-footprint handles holes and edges") {
    Polygon p;
    p.outer = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    p.holes.push_back({{4, 4}, {4, 6}, {6, 6}, {6, 4}});
    CHECK(oracle::point_in_footprint(p, 2.0, 2.0));
    CHECK(!oracle::point_in_footprint(p, 5.0, 5.0));   // inside the hole
    CHECK(!oracle::point_in_footprint(p, 11.0, 5.0));  // outside
    CHECK(oracle::point_in_footprint(p, 9.999, 9.999));
}

TEST_CASE("ground point north of a wall is shaded within the reach") {
    // 10 m building, sun due south at 45 deg: ground shadow extends 10 m north
    // of the north wall (y = 5).
    const Scene scene = build_scene({rect_building("a", 0, 0, 10, 10, 10)}, {});
    const oracle::OracleScene os(scene);
    const SunSample sun = make_sun(45.0, 180.0);
    CHECK(oracle::raycast_shaded(Vec3{0, 10, 0}, sun, os));
    CHECK(oracle::raycast_shaded(Vec3{0, 14.9, 0}, sun, os));
    CHECK(!oracle::raycast_shaded(Vec3{0, 15.1, 0}, sun, os));
    CHECK(!oracle::raycast_shaded(Vec3{0, -10, 0}, sun, os));  // sun side
}

TEST_CASE("roof points under a zenith sun are never shaded") {
    const Scene scene = build_scene(
        {rect_building("a", 0, 0, 10, 10, 10), rect_building("b", 15, 0, 6, 6, 40)}, {});
    const oracle::OracleScene os(scene);
    const SunSample sun = make_sun(90.0, 0.0);
    const oracle::SampleGrid grid = oracle::roof_grid(scene, 0);
    REQUIRE(!grid.points.empty());
    for (const oracle::SamplePoint& pt : grid.points)
        CHECK(!oracle::point_shaded(os, grid, pt, sun));
}

TEST_CASE("analytic single-wall facade shade height") {
    // West tower 30 m; target facade on the east building faces west. With the
    // sun due west at altitude a, the shade line on the facade sits at
    // z = 30 - gap * tan(a); grid classification must agree within one
    // spacing of that line.
    const Building west = rect_building("w", 0, 0, 10, 10, 30);
    const Building east = rect_building("e", 20, 0, 10, 10, 25);
    const Scene scene = build_scene({west, east}, {});
    const oracle::OracleScene os(scene);

    std::size_t fi = SIZE_MAX;
    for (std::size_t i = 0; i < scene.facades.size(); ++i)
        if (scene.facades[i].building_id == "e" && scene.facades[i].outward_normal.x < -0.9)
            fi = i;
    REQUIRE(fi != SIZE_MAX);
    const oracle::SampleGrid grid = oracle::facade_grid(scene, fi);

    for (double alt : {30.0, 45.0, 60.0}) {
        const SunSample sun = make_sun(alt, 270.0);
        // Gap from the caster's east wall (x = 5) to the facade plane (x = 15).
        const double z_line = 30.0 - 10.0 * std::tan(alt * test::kDeg);
        int misclassified = 0;
        for (const oracle::SamplePoint& pt : grid.points) {
            const bool shaded = oracle::point_shaded(os, grid, pt, sun);
            const bool analytic = pt.v < z_line;
            if (shaded != analytic && std::abs(pt.v - z_line) > grid.spacing)
                ++misclassified;
        }
        CHECK(misclassified == 0);
    }
}

TEST_CASE("analytic single-wall roof shade depth") {
    // Caster 30 m, target roof at 10 m, gap 5 m, sun due west at 45 deg:
    // points with x < 25 on the roof are shaded, the rest sunlit.
    const Building caster = rect_building("c", 0, 0, 10, 10, 30);
    const Building target = rect_building("t", 20, 0, 20, 10, 10);
    const Scene scene = build_scene({caster, target}, {});
    const oracle::OracleScene os(scene);
    const SunSample sun = make_sun(45.0, 270.0);
    const oracle::SampleGrid grid = oracle::roof_grid(scene, 1);
    REQUIRE(!grid.points.empty());
    int misclassified = 0;
    for (const oracle::SamplePoint& pt : grid.points) {
        const bool shaded = oracle::point_shaded(os, grid, pt, sun);
        const bool analytic = pt.u < 25.0;
        if (shaded != analytic && std::abs(pt.u - 25.0) > grid.spacing) ++misclassified;
    }
    CHECK(misclassified == 0);
}

TEST_CASE("own roof never shades itself") {
    std::mt19937_64 rng(41001ULL);
    const std::vector<Building> buildings = test::random_buildings(rng, 4, 40, 4, 10, 3, 30);
    // Isolated-building check: strip all but one building each time.
    for (std::size_t b = 0; b < buildings.size(); ++b) {
        const Scene solo = build_scene({buildings[b]}, {});
        const oracle::OracleScene solo_os(solo);
        const oracle::SampleGrid grid = oracle::roof_grid(solo, 0);
        const SunSample sun = make_sun(25.0, 135.0);
        for (const oracle::SamplePoint& pt : grid.points)
            CHECK(!oracle::point_shaded(solo_os, grid, pt, sun));
    }
}

TEST_CASE("back side of a facade counts as shaded") {
    const Scene scene = build_scene({rect_building("a", 0, 0, 10, 10, 10)}, {});
    const oracle::OracleScene os(scene);
    std::size_t north = SIZE_MAX;
    for (std::size_t i = 0; i < scene.facades.size(); ++i)
        if (scene.facades[i].outward_normal.y > 0.9) north = i;
    REQUIRE(north != SIZE_MAX);
    const oracle::SampleGrid grid = oracle::facade_grid(scene, north);
    const SunSample sun = make_sun(40.0, 180.0);  // behind this wall
    for (const oracle::SamplePoint& pt : grid.points)
        CHECK(oracle::point_shaded(os, grid, pt, sun));
}

TEST_CASE("raster insolation counts sunlit minutes per point") {
    const Scene scene = build_scene({rect_building("a", 0, 0, 10, 10, 10)}, {});
    const oracle::OracleScene os(scene);
    std::size_t south = SIZE_MAX;
    for (std::size_t i = 0; i < scene.facades.size(); ++i)
        if (scene.facades[i].outward_normal.y < -0.9) south = i;
    REQUIRE(south != SIZE_MAX);
    const oracle::SampleGrid grid = oracle::facade_grid(scene, south);
    // Two facing instants, one behind: every point collects 2 x 30 minutes.
    const std::vector<SunSample> suns = {make_sun(40.0, 180.0), make_sun(30.0, 170.0),
                                         make_sun(35.0, 0.0)};
    const std::vector<int> minutes = oracle::raster_insolation(grid, suns, os, 30);
    REQUIRE(minutes.size() == grid.points.size());
    for (int m : minutes) CHECK(m == 60);
}

TEST_CASE("reference agrees with the patch pipeline on a two-caster overlap") {
    // Two towers west and southwest of a low slab: their roof shadows overlap.
    const Building slab = rect_building("s", 0, 0, 14, 14, 5);
    const Building t1 = rect_building("t1", -18, 0, 8, 8, 35);
    const Building t2 = rect_building("t2", -14, -14, 8, 8, 35);
    const Scene scene = build_scene({slab, t1, t2}, {});
    const oracle::OracleScene os(scene);

    const std::vector<SunSample> suns = {make_sun(20.0, 250.0), make_sun(28.0, 230.0),
                                         make_sun(24.0, 210.0)};
    std::vector<InstantShade> instants;
    for (const SunSample& sun : suns)
        instants.push_back(roof_instant_shade(scene, 0, sun));
    const auto patches = overlay_partition(scene.roofs[0].id, scene.roofs[0].polygon, instants);

    const oracle::SampleGrid grid = oracle::roof_grid(scene, 0);
    REQUIRE(grid.points.size() > 100);

    std::size_t checked = 0, agreed = 0;
    for (const oracle::SamplePoint& pt : grid.points) {
        // Locate the patch containing this grid point.
        const SurfacePatch* home = nullptr;
        for (const SurfacePatch& p : patches)
            if (covers_point(p.polygon, Vec2{pt.u, pt.v})) {
                home = &p;
                break;
            }
        if (!home) continue;  // boundary sliver
        for (std::size_t k = 0; k < suns.size(); ++k) {
            const bool reference = oracle::point_shaded(os, grid, pt, suns[k]);
            ++checked;
            if (reference == home->shade_mask.test(k)) ++agreed;
        }
    }
    REQUIRE(checked > 300);
    CHECK(static_cast<double>(agreed) / static_cast<double>(checked) >= 0.999);
}
