// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "solshade/errors.hpp"
#include "solshade/scene.hpp"

using namespace solshade;
using test::rect_building;

TEST_CASE("square building decomposes into roof and four facades") {
    const Scene scene = build_scene({rect_building("a", 5, 5, 10, 10, 20)}, {});
    REQUIRE(scene.roofs.size() == 1);
    REQUIRE(scene.facades.size() == 4);
    CHECK(scene.roofs[0].area_m2 == doctest::Approx(100.0));
    for (const Facade& f : scene.facades) CHECK(f.area_m2() == doctest::Approx(200.0));
}

TEST_CASE("two disjoint squares decompose additively") {
    const Scene scene =
        build_scene({rect_building("a", 0, 0, 4, 4, 10), rect_building("b", 20, 0, 4, 4, 10)}, {});
    CHECK(scene.roofs.size() == 2);
    CHECK(scene.facades.size() == 8);
}

TEST_CASE("courtyard building enumerates both rings") {
    Building b = rect_building("c", 0, 0, 10, 10, 5);
    // CW hole: a 4x4 courtyard.
    b.footprint.holes.push_back(
        Ring{Vec2{-2, -2}, Vec2{-2, 2}, Vec2{2, 2}, Vec2{2, -2}});
    const Scene scene = build_scene({b}, {});
    REQUIRE(scene.roofs.size() == 1);
    CHECK(scene.facades.size() == 8);
    CHECK(scene.roofs[0].area_m2 == doctest::Approx(84.0));
}

TEST_CASE("facade normals of a CCW unit square") {
    Building b;
    b.id = "u";
    b.height_m = 3.0;
    b.footprint.outer = {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}};
    const std::vector<Facade> fs = decompose_facades(b, 0);
    REQUIRE(fs.size() == 4);
    CHECK(fs[0].outward_normal.x == doctest::Approx(0.0));
    CHECK(fs[0].outward_normal.y == doctest::Approx(-1.0));  // edge (0,0)->(1,0)
    CHECK(fs[1].outward_normal.x == doctest::Approx(1.0));   // edge (1,0)->(1,1)
    CHECK(fs[1].outward_normal.y == doctest::Approx(0.0));
    CHECK(fs[2].outward_normal.y == doctest::Approx(1.0));
    CHECK(fs[3].outward_normal.x == doctest::Approx(-1.0));
}

TEST_CASE("diagonal edge plane passes through both vertices") {
    Building b;
    b.id = "d";
    b.height_m = 4.0;
    b.footprint.outer = {Vec2{0, 0}, Vec2{1, 1}, Vec2{-1, 2}};
    const std::vector<Facade> fs = decompose_facades(b, 0);
    for (const Facade& f : fs) {
        CHECK(f.plane_a * f.vertex_a.x + f.plane_b * f.vertex_a.y + f.plane_d ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK(f.plane_a * f.vertex_b.x + f.plane_b * f.vertex_b.y + f.plane_d ==
              doctest::Approx(0.0).epsilon(1e-12));
        // Interior stays on the non-positive side of every facade plane.
        const Vec2 c = ring_centroid(b.footprint.outer);
        CHECK(f.plane_a * c.x + f.plane_b * c.y + f.plane_d < 1e-6);
    }
}

TEST_CASE("facade areas sum to perimeter times height") {
    std::mt19937_64 rng(77001ULL);
    const std::vector<Building> buildings = test::random_buildings(rng, 6, 50, 4, 12, 3, 40);
    for (const Building& b : buildings) {
        double perimeter = 0.0;
        const Ring& r = b.footprint.outer;
        for (std::size_t i = 0; i < r.size(); ++i)
            perimeter += (r[(i + 1) % r.size()] - r[i]).norm();
        const std::vector<Facade> fs = decompose_facades(b, 0);
        double total = 0.0;
        for (const Facade& f : fs) total += f.area_m2();
        CHECK(total == doctest::Approx(perimeter * b.height_m).epsilon(1e-6));
    }
}

TEST_CASE("facade normal-weighted edge sum closes to zero") {
    std::mt19937_64 rng(77002ULL);
    const std::vector<Building> buildings = test::random_buildings(rng, 6, 50, 4, 12, 3, 40);
    for (const Building& b : buildings) {
        Vec2 sum{0, 0};
        for (const Facade& f : decompose_facades(b, 0))
            sum = sum + f.outward_normal * f.length_m;
        CHECK(sum.norm() < 1e-9);
    }
}

TEST_CASE("scene construction is deterministic") {
    std::mt19937_64 rng(77003ULL);
    const std::vector<Building> buildings = test::random_buildings(rng, 8, 60, 4, 12, 3, 50);
    const Scene a = build_scene(buildings, {});
    const Scene b = build_scene(buildings, {});
    REQUIRE(a.facades.size() == b.facades.size());
    for (std::size_t i = 0; i < a.facades.size(); ++i) {
        CHECK(a.facades[i].id == b.facades[i].id);
        CHECK(a.facades[i].vertex_a.x == b.facades[i].vertex_a.x);
        CHECK(a.facades[i].vertex_a.y == b.facades[i].vertex_a.y);
    }
}

TEST_CASE("validation rejects bad buildings") {
    CHECK_THROWS_AS(build_scene({}, {}), ValidationError);
    CHECK_THROWS_AS(
        build_scene({rect_building("a", 0, 0, 4, 4, 10), rect_building("a", 20, 0, 4, 4, 10)}, {}),
        ValidationError);
    CHECK_THROWS_AS(build_scene({rect_building("a", 0, 0, 4, 4, 0.0)}, {}), ValidationError);
    CHECK_THROWS_AS(build_scene({rect_building("a", 0, 0, 4, 4, 1200.0)}, {}), ValidationError);
    CHECK_THROWS_AS(build_scene({rect_building("tiny", 0, 0, 0.2, 0.2, 5)}, {}), ValidationError);

    Building bowtie;
    bowtie.id = "bt";
    bowtie.height_m = 5.0;
    bowtie.footprint.outer = {Vec2{0, 0}, Vec2{2, 2}, Vec2{2, 0}, Vec2{0, 2}};
    try {
        build_scene({bowtie}, {});
        FAIL("bow-tie footprint accepted");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("bt") != std::string::npos);
        CHECK(std::string(e.what()).find("self-intersect") != std::string::npos);
    }
}

TEST_CASE("clockwise input footprints are normalized to CCW") {
    Building cw;
    cw.id = "cw";
    cw.height_m = 6.0;
    cw.footprint.outer = {Vec2{0, 0}, Vec2{0, 4}, Vec2{4, 4}, Vec2{4, 0}};
    const Scene scene = build_scene({cw}, {});
    CHECK(signed_ring_area(scene.buildings[0].footprint.outer) > 0.0);
    CHECK(scene.facades.size() == 4);
}

TEST_CASE("sub-millimeter edges are skipped but ids stay stable") {
    Building b;
    b.id = "s";
    b.height_m = 5.0;
    b.footprint.outer = {Vec2{0, 0}, Vec2{4, 0}, Vec2{4, 4e-13}, Vec2{4, 4}, Vec2{0, 4}};
    std::vector<std::string> skipped;
    const std::vector<Facade> fs = decompose_facades(b, 0, &skipped);
    CHECK(fs.size() == 4);
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0] == "s/f1");
    CHECK(fs[1].id == "s/f2");  // numbering keeps counting past the skip
}

TEST_CASE("projection matches the tangent-plane scale") {
    // Delta-lat of 0.001 deg is ~111.2 m of northing anywhere.
    GeoFeature f;
    f.id = "p";
    f.height_m = 10.0;
    f.polygon_lonlat.outer = {Vec2{0.0, 0.0}, Vec2{0.001, 0.0}, Vec2{0.001, 0.001},
                              Vec2{0.0, 0.001}};
    const std::vector<Building> at_equator = project_to_local({f}, {0.0, 0.0});
    CHECK(at_equator[0].footprint.outer[3].y == doctest::Approx(111.19).epsilon(1e-3));
    CHECK(at_equator[0].footprint.outer[1].x == doctest::Approx(111.19).epsilon(1e-3));

    // At lat 60 the same delta-lon shrinks by cos(60) = 0.5.
    GeoFeature g = f;
    for (Vec2& v : g.polygon_lonlat.outer) v.y += 60.0;
    const std::vector<Building> at_60 = project_to_local({g}, {60.0, 0.0});
    CHECK(at_60[0].footprint.outer[1].x == doctest::Approx(55.6).epsilon(1e-2));
}

TEST_CASE("projection round-trips through local_to_lonlat") {
    const GeoLocation origin{40.0, -75.0};
    const Vec2 ll = local_to_lonlat(Vec2{123.4, -56.7}, origin);
    GeoFeature f;
    f.id = "rt";
    f.height_m = 5.0;
    f.polygon_lonlat.outer = {ll, Vec2{ll.x + 1e-4, ll.y}, Vec2{ll.x, ll.y + 1e-4}};
    const std::vector<Building> b = project_to_local({f}, origin);
    CHECK(b[0].footprint.outer[0].x == doctest::Approx(123.4).epsilon(1e-9));
    CHECK(b[0].footprint.outer[0].y == doctest::Approx(-56.7).epsilon(1e-9));
}

TEST_CASE("projection rejects far-away vertices") {
    GeoFeature f;
    f.id = "far";
    f.height_m = 5.0;
    f.polygon_lonlat.outer = {Vec2{3.0, 0.0}, Vec2{3.001, 0.0}, Vec2{3.0, 0.001}};
    CHECK_THROWS_AS(project_to_local({f}, {0.0, 0.0}), ValidationError);
}

TEST_CASE("origin_from_features is the bbox center") {
    GeoFeature a;
    a.id = "a";
    a.height_m = 5.0;
    a.polygon_lonlat.outer = {Vec2{10.0, 50.0}, Vec2{10.1, 50.0}, Vec2{10.1, 50.1}};
    GeoFeature b = a;
    b.id = "b";
    for (Vec2& v : b.polygon_lonlat.outer) {
        v.x += 0.3;
        v.y -= 0.5;
    }
    const GeoLocation o = origin_from_features({a, b});
    CHECK(o.longitude_deg == doctest::Approx((10.0 + 10.4) / 2));
    CHECK(o.latitude_deg == doctest::Approx((49.5 + 50.1) / 2));
}

TEST_CASE("grid index candidate queries are conservative") {
    std::mt19937_64 rng(77004ULL);
    const std::vector<Building> buildings = test::random_buildings(rng, 10, 80, 4, 10, 3, 30);
    const Scene scene = build_scene(buildings, {});
    std::uniform_real_distribution<double> u(-20.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x0 = u(rng), y0 = u(rng);
        const Aabb q{x0, y0, x0 + std::abs(u(rng)) / 2.0, y0 + std::abs(u(rng)) / 2.0};
        const std::vector<std::size_t> cands = scene.index.candidates(q);
        for (std::size_t i = 0; i < scene.buildings.size(); ++i) {
            const Aabb box = bounding_box(scene.buildings[i].footprint);
            if (!box.intersects(q)) continue;
            CHECK(std::find(cands.begin(), cands.end(), i) != cands.end());
        }
    }
}
