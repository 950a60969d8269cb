// Copyright (c) 2026 The solshade Authors. All rights reserved.
// Use of this source code is governed by a BSD-style license
// that can be found in the LICENSE file.

#include <cmath>
#include <random>

#include "doctest.h"
#include "solshade/geometry.hpp"

using namespace solshade;

namespace {

Polygon square(double x0, double y0, double side) {
    Polygon p;
    p.outer = {Vec2{x0, y0}, Vec2{x0 + side, y0}, Vec2{x0 + side, y0 + side},
               Vec2{x0, y0 + side}};
    return p;
}

}  // namespace

TEST_CASE("ring area signs and magnitude") {
    Polygon sq = square(0, 0, 2);
    CHECK(signed_ring_area(sq.outer) == doctest::Approx(4.0));
    Ring cw = {Vec2{0, 0}, Vec2{0, 2}, Vec2{2, 2}, Vec2{2, 0}};
    CHECK(signed_ring_area(cw) == doctest::Approx(-4.0));
    CHECK(ring_area(cw) == doctest::Approx(4.0));
}

TEST_CASE("polygon area subtracts holes") {
    Polygon p = square(0, 0, 10);
    Ring hole = {Vec2{4, 4}, Vec2{4, 6}, Vec2{6, 6}, Vec2{6, 4}};  // CW
    p.holes.push_back(hole);
    CHECK(area(p) == doctest::Approx(96.0));
}

TEST_CASE("normalized fixes winding both ways") {
    Polygon p;
    p.outer = {Vec2{0, 0}, Vec2{0, 2}, Vec2{2, 2}, Vec2{2, 0}};  // CW outer
    Ring ccw_hole = {Vec2{0.5, 0.5}, Vec2{1.5, 0.5}, Vec2{1.5, 1.5}, Vec2{0.5, 1.5}};
    p.holes.push_back(ccw_hole);
    const Polygon n = normalized(p);
    CHECK(signed_ring_area(n.outer) > 0.0);
    CHECK(signed_ring_area(n.holes[0]) < 0.0);
    CHECK(area(n) == doctest::Approx(3.0));
}

TEST_CASE("simple ring detection rejects bow-tie") {
    Ring bowtie = {Vec2{0, 0}, Vec2{2, 2}, Vec2{2, 0}, Vec2{0, 2}};
    CHECK_FALSE(ring_is_simple(bowtie));
    CHECK(ring_is_simple(square(0, 0, 1).outer));
}

TEST_CASE("union of disjoint squares keeps both areas") {
    MultiPolygon u = poly_union({square(0, 0, 1)}, {square(5, 5, 1)});
    CHECK(area(u) == doctest::Approx(2.0));
    CHECK(u.size() == 2);
}

TEST_CASE("union of overlapping squares merges") {
    MultiPolygon u = poly_union({square(0, 0, 2)}, {square(1, 0, 2)});
    CHECK(area(u) == doctest::Approx(6.0));
    CHECK(u.size() == 1);
}

TEST_CASE("intersection and difference partition a polygon") {
    const MultiPolygon a = {square(0, 0, 2)};
    const MultiPolygon b = {square(1, 0, 2)};
    const MultiPolygon inter = poly_intersection(a, b);
    const MultiPolygon diff = poly_difference(a, b);
    CHECK(area(inter) == doctest::Approx(2.0));
    CHECK(area(diff) == doctest::Approx(2.0));
    CHECK(area(inter) + area(diff) == doctest::Approx(area(a[0])));
}

TEST_CASE("difference can cut a hole") {
    const MultiPolygon diff = poly_difference({square(0, 0, 10)}, {square(4, 4, 2)});
    CHECK(area(diff) == doctest::Approx(96.0));
    REQUIRE(diff.size() == 1);
    CHECK(diff[0].holes.size() == 1);
}

TEST_CASE("union_all merges a chain of rectangles") {
    std::vector<Polygon> parts;
    for (int i = 0; i < 5; ++i) parts.push_back(square(i * 1.5, 0, 2));
    const MultiPolygon u = union_all(parts);
    CHECK(u.size() == 1);
    CHECK(area(u) == doctest::Approx(2.0 * (1.5 * 4 + 2.0)).epsilon(1e-9));
}

TEST_CASE("covers_point respects holes") {
    Polygon p = square(0, 0, 10);
    p.holes.push_back(Ring{Vec2{4, 4}, Vec2{4, 6}, Vec2{6, 6}, Vec2{6, 4}});
    CHECK(covers_point(p, Vec2{1, 1}));
    CHECK_FALSE(covers_point(p, Vec2{5, 5}));
    CHECK_FALSE(covers_point(p, Vec2{11, 1}));
}

TEST_CASE("interior_point lies inside") {
    MultiPolygon mp = {square(3, 7, 2)};
    const Vec2 ip = interior_point(mp);
    CHECK(covers_point(mp, ip));
}

TEST_CASE("bounding boxes unite and expand") {
    Aabb a = bounding_box(square(0, 0, 2));
    Aabb b = bounding_box(square(5, 5, 1));
    Aabb u = a.united(b);
    CHECK(u.min_x == doctest::Approx(0.0));
    CHECK(u.max_x == doctest::Approx(6.0));
    Aabb e = a.expanded(1.0);
    CHECK(e.min_x == doctest::Approx(-1.0));
    CHECK(e.max_y == doctest::Approx(3.0));
    CHECK(e.contains(Vec2{-0.5, -0.5}));
    CHECK(a.intersects(e));
    CHECK_FALSE(a.intersects(Aabb{10, 10, 11, 11}));
}

TEST_CASE("snap collapses sub-grid jitter") {
    Polygon p = square(0, 0, 1);
    p.outer[1].x += kSnapGrid / 4.0;
    MultiPolygon s = snap(MultiPolygon{p});
    CHECK(s[0].outer[1].x == doctest::Approx(1.0).epsilon(1e-12));
}

// Property: union area is monotone and bounded by the sum of part areas.
TEST_CASE("random union area bounds") {
    std::mt19937_64 rng(20260817ULL);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Polygon> parts;
        double sum = 0.0;
        double max_part = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double side = 0.5 + u(rng) / 4.0;
            Polygon p = square(u(rng), u(rng), side);
            sum += area(p);
            max_part = std::max(max_part, area(p));
            parts.push_back(std::move(p));
        }
        const double ua = area(union_all(parts));
        CHECK(ua <= sum + 1e-6);
        CHECK(ua >= max_part - 1e-6);
    }
}

// Property: intersection + difference reconstruct the left operand's area up
// to the kernel's sliver floor (either result may shed sub-sliver rings).
TEST_CASE("random boolean partition conservation") {
    std::mt19937_64 rng(424242ULL);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 60; ++trial) {
        const MultiPolygon a = {square(u(rng), u(rng), 1.0 + u(rng) / 3.0)};
        const MultiPolygon b = {square(u(rng), u(rng), 1.0 + u(rng) / 3.0)};
        const double part = area(poly_intersection(a, b)) + area(poly_difference(a, b));
        CHECK(std::abs(part - area(a)) <= 5.0 * kSliverArea);
    }
}
