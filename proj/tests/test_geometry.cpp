// Copyright 2026 The poncelet-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "poncelet/errors.hpp"
#include "poncelet/geometry.hpp"

using namespace poncelet;
using doctest::Approx;

namespace {

oracle::P op(Point p) { return {p.x, p.y}; }
std::vector<oracle::P> ops(const Polygon& poly) {
    std::vector<oracle::P> out;
    for (const Point& p : poly) out.push_back(op(p));
    return out;
}
bool near(Point p, Point q, double tol) { return distance(p, q) < tol; }

const Polygon unit_square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
const Polygon rhombus{{{2, 0}, {0, 1}, {-2, 0}, {0, -1}}};

}  // namespace

TEST_CASE("ellipse frame") {
    const auto circle = ellipse_frame(Ellipse(1, 1), 0.0);
    CHECK(near(circle.point, {1, 0}, 1e-15));
    CHECK(near(circle.unit_normal, {1, 0}, 1e-15));

    const auto top = ellipse_frame(Ellipse(2, 1), oracle::pi / 2);
    CHECK(near(top.point, {0, 1}, 1e-15));
    CHECK(top.tangent_line.signed_distance({0.7, 1.0}) == Approx(0.0).epsilon(1e-15));
    CHECK(top.tangent_line.signed_distance({-3.0, 1.0}) == Approx(0.0).epsilon(1e-15));

    const auto mid = ellipse_frame(Ellipse(2, 1), oracle::pi / 4);
    CHECK(near(mid.point, {std::sqrt(2.0), std::sqrt(2.0) / 2}, 1e-15));
    const Vec g = normalized({std::sqrt(2.0) / 4, std::sqrt(2.0) / 2});
    CHECK(near(mid.unit_normal, g, 1e-15));
    CHECK(dot(mid.unit_normal, mid.unit_tangent) == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("ellipse foci") {
    const Ellipse e(2, 1);
    CHECK(e.c() == Approx(std::sqrt(3.0)));
    CHECK(near(e.focus1(), {std::sqrt(3.0), 0}, 1e-15));
    CHECK(near(e.focus2(), {-std::sqrt(3.0), 0}, 1e-15));
    CHECK_THROWS_AS(Ellipse(1, 2), DomainError);
    CHECK_THROWS_AS(Ellipse(1, 0), DomainError);
}

TEST_CASE("lines") {
    const Line l = Line::from_uv(0.5, 1.0);  // x/2 + y = 1
    CHECK(l.signed_distance({2, 0}) == Approx(0.0).epsilon(1e-15));
    CHECK(l.signed_distance({0, 1}) == Approx(0.0).epsilon(1e-15));
    const auto [u, v] = l.uv();
    CHECK(u == Approx(0.5));
    CHECK(v == Approx(1.0));

    const Line origin = Line::through({-1, -1}, {1, 1});
    CHECK(origin.offset() == Approx(0.0));
    CHECK_THROWS_AS(origin.uv(), DomainError);

    CHECK(near(intersect(Line::through({0, 0}, {1, 0}), Line::through({3, -1}, {3, 4})), {3, 0}, 1e-15));
    CHECK_THROWS_AS(intersect(Line::through({0, 0}, {1, 0}), Line::through({0, 1}, {1, 1})), VertexAtInfinity);
}

TEST_CASE("curvature") {
    CHECK(curvature(Ellipse(1, 1), {std::cos(0.3), std::sin(0.3)}) == Approx(1.0).epsilon(1e-14));
    CHECK(curvature(Ellipse(2, 1), {2, 0}) == Approx(2.0).epsilon(1e-14));
    CHECK(curvature(Ellipse(2, 1), {0, 1}) == Approx(0.25).epsilon(1e-14));
    CHECK(curvature_focal(Ellipse(2, 1), {0, 1}) == Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(curvature(Ellipse(2, 1), {1, 1}), DomainError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ta(0.0, 2.0 * oracle::pi), ra(1.05, 4.0);
    double worst_forms = 0.0, worst_param = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double b = 1.0, a = ra(rng), t = ta(rng);
        const Ellipse e(a, b);
        const double g = curvature(e, e.at(t));
        worst_forms = std::max(worst_forms, std::abs(g - curvature_focal(e, e.at(t))) / g);
        worst_param = std::max(worst_param, std::abs(g - oracle::curvature_param(a, b, t)) / g);
    }
    CHECK(worst_forms < 1e-12);
    CHECK(worst_param < 1e-12);
}

TEST_CASE("signed area") {
    CHECK(signed_area(unit_square) == Approx(1.0));
    const Polygon cw{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
    CHECK(signed_area(cw) == Approx(-1.0));
    const Polygon bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
    CHECK(signed_area(bowtie) == Approx(0.0).epsilon(1e-15));
    CHECK(signed_area(rhombus) == Approx(4.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> v;
        for (int k = 0; k < 7; ++k) v.push_back({u(rng), u(rng)});
        const Polygon p(v);
        const double s = signed_area(p);
        CHECK(s == Approx(oracle::trapezoid_area(ops(p))).epsilon(1e-12));

        std::vector<Point> rev(v.rbegin(), v.rend());
        CHECK(signed_area(Polygon(rev)) == Approx(-s).epsilon(1e-12));

        const double th = u(rng);
        const Point d{u(rng), u(rng)};
        std::vector<Point> moved, scaled;
        for (const Point& q : v) {
            moved.push_back(Point{std::cos(th) * q.x - std::sin(th) * q.y, std::sin(th) * q.x + std::cos(th) * q.y} + d);
            scaled.push_back(3.0 * q);
        }
        CHECK(signed_area(Polygon(moved)) == Approx(s).epsilon(1e-10));
        CHECK(signed_area(Polygon(scaled)) == Approx(9.0 * s).epsilon(1e-12));
    }
}

TEST_CASE("centroids") {
    const Polygon square{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    CHECK(near(area_centroid(square), {0, 0}, 1e-15));
    CHECK(near(vertex_centroid(square), {0, 0}, 1e-15));
    const Polygon tri{{{0, 0}, {3, 0}, {0, 3}}};
    CHECK(near(area_centroid(tri), {1, 1}, 1e-15));
    CHECK(near(vertex_centroid(tri), {1, 1}, 1e-15));
    const Polygon same{{{2, 5}, {2, 5}, {2, 5}}};
    CHECK(near(vertex_centroid(same), {2, 5}, 1e-15));
    CHECK_THROWS_AS(area_centroid(same), DegenerateError);

    const Polygon irregular{{{0, 0}, {4, -1}, {5, 3}, {1, 4}, {-1, 2}}};
    const Point d{3.25, -7.5};
    std::vector<Point> moved;
    for (const Point& p : irregular) moved.push_back(p + d);
    CHECK(near(area_centroid(Polygon(moved)), area_centroid(irregular) + d, 1e-12));
    CHECK(near(vertex_centroid(Polygon(moved)), vertex_centroid(irregular) + d, 1e-12));
}

TEST_CASE("internal angles") {
    for (double t : internal_angles(unit_square)) CHECK(t == Approx(oracle::pi / 2));
    const Polygon eq{{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}};
    for (double t : internal_angles(eq)) CHECK(t == Approx(oracle::pi / 3));
    const auto r = internal_angles(rhombus);
    CHECK(std::cos(r[0]) == Approx(0.6));
    CHECK(std::cos(r[1]) == Approx(-0.6));
    CHECK(std::cos(r[2]) == Approx(0.6));
    CHECK(std::cos(r[3]) == Approx(-0.6));

    const Polygon odd{{{0, 0}, {4, -1}, {5, 3}, {1, 4}, {-1, 2}}};
    const auto th = internal_angles(odd);
    const auto v = ops(odd);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(th[i] == Approx(oracle::angle_at(v[(i + 4) % 5], v[i], v[(i + 1) % 5])).epsilon(1e-12));
    CHECK_THROWS_AS(internal_angles(Polygon{{{0, 0}, {0, 0}, {1, 1}}}), DegenerateError);
}

TEST_CASE("steiner curvature centroid") {
    const Point c{0.3, -1.2};
    const Polygon eq{{c + Point{1, 0}, c + Point{-0.5, std::sqrt(3.0) / 2}, c + Point{-0.5, -std::sqrt(3.0) / 2}}};
    CHECK(near(steiner_curvature_centroid(eq), c, 1e-12));
    const Polygon right{{{0, 0}, {1, 0}, {0, 1}}};
    CHECK(near(steiner_curvature_centroid(right), {0.5, 0.5}, 1e-12));
    CHECK_THROWS_AS(steiner_curvature_centroid(unit_square), DegenerateError);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        const Polygon t{{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}}};
        if (std::abs(signed_area(t)) < 0.1) continue;
        const auto cc = oracle::circumcenter(op(t[0]), op(t[1]), op(t[2]));
        CHECK(near(steiner_curvature_centroid(t), {cc.first, cc.second}, 1e-10 * (1 + std::hypot(cc.first, cc.second))));
    }
}

TEST_CASE("circle inversion") {
    CHECK(near(invert_in_circle({2, 0}, {0, 0}), {0.5, 0}, 1e-15));
    CHECK(near(invert_in_circle({2, 0}, {std::sqrt(3.0), 0}), {2 + 2 * std::sqrt(3.0), 0}, 1e-12));
    CHECK_THROWS_AS(invert_in_circle({1, 1}, {1, 1}), DegenerateError);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lg(-3.0, 3.0), ang(0.0, 2 * oracle::pi);
    double worst = 0.0, worst_oracle = 0.0;
    const Point c{0.4, -0.7};
    for (int k = 0; k < 2000; ++k) {
        const double r = std::pow(10.0, lg(rng)), th = ang(rng);
        const Point p = c + r * Point{std::cos(th), std::sin(th)};
        const Point q = invert_in_circle(p, c);
        worst = std::max(worst, distance(p, invert_in_circle(q, c)) / std::max(1.0, r));
        const auto o = oracle::invert(op(p), op(c));
        worst_oracle = std::max(worst_oracle, distance(q, {o.first, o.second}) / std::max(1.0, norm(q - c)));
    }
    CHECK(worst < 1e-12);
    CHECK(worst_oracle < 1e-12);
}

TEST_CASE("ellipse inversion") {
    const Ellipse e(2, 1);
    CHECK(near(invert_in_ellipse({4, 0}, e), {1, 0}, 1e-15));
    CHECK(near(invert_in_ellipse({0, 3}, e), {0, 1.0 / 3}, 1e-15));
    CHECK(near(invert_in_ellipse(e.at(0.8), e), e.at(0.8), 1e-12));
    CHECK_THROWS_AS(invert_in_ellipse({0.5, 0.2}, e), DomainError);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int k = 0; k < 200; ++k) {
        const Point p{u(rng), u(rng)};
        if (e.implicit(p) < 0.05) continue;
        const auto o = oracle::ellipse_inverse(op(p), 2, 1);
        CHECK(near(invert_in_ellipse(p, e), {o.first, o.second}, 1e-12));
    }
}

TEST_CASE("foot of perpendicular") {
    CHECK(near(foot_of_perpendicular({0, 0}, Line::through({2, -1}, {2, 5})), {2, 0}, 1e-15));
    CHECK(near(foot_of_perpendicular({1, 0.5}, Line::through({2, 0}, {0, 1})), {1, 0.5}, 1e-15));
    const double s3 = std::sqrt(3.0);
    CHECK(near(foot_of_perpendicular({s3, 0}, Line::through({2, 0}, {0, 1})),
               {(4 * s3 + 2) / 5, (4 - 2 * s3) / 5}, 1e-15));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 500; ++k) {
        const Point m{u(rng), u(rng)}, p{u(rng), u(rng)}, q{u(rng), u(rng)};
        if (distance(p, q) < 1e-3) continue;
        const Line l = Line::through(p, q);
        const Point f = foot_of_perpendicular(m, l);
        CHECK(std::abs(l.signed_distance(f)) < 1e-12);
        CHECK(std::abs(dot(f - m, l.direction())) < 1e-12);
        const auto o = oracle::foot(op(m), op(p), op(q));
        CHECK(near(f, {o.first, o.second}, 1e-11));
    }
}

TEST_CASE("polygon indexing") {
    CHECK(rhombus[4] == rhombus[0]);
    CHECK(rhombus.at_cyclic(-1) == rhombus[3]);
    CHECK(perimeter(rhombus) == Approx(4 * std::sqrt(5.0)));
    CHECK(rhombus.side_length(3) == Approx(std::sqrt(5.0)));
}
