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
#include "poncelet/derived.hpp"
#include "poncelet/errors.hpp"

using namespace poncelet;
using doctest::Approx;

namespace {

const double s3 = std::sqrt(3.0);
const double s5 = std::sqrt(5.0);

bool near(Point p, Point q, double tol) { return distance(p, q) < tol; }

std::vector<BilliardConfig> grid() {
    std::vector<BilliardConfig> g;
    for (int n = 3; n <= 8; ++n)
        for (double r : {1.25, 1.5, 2.0}) g.push_back({r, 1.0, n, 1});
    return g;
}

const OrbitFamily& rhombus_family() { return *shared_family_cache().get({2, 1, 4}); }
OrbitSample rhombus() { return orbit_at(rhombus_family(), 0.0); }

Polygon random_convex(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> th;
    for (int k = 0; k < n; ++k) th.push_back(2 * oracle::pi * (k + 0.8 * u(rng)) / n);
    std::vector<Point> v;
    for (double t : th) v.push_back({2.0 * std::cos(t) + 0.3, 1.3 * std::sin(t) - 0.2});
    return Polygon(v);
}

// Circle through three points, then the largest radial misfit of the rest.
double concyclic_residual(const std::vector<Point>& pts) {
    const auto c = oracle::circumcenter({pts[0].x, pts[0].y}, {pts[1].x, pts[1].y}, {pts[2].x, pts[2].y});
    const Point cc{c.first, c.second};
    const double r = distance(pts[0], cc);
    double worst = 0.0;
    for (const Point& p : pts) worst = std::max(worst, std::abs(distance(p, cc) - r) / r);
    return worst;
}

}  // namespace

TEST_CASE("anchor roles") {
    for (AnchorRole r : {AnchorRole::O, AnchorRole::f1, AnchorRole::f2, AnchorRole::f1_prime, AnchorRole::f2_prime,
                         AnchorRole::arbitrary, AnchorRole::none})
        CHECK(anchor_role_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(anchor_role_from_string("f3"), DomainError);
    const auto& f = rhombus_family();
    CHECK(near(make_anchor(AnchorRole::f1, f).position, {s3, 0}, 1e-15));
    CHECK(near(make_anchor(AnchorRole::f2, f).position, {-s3, 0}, 1e-15));
    CHECK(make_anchor(AnchorRole::arbitrary, f, {0.1, 0.2}).position == Point{0.1, 0.2});
}

TEST_CASE("outer polygon") {
    const auto s = rhombus();
    const Polygon o = outer_polygon(s, Ellipse(2, 1));
    const Point rect[] = {{2, 1}, {-2, 1}, {-2, -1}, {2, -1}};
    for (int i = 0; i < 4; ++i) CHECK(near(o[i], rect[i], 1e-12));
    CHECK(signed_area(o) == Approx(8.0).epsilon(1e-12));

    for (const auto& cfg : grid()) {
        const auto f = shared_family_cache().get(cfg);
        const auto sample = orbit_at(*f, 0.3);
        const Polygon out = outer_polygon(sample, f->billiard);
        for (std::size_t i = 0; i < out.size(); ++i) {
            // side (P'_{i-1}, P'_i) is the billiard tangent at P_i
            const Line side = Line::through(out.at_cyclic(static_cast<long>(i) - 1), out[i]);
            const Point p = sample.vertices[i];
            CHECK(std::abs(side.signed_distance(p)) < 1e-9);
            CHECK(std::abs(cross(side.normal(), ellipse_normal(f->billiard, p))) < 1e-9);
        }
    }
    // Circular limit: circumscribed regular polygon.
    const auto c = shared_family_cache().get({1.0 + 1e-9, 1, 5});
    const Polygon reg = outer_polygon(orbit_at(*c, 0.0), c->billiard);
    for (const Point& p : reg) CHECK(norm(p) == Approx(1 / std::cos(oracle::pi / 5)).epsilon(1e-6));
}

TEST_CASE("inner polygon") {
    const auto s = rhombus();
    const Polygon in = inner_polygon(s);
    CHECK(signed_area(in) == Approx(1.28).epsilon(1e-12));
    CHECK(signed_area(outer_polygon(s, Ellipse(2, 1))) / signed_area(in) == Approx(6.25).epsilon(1e-12));
}

TEST_CASE("pedal polygon") {
    const auto s = rhombus();
    const Polygon ped = pedal_polygon(s.vertices, {s3, 0});
    double prod = 1.0;
    for (const Point& q : ped) {
        CHECK(norm(q) == Approx(4 / s5).epsilon(1e-12));
        prod *= distance(q, {s3, 0});
    }
    CHECK(prod == Approx(1.0 / 25).epsilon(1e-12));

    const Polygon square{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    const Polygon sq = pedal_polygon(square, {0, 0});
    const Point feet[] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};
    for (int i = 0; i < 4; ++i) CHECK(near(sq[i], feet[i], 1e-15));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Polygon p = random_convex(rng, 6);
        const Point m{0.2 * trial - 1.0, 0.1};
        const Polygon q = pedal_polygon(p, m);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto o = oracle::foot({m.x, m.y}, {p[i].x, p[i].y}, {p[i + 1].x, p[i + 1].y});
            CHECK(near(q[i], {o.first, o.second}, 1e-12));
        }
    }
}

TEST_CASE("antipedal polygon") {
    const auto s = rhombus();
    const Polygon ant = antipedal_polygon(s.vertices, {0, 0});
    const Polygon out = outer_polygon(s, Ellipse(2, 1));
    for (std::size_t i = 0; i < 4; ++i) {
        bool found = false;
        for (const Point& p : out) found = found || near(ant[i], p, 1e-12);
        CHECK(found);
    }
    const Polygon square{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    const Polygon sq = antipedal_polygon(square, {0, 0});
    const Point expect[] = {{2, 0}, {0, 2}, {-2, 0}, {0, -2}};
    for (int i = 0; i < 4; ++i) CHECK(near(sq[i], expect[i], 1e-15));

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const Polygon p = random_convex(rng, 3 + trial % 6);
        const Point m{0.01 * trial, -0.02 * trial};
        const Polygon back = pedal_polygon(antipedal_polygon(p, m), m);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(near(back[i], p[i], 1e-9));
    }

    const Polygon degenerate{{{1, 0}, {-1, 0}, {0, 1}}};  // rays at (1,0), (-1,0) are parallel
    CHECK_THROWS_AS(antipedal_polygon(degenerate, {0, 0}), VertexAtInfinity);
}

TEST_CASE("evolute polygon") {
    const Polygon ev = evolute_polygon(rhombus().vertices);
    CHECK(std::abs(signed_area(ev)) == Approx(2.25).epsilon(1e-12));
    const Point expect[] = {{0, -1.5}, {0.75, 0}, {0, 1.5}, {-0.75, 0}};
    for (const Point& e : expect) {
        bool found = false;
        for (const Point& p : ev) found = found || near(p, e, 1e-12);
        CHECK(found);
    }
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Polygon tri = random_convex(rng, 3);
        const Polygon e = evolute_polygon(tri);
        CHECK(std::abs(signed_area(e)) < 1e-12);
        const auto cc = oracle::circumcenter({tri[0].x, tri[0].y}, {tri[1].x, tri[1].y}, {tri[2].x, tri[2].y});
        for (const Point& p : e) CHECK(near(p, {cc.first, cc.second}, 1e-10));
    }
    const Polygon rect{{{2, 1}, {-2, 1}, {-2, -1}, {2, -1}}};
    CHECK(std::abs(signed_area(evolute_polygon(rect))) < 1e-15);
}

TEST_CASE("inversive polygon") {
    const auto s = rhombus();
    const Polygon inv = inversive_polygon(s.vertices, {s3, 0});
    const Point kite[] = {{2 + 2 * s3, 0}, {3 * s3 / 4, 0.25}, {2 * s3 - 2, 0}, {3 * s3 / 4, -0.25}};
    for (int i = 0; i < 4; ++i) CHECK(near(inv[i], kite[i], 1e-12));
    CHECK(signed_area(inv) == Approx(1.0).epsilon(1e-12));
    CHECK(signed_area(s.vertices) * signed_area(inv) == Approx(4.0).epsilon(1e-12));
    const Polygon twice = inversive_polygon(inv, {s3, 0});
    for (int i = 0; i < 4; ++i) CHECK(near(twice[i], s.vertices[i], 1e-12));
}

TEST_CASE("polar polygon") {
    for (const auto& cfg : grid()) {
        const auto f = shared_family_cache().get(cfg);
        const Point f1 = f->billiard.focus1();
        std::vector<Point> vertices;
        for (int k = 0; k < 16; ++k) {
            const auto sample = orbit_at(*f, 0.05 + 2 * oracle::pi * k / 16);
            const Polygon pol = polar_polygon(sample, f1);
            const Polygon by_def = antipedal_polygon(inversive_polygon(sample.vertices, f1), f1);
            for (std::size_t i = 0; i < pol.size(); ++i) CHECK(pol[i] == by_def[i]);
            vertices.insert(vertices.end(), pol.begin(), pol.end());

            // Its sides all touch one circle, centred at polar_center.
            const Point op = polar_center(f->billiard, f1);
            const double r0 = std::abs(pol.side_line(0).signed_distance(op));
            for (std::size_t i = 0; i < pol.size(); ++i)
                CHECK(std::abs(pol.side_line(i).signed_distance(op)) == Approx(r0).epsilon(1e-9));
        }
        CHECK(concyclic_residual(vertices) < 1e-7);
    }
    const auto s = rhombus();
    double sum = 0.0;
    for (double psi : internal_angles(polar_polygon(s, {s3, 0}))) sum += std::cos(psi);
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("dual polygon") {
    for (const auto& cfg : grid()) {
        const auto f = shared_family_cache().get(cfg);
        for (const Point focus : {f->billiard.focus1(), f->billiard.focus2()}) {
            const auto sample = orbit_at(*f, 0.7);
            const Polygon pol = polar_polygon(sample, focus);
            const Polygon dual = dual_polygon(sample, f->billiard, focus);
            const Polygon by_def = inversive_polygon(pol, polar_center(f->billiard, focus));
            for (std::size_t i = 0; i < dual.size(); ++i) {
                CHECK(dual[i] == by_def[i]);
                CHECK(std::isfinite(dual.side_length(i)));
            }
            // Inverting the focal pedal about the focus only reproduces the
            // polar, shifted by one vertex.
            const Polygon pedal_inverse = inversive_polygon(pedal_polygon(sample.vertices, focus), focus);
            for (std::size_t i = 0; i < pol.size(); ++i) CHECK(near(pedal_inverse[i], pol[i + 1], 1e-9 * norm(pol[i + 1])));
        }
    }
}

TEST_CASE("ellipse inverse polygon") {
    const auto s = rhombus();
    const Ellipse e(2, 1);
    const Polygon mid = ellipse_inverse_polygon(outer_polygon(s, e), e);
    const Point expect[] = {{1, 0.5}, {-1, 0.5}, {-1, -0.5}, {1, -0.5}};
    for (int i = 0; i < 4; ++i) CHECK(near(mid[i], expect[i], 1e-12));

    const auto& fam = rhombus_family();
    const Polygon inner_mid = ellipse_inverse_polygon(s.vertices, fam.caustic);
    const Point expect_inner[] = {{1.6, 0}, {0, 0.2}, {-1.6, 0}, {0, -0.2}};
    for (int i = 0; i < 4; ++i) CHECK(near(inner_mid[i], expect_inner[i], 1e-12));

    for (const auto& cfg : grid()) {
        const auto f = shared_family_cache().get(cfg);
        const auto sample = orbit_at(*f, 1.1);
        const Polygon a = ellipse_inverse_polygon(outer_polygon(sample, f->billiard), f->billiard);
        const Polygon b = ellipse_inverse_polygon(sample.vertices, f->caustic);
        const Polygon in = inner_polygon(sample);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(near(a[i], 0.5 * (sample.vertices[i] + sample.vertices[i + 1]), 1e-9));
            CHECK(near(b[i], 0.5 * (in.at_cyclic(static_cast<long>(i) - 1) + in[i]), 1e-9));
        }
    }
}

TEST_CASE("focal pedal circles") {
    for (const auto& cfg : grid()) {
        const auto f = shared_family_cache().get(cfg);
        for (int k = 0; k < 8; ++k) {
            const auto sample = orbit_at(*f, 0.2 + k);
            for (const Point focus : {f->billiard.focus1(), f->billiard.focus2()}) {
                for (const Point& q : pedal_polygon(sample.vertices, focus))
                    CHECK(std::abs(norm(q) - f->caustic.a()) < 1e-9);
                for (const Point& q : pedal_polygon(outer_polygon(sample, f->billiard), focus))
                    CHECK(std::abs(norm(q) - cfg.a) < 1e-9);
            }
        }
    }
}

TEST_CASE("outer vertex locus") {
    for (const auto& cfg : grid()) {
        const LocusFit fit = fit_outer_locus(*shared_family_cache().get(cfg));
        CHECK(fit.residual < 1e-7);
        // foci sit on the major axis of the fit, symmetric about O
        CHECK(fit.focus1 == -fit.focus2);
        if (fit.alpha >= fit.beta)
            CHECK(fit.focus1.y == 0.0);
        else
            CHECK(fit.focus1.x == 0.0);
    }
    const LocusFit rh = fit_outer_locus(rhombus_family());
    CHECK(4.0 / (rh.alpha * rh.alpha) + 1.0 / (rh.beta * rh.beta) == Approx(1.0).epsilon(1e-9));
    const LocusFit round = fit_outer_locus(*shared_family_cache().get({1.0 + 1e-9, 1, 5}));
    CHECK(round.alpha == Approx(round.beta).epsilon(1e-6));
}
