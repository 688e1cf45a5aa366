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


#include "poncelet/derived.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>

#include "poncelet/errors.hpp"

namespace poncelet {

std::string to_string(AnchorRole role) {
    switch (role) {
        case AnchorRole::O: return "O";
        case AnchorRole::f1: return "f1";
        case AnchorRole::f2: return "f2";
        case AnchorRole::f1_prime: return "f1'";
        case AnchorRole::f2_prime: return "f2'";
        case AnchorRole::arbitrary: return "M";
        case AnchorRole::none: return "-";
    }
    return "?";
}

AnchorRole anchor_role_from_string(const std::string& name) {
    for (AnchorRole r : {AnchorRole::O, AnchorRole::f1, AnchorRole::f2, AnchorRole::f1_prime,
                         AnchorRole::f2_prime, AnchorRole::arbitrary, AnchorRole::none})
        if (to_string(r) == name) return r;
    if (name == "f1p") return AnchorRole::f1_prime;
    if (name == "f2p") return AnchorRole::f2_prime;
    if (name == "none") return AnchorRole::none;
    throw DomainError("unknown anchor role '" + name + "'");
}

AnchorPoint make_anchor(AnchorRole role, const OrbitFamily& family, Point position) {
    switch (role) {
        case AnchorRole::O: return {role, {0.0, 0.0}};
        case AnchorRole::f1: return {role, family.billiard.focus1()};
        case AnchorRole::f2: return {role, family.billiard.focus2()};
        case AnchorRole::f1_prime: return {role, outer_locus_foci(family).first};
        case AnchorRole::f2_prime: return {role, outer_locus_foci(family).second};
        case AnchorRole::arbitrary: return {role, position};
        case AnchorRole::none: return {role, {0.0, 0.0}};
    }
    return {role, position};
}

Polygon outer_polygon(const OrbitSample& sample, const Ellipse& billiard) {
    const Polygon& p = sample.vertices;
    std::vector<Point> out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out.push_back(intersect(tangent_line_at(billiard, p[i]), tangent_line_at(billiard, p[i + 1])));
    return Polygon(std::move(out));
}

Polygon inner_polygon(const OrbitSample& sample) { return sample.tangency_points; }

Polygon pedal_polygon(const Polygon& poly, Point m) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
        out.push_back(foot_of_perpendicular(m, poly.side_line(i)));
    return Polygon(std::move(out));
}

Polygon antipedal_polygon(const Polygon& poly, Point m) {
    const long n = static_cast<long>(poly.size());
    std::vector<Line> rays;
    rays.reserve(poly.size());
    for (const Point& p : poly) {
        if (p == m) throw DegenerateError("antipedal: vertex coincides with the anchor");
        rays.push_back(Line::point_normal(p, p - m));
    }
    std::vector<Point> out;
    out.reserve(poly.size());
    for (long i = 0; i < n; ++i)
        out.push_back(intersect(rays[static_cast<std::size_t>((i + n - 1) % n)], rays[static_cast<std::size_t>(i)]));
    return Polygon(std::move(out));
}

Polygon evolute_polygon(const Polygon& poly) {
    std::vector<Line> bisectors;
    bisectors.reserve(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point p = poly[i];
        const Point q = poly[i + 1];
        if (p == q) throw DegenerateError("evolute: zero-length side");
        bisectors.push_back(Line::point_normal(0.5 * (p + q), q - p));
    }
    std::vector<Point> out;
    out.reserve(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
        out.push_back(intersect(bisectors[i], bisectors[(i + 1) % poly.size()]));
    return Polygon(std::move(out));
}

Polygon inversive_polygon(const Polygon& poly, Point center, double radius) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (const Point& p : poly) out.push_back(invert_in_circle(p, center, radius));
    return Polygon(std::move(out));
}

Polygon polar_polygon(const OrbitSample& sample, Point focus, double radius) {
    return antipedal_polygon(inversive_polygon(sample.vertices, focus, radius), focus);
}

Point polar_center(const Ellipse& billiard, Point focus, double radius) {
    const double b2 = billiard.b() * billiard.b();
    return focus + focus * (radius * radius / b2);
}

// Inverting the polar about its own focus would only return the pedal; the
// useful partner is the inversion about the center of the polar's caustic.
Polygon dual_polygon(const OrbitSample& sample, const Ellipse& billiard, Point focus, double radius) {
    return inversive_polygon(polar_polygon(sample, focus, radius), polar_center(billiard, focus, radius), radius);
}

Polygon ellipse_inverse_polygon(const Polygon& poly, const Ellipse& e) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (const Point& p : poly) out.push_back(invert_in_ellipse(p, e));
    return Polygon(std::move(out));
}

LocusFit fit_outer_locus(const OrbitFamily& family, int samples) {
    std::vector<Point> pts;
    for (int k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        const Polygon outer = outer_polygon(orbit_at(family, t), family.billiard);
        pts.insert(pts.end(), outer.begin(), outer.end());
    }
    // Smallest right singular vector of rows (x^2, y^2, 1), with columns
    // scaled to unit magnitude for conditioning.
    const double s = family.billiard.a();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), 3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i].x / s;
        const double y = pts[i].y / s;
        m.row(static_cast<Eigen::Index>(i)) << x * x, y * y, 1.0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const Eigen::Vector3d c = svd.matrixV().col(2);
    const double inv_a2 = -c(0) / c(2);
    const double inv_b2 = -c(1) / c(2);
    if (!(inv_a2 > 0.0 && inv_b2 > 0.0)) throw DegenerateError("outer-vertex locus is not an ellipse");

    LocusFit fit;
    fit.alpha = s / std::sqrt(inv_a2);
    fit.beta = s / std::sqrt(inv_b2);
    for (const Point& p : pts) {
        const double r = (p.x / fit.alpha) * (p.x / fit.alpha) + (p.y / fit.beta) * (p.y / fit.beta) - 1.0;
        fit.residual = std::max(fit.residual, std::abs(r));
    }
    if (fit.residual > 1e-6) throw DegenerateError("outer-vertex locus is not elliptic");
    const double df = std::sqrt(std::abs(fit.alpha * fit.alpha - fit.beta * fit.beta));
    if (fit.alpha >= fit.beta) {
        fit.focus1 = {df, 0.0};
        fit.focus2 = {-df, 0.0};
    } else {
        fit.focus1 = {0.0, df};
        fit.focus2 = {0.0, -df};
    }
    return fit;
}

std::pair<Point, Point> outer_locus_foci(const OrbitFamily& family) {
    const LocusFit fit = fit_outer_locus(family);
    return {fit.focus1, fit.focus2};
}

}  // namespace poncelet
