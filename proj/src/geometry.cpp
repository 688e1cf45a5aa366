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


#include "poncelet/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "poncelet/errors.hpp"

namespace poncelet {

namespace {

constexpr double kParallelTol = 1e-12;
constexpr double kOnEllipseTol = 1e-9;

// Squared extent of the polygon, used to scale area tolerances.
double extent2(const Polygon& poly) {
    double m = 0.0;
    for (const Point& p : poly) m = std::max({m, std::abs(p.x), std::abs(p.y)});
    return m * m;
}

}  // namespace

Vec normalized(Vec v) {
    const double n = norm(v);
    if (n == 0.0) throw DegenerateError("cannot normalize a zero vector");
    return v / n;
}

Ellipse::Ellipse(double a, double b) : a_(a), b_(b) {
    if (!(b > 0.0) || !(a >= b) || !std::isfinite(a))
        throw DomainError("ellipse requires a >= b > 0");
}

double Ellipse::implicit(Point p) const {
    return (p.x / a_) * (p.x / a_) + (p.y / b_) * (p.y / b_) - 1.0;
}

Line Line::from_uv(double u, double v) {
    const double n = std::hypot(u, v);
    if (n == 0.0) throw DomainError("line u x + v y = 1 needs (u, v) != 0");
    return Line({u / n, v / n}, 1.0 / n);
}

Line Line::through(Point p, Point q) {
    const Vec d = q - p;
    if (norm(d) == 0.0) throw DegenerateError("line through coincident points");
    return point_direction(p, d);
}

Line Line::point_direction(Point p, Vec direction) {
    return point_normal(p, perp(direction));
}

Line Line::point_normal(Point p, Vec normal) {
    const Vec n = normalized(normal);
    return Line(n, dot(n, p));
}

std::pair<double, double> Line::uv() const {
    if (std::abs(offset_) < 1e-300) throw DomainError("line passes through the origin");
    return {normal_.x / offset_, normal_.y / offset_};
}

Point intersect(const Line& l1, const Line& l2) {
    const Vec n1 = l1.normal();
    const Vec n2 = l2.normal();
    const double det = cross(n1, n2);
    if (std::abs(det) < kParallelTol) throw VertexAtInfinity("parallel lines do not meet");
    // Cramer's rule on n1.p = c1, n2.p = c2.
    return {(l1.offset() * n2.y - l2.offset() * n1.y) / det,
            (n1.x * l2.offset() - n2.x * l1.offset()) / det};
}

const Point& Polygon::at_cyclic(long i) const {
    const long n = static_cast<long>(vertices_.size());
    return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

EllipseFrame ellipse_frame(const Ellipse& e, double t) {
    const Point p = e.at(t);
    const Vec n = ellipse_normal(e, p);
    return {p, n, perp(n), tangent_line_at(e, p)};
}

Vec ellipse_normal(const Ellipse& e, Point p) {
    return normalized({p.x / (e.a() * e.a()), p.y / (e.b() * e.b())});
}

Line tangent_line_at(const Ellipse& e, Point p) {
    return Line::from_uv(p.x / (e.a() * e.a()), p.y / (e.b() * e.b()));
}

double curvature(const Ellipse& e, Point p) {
    if (std::abs(e.implicit(p)) > kOnEllipseTol)
        throw DomainError("curvature: point is not on the ellipse");
    const double a2 = e.a() * e.a();
    const double b2 = e.b() * e.b();
    const double g = p.x * p.x / (a2 * a2) + p.y * p.y / (b2 * b2);
    return 1.0 / (a2 * b2 * g * std::sqrt(g));
}

double curvature_focal(const Ellipse& e, Point p) {
    const double d = distance(p, e.focus1()) * distance(p, e.focus2());
    return e.a() * e.b() / (d * std::sqrt(d));
}

double signed_area(const Polygon& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[i + 1]);
    return 0.5 * s;
}

double perimeter(const Polygon& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) s += poly.side_length(i);
    return s;
}

Point area_centroid(const Polygon& poly) {
    const double s = signed_area(poly);
    if (std::abs(s) <= 1e-13 * extent2(poly))
        throw DegenerateError("area centroid of a zero-area polygon");
    Point acc;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[i + 1];
        acc = acc + cross(p, q) * (p + q);
    }
    return acc / (6.0 * s);
}

Point vertex_centroid(const Polygon& poly) {
    Point acc;
    for (const Point& p : poly) acc = acc + p;
    return acc / static_cast<double>(poly.size());
}

std::vector<double> internal_angles(const Polygon& poly) {
    const long n = static_cast<long>(poly.size());
    std::vector<double> out;
    out.reserve(poly.size());
    for (long i = 0; i < n; ++i) {
        const Vec u = poly.at_cyclic(i - 1) - poly.at_cyclic(i);
        const Vec v = poly.at_cyclic(i + 1) - poly.at_cyclic(i);
        if (norm(u) == 0.0 || norm(v) == 0.0)
            throw DegenerateError("internal angle at a zero-length edge");
        out.push_back(std::atan2(std::abs(cross(u, v)), dot(u, v)));
    }
    return out;
}

Point steiner_curvature_centroid(const Polygon& poly) {
    const auto theta = internal_angles(poly);
    double wsum = 0.0;
    Point acc;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double w = std::sin(2.0 * theta[i]);
        wsum += w;
        acc = acc + w * poly[i];
    }
    if (std::abs(wsum) < 1e-10)
        throw DegenerateError("Steiner centroid: sin(2 theta) weights sum to zero");
    return acc / wsum;
}

Point invert_in_circle(Point p, Point center, double radius) {
    const Vec d = p - center;
    const double d2 = dot(d, d);
    if (d2 == 0.0) throw DegenerateError("inversion of the circle centre");
    return center + (radius * radius / d2) * d;
}

Point invert_in_ellipse(Point p, const Ellipse& e) {
    // The chord of contact is the polar line p^T A x = 1; its midpoint lies on
    // the ray O p at p / (p^T A p).
    const double s = e.implicit(p) + 1.0;
    if (s < 1.0 - 1e-12) throw DomainError("ellipse inversion of an interior point");
    if (s <= 1.0) return p;
    return p / s;
}

Point foot_of_perpendicular(Point m, const Line& line) {
    return m - line.signed_distance(m) * line.normal();
}

}  // namespace poncelet
