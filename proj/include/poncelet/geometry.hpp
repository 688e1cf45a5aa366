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


#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace poncelet {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
    friend constexpr Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
    friend constexpr Point operator-(Point p) { return {-p.x, -p.y}; }
    friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend constexpr Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
    friend constexpr Point operator/(Point p, double s) { return {p.x / s, p.y / s}; }
    friend constexpr bool operator==(Point, Point) = default;
};

/// Vectors share the point representation.
using Vec = Point;

constexpr double dot(Vec u, Vec v) { return u.x * v.x + u.y * v.y; }
constexpr double cross(Vec u, Vec v) { return u.x * v.y - u.y * v.x; }
/// Counterclockwise quarter turn.
constexpr Vec perp(Vec v) { return {-v.y, v.x}; }
inline double norm(Vec v) { return std::hypot(v.x, v.y); }
inline double distance(Point p, Point q) { return norm(p - q); }
Vec normalized(Vec v);

/// Axis-aligned, origin-centred ellipse x^2/a^2 + y^2/b^2 = 1 with a >= b > 0.
class Ellipse {
public:
    Ellipse(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }
    /// Half focal distance sqrt(a^2 - b^2).
    double c() const { return std::sqrt((a_ - b_) * (a_ + b_)); }
    /// f1 = (+c, 0), f2 = (-c, 0).
    Point focus1() const { return {c(), 0.0}; }
    Point focus2() const { return {-c(), 0.0}; }

    Point at(double t) const { return {a_ * std::cos(t), b_ * std::sin(t)}; }
    /// x^2/a^2 + y^2/b^2 - 1.
    double implicit(Point p) const;
    /// Eccentric angle of a point on (or near) the ellipse, in (-pi, pi].
    double eccentric_angle(Point p) const { return std::atan2(p.y / b_, p.x / a_); }

private:
    double a_;
    double b_;
};

/// Line n.p = offset with |n| = 1. Lines through the origin have offset 0, so
/// this form covers the u x + v y = 1 form and its origin-line gap.
class Line {
public:
    static Line from_uv(double u, double v);
    static Line through(Point p, Point q);
    static Line point_direction(Point p, Vec direction);
    static Line point_normal(Point p, Vec normal);

    Vec normal() const { return normal_; }
    double offset() const { return offset_; }
    Vec direction() const { return perp(normal_); }
    /// Signed distance of p from the line along the normal.
    double signed_distance(Point p) const { return dot(normal_, p) - offset_; }
    /// Coefficients (u, v) of u x + v y = 1. Throws DomainError for origin lines.
    std::pair<double, double> uv() const;

private:
    Line(Vec normal, double offset) : normal_(normal), offset_(offset) {}
    Vec normal_;
    double offset_;
};

/// Throws VertexAtInfinity if the lines are parallel.
Point intersect(const Line& l1, const Line& l2);

/// Closed polygon, vertex i followed cyclically by vertex (i + 1) mod N.
/// Self-intersecting vertex sequences are allowed.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}

    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i % vertices_.size()]; }
    /// Vertex with cyclic (possibly negative) index.
    const Point& at_cyclic(long i) const;
    std::span<const Point> vertices() const { return vertices_; }
    auto begin() const { return vertices_.begin(); }
    auto end() const { return vertices_.end(); }

    /// Line through vertices i and i+1.
    Line side_line(std::size_t i) const { return Line::through((*this)[i], (*this)[i + 1]); }
    double side_length(std::size_t i) const { return distance((*this)[i], (*this)[i + 1]); }

private:
    std::vector<Point> vertices_;
};

struct EllipseFrame {
    Point point;
    Vec unit_normal;   // outward
    Vec unit_tangent;  // direction of increasing t
    Line tangent_line;
};

EllipseFrame ellipse_frame(const Ellipse& e, double t);
/// Outward unit normal at a point of the ellipse.
Vec ellipse_normal(const Ellipse& e, Point p);
Line tangent_line_at(const Ellipse& e, Point p);

/// Curvature from the gradient form. Throws DomainError when p is not on e
/// (relative implicit residual above 1e-9).
double curvature(const Ellipse& e, Point p);
/// Curvature from the focal-distance form a b (d1 d2)^(-3/2).
double curvature_focal(const Ellipse& e, Point p);

double signed_area(const Polygon& poly);
double perimeter(const Polygon& poly);
/// Throws DegenerateError when |signed area| is negligible.
Point area_centroid(const Polygon& poly);
Point vertex_centroid(const Polygon& poly);
/// Unsigned angle at each vertex between its two incident edges, in [0, pi].
/// Throws DegenerateError on a zero-length edge.
std::vector<double> internal_angles(const Polygon& poly);
/// sin(2 theta)-weighted vertex average. Throws DegenerateError when the
/// weights sum to zero (e.g. rectangles).
Point steiner_curvature_centroid(const Polygon& poly);

/// Throws DegenerateError when p == center.
Point invert_in_circle(Point p, Point center, double radius = 1.0);
/// Midpoint of the chord of contact from an exterior point. Points on the
/// ellipse map to themselves; interior points throw DomainError.
Point invert_in_ellipse(Point p, const Ellipse& e);
Point foot_of_perpendicular(Point m, const Line& line);

}  // namespace poncelet
