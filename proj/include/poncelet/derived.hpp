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

#include <optional>
#include <string>
#include <utility>

#include "poncelet/geometry.hpp"
#include "poncelet/orbit.hpp"

namespace poncelet {

enum class AnchorRole { O, f1, f2, f1_prime, f2_prime, arbitrary, none };

struct AnchorPoint {
    AnchorRole role = AnchorRole::none;
    Point position;
};

std::string to_string(AnchorRole role);
/// Inverse of to_string; throws DomainError on an unknown name.
AnchorRole anchor_role_from_string(const std::string& name);

/// Anchor for a named role. The primed foci need the outer-vertex locus, which
/// is fitted on demand. Arbitrary anchors take their position explicitly.
AnchorPoint make_anchor(AnchorRole role, const OrbitFamily& family, Point position = {});

// Every construction below keeps the vertex ordering of its source polygon.

/// P'_i = intersection of the billiard tangents at P_i and P_{i+1}.
Polygon outer_polygon(const OrbitSample& sample, const Ellipse& billiard);
Polygon inner_polygon(const OrbitSample& sample);
/// Vertex i is the foot from m onto the line of side (W_i, W_{i+1}).
Polygon pedal_polygon(const Polygon& poly, Point m);
/// Vertex i is the meeting point of the lines through W_{i-1} and W_i
/// perpendicular to W_{i-1} - m and W_i - m, so that pedal(antipedal(W)) = W.
Polygon antipedal_polygon(const Polygon& poly, Point m);
/// Vertex i is the meeting point of the perpendicular bisectors of sides i, i+1.
Polygon evolute_polygon(const Polygon& poly);
Polygon inversive_polygon(const Polygon& poly, Point center, double radius = 1.0);
/// Antipedal of the inversive polygon of the orbit, both with respect to focus.
Polygon polar_polygon(const OrbitSample& sample, Point focus, double radius = 1.0);
/// Center of the circle the polar's sides envelope: the inverse of the
/// billiard's auxiliary circle about focus, i.e. focus * (1 + radius^2 / b^2).
Point polar_center(const Ellipse& billiard, Point focus, double radius = 1.0);
/// Polar polygon inverted about polar_center.
Polygon dual_polygon(const OrbitSample& sample, const Ellipse& billiard, Point focus, double radius = 1.0);
Polygon ellipse_inverse_polygon(const Polygon& poly, const Ellipse& e);

struct LocusFit {
    double alpha = 0.0;  // x semi-axis
    double beta = 0.0;   // y semi-axis
    Point focus1;        // on the major axis of the fitted ellipse, positive side
    Point focus2;
    double residual = 0.0;  // max |x^2/alpha^2 + y^2/beta^2 - 1| over the samples
};

/// Total-least-squares fit of x^2/alpha^2 + y^2/beta^2 = 1 to the outer-polygon
/// vertices over `samples` evenly spaced family members. Throws DegenerateError
/// when the residual exceeds 1e-6.
LocusFit fit_outer_locus(const OrbitFamily& family, int samples = 32);
std::pair<Point, Point> outer_locus_foci(const OrbitFamily& family);

}  // namespace poncelet
