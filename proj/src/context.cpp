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


#include <cmath>

#include "poncelet/catalog.hpp"
#include "poncelet/errors.hpp"

namespace poncelet {

namespace {

const char* source_name(EvaluationContext::Source s) {
    switch (s) {
        case EvaluationContext::Source::orbit: return "P";
        case EvaluationContext::Source::outer: return "P'";
        case EvaluationContext::Source::inner: return "P''";
    }
    return "?";
}

}  // namespace

double safe_ratio(double num, double den, double scale) {
    if (den == 0.0 || std::abs(den) <= 1e-11 * std::max(std::abs(num), scale))
        throw DegenerateError("ratio with a vanishing denominator");
    return num / den;
}

FamilyConstants FamilyConstants::of(const OrbitFamily& f) {
    return {f.billiard.a(), f.billiard.b(), f.caustic.a(), f.caustic.b(),
            f.config.n, f.perimeter, f.joachimsthal};
}

EvaluationContext::EvaluationContext(const OrbitFamily& family, OrbitSample sample, AnchorPoint anchor,
                                     std::optional<std::pair<Point, Point>> locus_foci,
                                     double inversion_radius)
    : family_(family),
      sample_(std::move(sample)),
      anchor_(anchor),
      locus_foci_(locus_foci),
      radius_(inversion_radius) {}

Point EvaluationContext::focus(int j) const {
    return j == 1 ? family_.billiard.focus1() : family_.billiard.focus2();
}

int EvaluationContext::anchor_focus_index() const {
    if (anchor_.role == AnchorRole::f1) return 1;
    if (anchor_.role == AnchorRole::f2) return 2;
    throw DomainError("row needs a focus anchor (f1 or f2)");
}

Point EvaluationContext::locus_focus(int j) {
    if (!locus_foci_) locus_foci_ = outer_locus_foci(family_);
    return j == 1 ? locus_foci_->first : locus_foci_->second;
}

const Polygon& EvaluationContext::memo(const std::string& key, const std::function<Polygon()>& build) {
    if (auto it = polygons_.find(key); it != polygons_.end()) return it->second;
    return polygons_.emplace(key, build()).first->second;
}

const Polygon& EvaluationContext::poly(Source s) {
    switch (s) {
        case Source::orbit: return sample_.vertices;
        case Source::inner: return sample_.tangency_points;
        case Source::outer:
            return memo("P'", [&] { return outer_polygon(sample_, family_.billiard); });
    }
    return sample_.vertices;
}

const Polygon& EvaluationContext::pedal(Source s, Point m, const std::string& tag) {
    return memo(std::string("ped:") + source_name(s) + ":" + tag, [&] { return pedal_polygon(poly(s), m); });
}

const Polygon& EvaluationContext::antipedal(Source s, Point m, const std::string& tag) {
    return memo(std::string("ant:") + source_name(s) + ":" + tag, [&] { return antipedal_polygon(poly(s), m); });
}

const Polygon& EvaluationContext::evolute(Source s) {
    return memo(std::string("ev:") + source_name(s), [&] { return evolute_polygon(poly(s)); });
}

const Polygon& EvaluationContext::inversive(Source s, Point center, const std::string& tag) {
    return memo(std::string("inv:") + source_name(s) + ":" + tag,
                [&] { return inversive_polygon(poly(s), center, radius_); });
}

const Polygon& EvaluationContext::polar(int j) {
    return memo("pol:" + std::to_string(j), [&] { return polar_polygon(sample_, focus(j), radius_); });
}

const Polygon& EvaluationContext::dual(int j) {
    return memo("dual:" + std::to_string(j), [&] { return dual_polygon(sample_, family_.billiard, focus(j), radius_); });
}

const Polygon& EvaluationContext::orbit_in_caustic() {
    return memo("P-otimes", [&] { return ellipse_inverse_polygon(sample_.vertices, family_.caustic); });
}

const Polygon& EvaluationContext::outer_in_billiard() {
    return memo("P'-ominus", [&] { return ellipse_inverse_polygon(poly(Source::outer), family_.billiard); });
}

const std::vector<double>& EvaluationContext::angles(Source s) {
    const int key = static_cast<int>(s);
    if (auto it = angles_.find(key); it != angles_.end()) return it->second;
    return angles_.emplace(key, internal_angles(poly(s))).first->second;
}

Point EvaluationContext::steiner(Source s) { return steiner_curvature_centroid(poly(s)); }

std::vector<double> EvaluationContext::focal_distances(int j) {
    std::vector<double> d;
    for (const Point& p : sample_.vertices) d.push_back(distance(p, focus(j)));
    return d;
}

std::vector<double> EvaluationContext::left_segments() {
    std::vector<double> l;
    for (std::size_t i = 0; i < sample_.vertices.size(); ++i)
        l.push_back(distance(sample_.tangency_points[i], sample_.vertices[i]));
    return l;
}

std::vector<double> EvaluationContext::right_segments() {
    std::vector<double> r;
    for (std::size_t i = 0; i < sample_.vertices.size(); ++i)
        r.push_back(distance(sample_.vertices[i + 1], sample_.tangency_points[i]));
    return r;
}

}  // namespace poncelet
