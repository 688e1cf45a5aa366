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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/derived.hpp"
#include "poncelet/orbit.hpp"

namespace poncelet {

enum class ProofStatus { proven, open, symmetry };

/// The "which N" column.
enum class NCondition { all, odd, even, mod4_0, mod4_2, not_mod4_2, not_mod4_0, greater_than_4, only_3, only_4, not_4 };

/// The "M" column. `focus_j` marks rows indexed by a focus f_j without an M column.
enum class AnchorSet { none, any, origin, foci, origin_or_foci, focus_j };

bool holds(NCondition cond, int n);
std::string to_string(NCondition cond);
std::string to_string(AnchorSet set);
std::string to_string(ProofStatus status);
bool anchor_admissible(AnchorSet set, AnchorRole role);

class EvaluationContext;

/// Quantities a closed form may depend on.
struct FamilyConstants {
    double a, b, a_c, b_c;  // billiard and caustic semi-axes
    int n;
    double perimeter, joachimsthal;

    static FamilyConstants of(const OrbitFamily& family);
};

struct InvariantSpec {
    std::string id;
    int cluster = 0;
    std::string expression;  // human-readable form of the conserved quantity
    NCondition condition = NCondition::all;
    AnchorSet anchors = AnchorSet::none;
    std::string closed_form_text;  // "?" when unknown
    std::function<double(const FamilyConstants&)> closed_form;  // empty when unknown
    ProofStatus proof = ProofStatus::open;
    std::vector<std::string> components;  // one entry per returned value
    std::function<std::vector<double>(EvaluationContext&)> evaluate;
    /// Set when the tabulated closed form is known to disagree with the
    /// measurement; reports carry it instead of failing.
    std::string discrepancy;

    bool point_valued() const { return components.size() == 2 && components[0] == "x"; }
};

/// Lazily-built derived polygons and per-vertex quantities for one sample and
/// one anchor. Not thread-safe; build one per evaluation task.
class EvaluationContext {
public:
    EvaluationContext(const OrbitFamily& family, OrbitSample sample, AnchorPoint anchor,
                      std::optional<std::pair<Point, Point>> locus_foci = std::nullopt,
                      double inversion_radius = 1.0);

    const OrbitFamily& family() const { return family_; }
    const OrbitSample& sample() const { return sample_; }
    const AnchorPoint& anchor() const { return anchor_; }
    int n() const { return static_cast<int>(sample_.vertices.size()); }

    /// Point M of the current anchor.
    Point m() const { return anchor_.position; }
    /// Focus f_j, j in {1, 2}.
    Point focus(int j) const;
    /// j of the anchor for focus-indexed rows. Throws DomainError otherwise.
    int anchor_focus_index() const;
    /// Foci of the outer-vertex locus (fitted on first use).
    Point locus_focus(int j);

    enum class Source { orbit, outer, inner };

    const Polygon& poly(Source s);
    const Polygon& pedal(Source s, Point m, const std::string& tag);
    const Polygon& antipedal(Source s, Point m, const std::string& tag);
    const Polygon& evolute(Source s);
    const Polygon& inversive(Source s, Point center, const std::string& tag);
    const Polygon& polar(int j);
    const Polygon& dual(int j);
    /// Orbit inverted in the caustic (side midpoints of the inner polygon).
    const Polygon& orbit_in_caustic();
    /// Outer polygon inverted in the billiard (side midpoints of the orbit).
    const Polygon& outer_in_billiard();

    double area(const Polygon& p) const { return signed_area(p); }
    /// Internal angles, cached per source.
    const std::vector<double>& angles(Source s);
    /// Steiner curvature centroid of a source polygon.
    Point steiner(Source s);

    /// |P_i - f_j|.
    std::vector<double> focal_distances(int j);
    /// l_i = |P''_i - P_i| and r_i = |P_{i+1} - P''_i|.
    std::vector<double> left_segments();
    std::vector<double> right_segments();

private:
    const Polygon& memo(const std::string& key, const std::function<Polygon()>& build);

    const OrbitFamily& family_;
    OrbitSample sample_;
    AnchorPoint anchor_;
    std::optional<std::pair<Point, Point>> locus_foci_;
    double radius_;
    std::map<std::string, Polygon> polygons_;
    std::map<int, std::vector<double>> angles_;
};

/// Ratio helper that raises DegenerateError on a vanishing denominator.
double safe_ratio(double num, double den, double scale = 1.0);

class InvariantCatalog {
public:
    InvariantCatalog();

    const std::vector<InvariantSpec>& list() const { return rows_; }
    /// Throws NotFoundError.
    const InvariantSpec& lookup(std::string_view id) const;
    /// Number of distinct k-numbers (sub-ids a/b collapsed).
    std::size_t base_id_count() const;

    bool applicability(std::string_view id, int n, AnchorRole role) const;
    std::vector<double> evaluate(std::string_view id, EvaluationContext& ctx) const;
    std::optional<double> closed_form_value(std::string_view id, const OrbitFamily& family) const;

private:
    std::vector<InvariantSpec> rows_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Immutable process-wide catalog.
const InvariantCatalog& catalog();

}  // namespace poncelet
