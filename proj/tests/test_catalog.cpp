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

#include <cstring>
#include <set>

#include "oracles.hpp"
#include "poncelet/catalog.hpp"
#include "poncelet/errors.hpp"

using namespace poncelet;
using doctest::Approx;

namespace {

const OrbitFamily& family(double a, int n) { return *shared_family_cache().get({a, 1.0, n}); }

std::vector<double> eval(std::string_view id, const OrbitFamily& f, double t, AnchorRole role = AnchorRole::none) {
    EvaluationContext ctx(f, orbit_at(f, t), make_anchor(role, f));
    return catalog().evaluate(id, ctx);
}

// First anchor role a row accepts, in a fixed order.
AnchorRole some_anchor(const InvariantSpec& s) {
    for (AnchorRole r : {AnchorRole::none, AnchorRole::O, AnchorRole::f1, AnchorRole::f2})
        if (anchor_admissible(s.anchors, r)) return r;
    return AnchorRole::arbitrary;
}

}  // namespace

TEST_CASE("catalog inventory") {
    const auto& rows = catalog().list();
    CHECK(rows.size() == 96);
    CHECK(catalog().base_id_count() == 82);

    std::set<std::string> ids;
    for (const auto& s : rows) {
        CHECK(ids.insert(s.id).second);
        // cluster is the hundreds digit of the id
        CHECK(s.cluster == std::stoi(s.id.substr(1, 1)));
        CHECK(s.id.size() >= 4);
        CHECK(!s.components.empty());
        CHECK(static_cast<bool>(s.evaluate));
        // k109's value column names another row instead of a formula
        if (s.id != "k109") CHECK((s.closed_form_text == "?") == !s.closed_form);
    }
    for (const char* sub : {"k202a", "k202b", "k203a", "k203b", "k303a", "k303b", "k403a", "k403b", "k406a",
                            "k406b", "k604a", "k604b", "k605a", "k605b", "k804a", "k804b", "k806a", "k806b",
                            "k812a", "k812b", "k903a", "k903b", "k904a", "k904b", "k907a", "k907b", "k908a",
                            "k908b"})
        CHECK(ids.count(sub) == 1);

    CHECK(catalog().lookup("k119").closed_form_text == "L/[2J(ab)^(4/3)]");
    CHECK(catalog().lookup("k902").closed_form_text == "L/[2J(ab)^2]");
    CHECK_THROWS_AS(catalog().lookup("k999"), NotFoundError);
    CHECK(catalog().lookup("k806b").discrepancy.size() > 0);
    CHECK(catalog().lookup("k306").components == std::vector<std::string>{"x", "y"});
    CHECK(catalog().lookup("k306").point_valued());
}

TEST_CASE("applicability") {
    CHECK_FALSE(catalog().applicability("k105", 6, AnchorRole::none));
    CHECK(catalog().applicability("k105", 7, AnchorRole::none));
    CHECK(catalog().applicability("k107", 8, AnchorRole::none));
    CHECK_FALSE(catalog().applicability("k107", 6, AnchorRole::none));
    CHECK_FALSE(catalog().applicability("k803", 4, AnchorRole::f1));
    CHECK(catalog().applicability("k803", 5, AnchorRole::f1));
    CHECK_FALSE(catalog().applicability("k201", 5, AnchorRole::O));
    CHECK(catalog().applicability("k201", 5, AnchorRole::f2));
    CHECK(catalog().applicability("k202b", 8, AnchorRole::O));
    CHECK_FALSE(catalog().applicability("k202b", 8, AnchorRole::f1));
    CHECK_THROWS_AS(catalog().applicability("nope", 4, AnchorRole::none), NotFoundError);

    CHECK(holds(NCondition::mod4_2, 6));
    CHECK_FALSE(holds(NCondition::mod4_2, 8));
    CHECK(holds(NCondition::not_mod4_2, 8));
    CHECK(holds(NCondition::greater_than_4, 5));
    CHECK_FALSE(holds(NCondition::greater_than_4, 4));
    CHECK(holds(NCondition::only_3, 3));
    CHECK(anchor_admissible(AnchorSet::any, AnchorRole::arbitrary));
    CHECK_FALSE(anchor_admissible(AnchorSet::origin, AnchorRole::f1));
}

TEST_CASE("evaluate on the rhombus") {
    const auto& f = family(2.0, 4);
    const Polygon& p = orbit_at(f, 0.0).vertices;

    double cos_sum = 0.0;
    for (int i = 0; i < 4; ++i)
        cos_sum += std::cos(oracle::angle_at({p[i + 3].x, p[i + 3].y}, {p[i].x, p[i].y}, {p[i + 1].x, p[i + 1].y}));
    CHECK(eval("k101", f, 0.0)[0] == Approx(cos_sum).epsilon(1e-12));
    CHECK(std::abs(eval("k101", f, 0.0)[0]) < 1e-12);

    CHECK(eval("k902", f, 0.0)[0] == Approx(2.5).epsilon(1e-12));
    const double k119 = 2.0 * (std::cbrt(4.0) + std::cbrt(1.0 / 16.0));
    CHECK(eval("k119", f, 0.0)[0] == Approx(k119).epsilon(1e-12));
    CHECK(*catalog().closed_form_value("k119", f) == Approx(k119).epsilon(1e-10));
    CHECK(*catalog().closed_form_value("k902", f) == Approx(2.5).epsilon(1e-10));

    CHECK(eval("k804b", f, 0.0, AnchorRole::f1)[0] == Approx(4.0).epsilon(1e-12));
    CHECK(eval("k113", f, 0.0)[0] == Approx(6.25).epsilon(1e-12));
}

TEST_CASE("closed form values") {
    CHECK(*catalog().closed_form_value("k113", family(2.0, 4)) == Approx(6.25).epsilon(1e-10));
    for (double a : {1.25, 1.5, 2.0})
        for (int n : {3, 5, 7}) {
            const auto& f = family(a, n);
            CHECK(*catalog().closed_form_value("k118", f) == Approx(0.5 * f.perimeter).epsilon(1e-15));
        }
    CHECK_FALSE(catalog().closed_form_value("k103", family(2.0, 4)).has_value());
    CHECK_FALSE(catalog().closed_form_value("k109", family(2.0, 5)).has_value());
}

TEST_CASE("k109 tracks k103 at odd N") {
    for (double a : {1.25, 2.0})
        for (int n : {3, 5, 7})
            for (double t : {0.1, 0.9, 2.3}) {
                const auto& f = family(a, n);
                CHECK(eval("k109", f, t)[0] == Approx(eval("k103", f, t)[0]).epsilon(1e-9));
            }
}

TEST_CASE("unity ratios at even N") {
    for (const auto& s : catalog().list()) {
        if (s.closed_form_text != "1" || s.discrepancy.size()) continue;
        for (int n : {4, 6, 8}) {
            if (!holds(s.condition, n)) continue;
            for (double a : {1.25, 1.5, 2.0})
                for (double t : {0.2, 1.7}) {
                    CAPTURE(s.id);
                    CAPTURE(n);
                    for (double v : eval(s.id, family(a, n), t, some_anchor(s))) CHECK(std::abs(v - 1.0) < 1e-9);
                }
        }
    }
}

TEST_CASE("evaluation is pure") {
    const auto& f = family(1.5, 6);
    for (const auto& s : catalog().list()) {
        if (!holds(s.condition, 6)) continue;
        const AnchorRole r = some_anchor(s);
        EvaluationContext ctx(f, orbit_at(f, 0.4), r == AnchorRole::arbitrary
                                                        ? make_anchor(r, f, {0.1, 0.05})
                                                        : make_anchor(r, f));
        std::vector<double> first, second;
        try {
            first = catalog().evaluate(s.id, ctx);
            second = catalog().evaluate(s.id, ctx);
        } catch (const DegenerateError&) {
            continue;
        }
        CAPTURE(s.id);
        REQUIRE(first.size() == second.size());
        for (std::size_t i = 0; i < first.size(); ++i) CHECK(std::memcmp(&first[i], &second[i], sizeof(double)) == 0);
    }
}

TEST_CASE("safe ratio") {
    CHECK(safe_ratio(1.0, 4.0) == 0.25);
    CHECK_THROWS_AS(safe_ratio(1.0, 0.0), DegenerateError);
}
