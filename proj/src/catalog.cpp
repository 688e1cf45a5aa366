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


#include "poncelet/catalog.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "poncelet/errors.hpp"

namespace poncelet {

namespace {

using Ctx = EvaluationContext;
using Src = EvaluationContext::Source;
using Values = std::vector<double>;
using Eval = std::function<Values(Ctx&)>;
using ClosedForm = std::function<double(const FamilyConstants&)>;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }
double prod(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 1.0, std::multiplies<>());
}

double sum_cos(const std::vector<double>& angles) {
    double s = 0.0;
    for (double a : angles) s += std::cos(a);
    return s;
}

double cos_between(Vec u, Vec v) {
    const double nn = norm(u) * norm(v);
    if (nn == 0.0) throw DegenerateError("angle with a zero-length vector");
    return dot(u, v) / nn;
}

// cos of the angle between consecutive spokes Q_i - m and Q_{i+1} - m.
std::vector<double> spoke_cosines(const Polygon& q, Point m) {
    std::vector<double> c;
    for (std::size_t i = 0; i < q.size(); ++i) c.push_back(cos_between(q[i] - m, q[i + 1] - m));
    return c;
}

std::vector<double> distances_to(const Polygon& q, Point m) {
    std::vector<double> d;
    for (const Point& p : q) d.push_back(distance(p, m));
    return d;
}

Values point(Point p) { return {p.x, p.y}; }

// Areas used as ratio denominators are compared against the billiard scale.
double area_scale(Ctx& c) { return c.family().billiard.a() * c.family().billiard.b(); }

double ratio(Ctx& c, double num, double den) { return safe_ratio(num, den, 1e-3 * area_scale(c)); }

double A(Ctx& c, Src s) { return signed_area(c.poly(s)); }
double A_pedal(Ctx& c, Src s) { return signed_area(c.pedal(s, c.m(), "M")); }
double A_antipedal(Ctx& c, Src s) { return signed_area(c.antipedal(s, c.m(), "M")); }
std::string focus_tag(int j) { return j == 1 ? "f1" : "f2"; }
double A_focal_pedal(Ctx& c, Src s, int j) { return signed_area(c.pedal(s, c.focus(j), focus_tag(j))); }
double A_focal_antipedal(Ctx& c, Src s, int j) {
    return signed_area(c.antipedal(s, c.focus(j), focus_tag(j)));
}
double A_inversive(Ctx& c, Src s, int j) { return signed_area(c.inversive(s, c.focus(j), focus_tag(j))); }
double A_dual(Ctx& c, int j) { return signed_area(c.dual(j)); }
// Pedal of the focus-inversive orbit polygon with respect to the same focus.
double A_inversive_pedal(Ctx& c, int j) {
    const Polygon& inv = c.inversive(Src::orbit, c.focus(j), focus_tag(j));
    return signed_area(pedal_polygon(inv, c.focus(j)));
}

std::vector<double> pedal_focal_lengths(Ctx& c, int j) {
    return distances_to(c.pedal(Src::orbit, c.focus(j), focus_tag(j)), c.focus(j));
}
std::vector<double> antipedal_focal_lengths(Ctx& c, int j) {
    return distances_to(c.antipedal(Src::orbit, c.focus(j), focus_tag(j)), c.focus(j));
}

double steiner_ratio(Ctx& c, Src s) {
    const Point k = c.steiner(s);
    return ratio(c, A(c, s), signed_area(pedal_polygon(c.poly(s), k)));
}

ClosedForm constant(double v) {
    return [v](const FamilyConstants&) { return v; };
}

struct Builder {
    std::vector<InvariantSpec> rows;

    InvariantSpec& add(std::string id, int cluster, std::string expr, NCondition cond, AnchorSet anchors,
                       Eval eval, std::vector<std::string> components = {"value"}) {
        InvariantSpec s;
        s.id = std::move(id);
        s.cluster = cluster;
        s.expression = std::move(expr);
        s.condition = cond;
        s.anchors = anchors;
        s.closed_form_text = "?";
        s.evaluate = std::move(eval);
        s.components = std::move(components);
        rows.push_back(std::move(s));
        return rows.back();
    }
};

InvariantSpec& with(InvariantSpec& s, std::string text, ClosedForm cf) {
    s.closed_form_text = std::move(text);
    s.closed_form = std::move(cf);
    return s;
}

InvariantSpec& status(InvariantSpec& s, ProofStatus p) {
    s.proof = p;
    return s;
}

using NC = NCondition;
using AS = AnchorSet;
constexpr auto kProven = ProofStatus::proven;
constexpr auto kSymmetry = ProofStatus::symmetry;

void basic_rows(Builder& b) {
    status(with(b.add("k101", 1, "sum cos(theta_i)", NC::all, AS::none,
                      [](Ctx& c) { return Values{sum_cos(c.angles(Src::orbit))}; }),
                "JL-N", [](const FamilyConstants& k) { return k.joachimsthal * k.perimeter - k.n; }),
           kProven);
    status(b.add("k102", 1, "prod cos(theta'_i)", NC::all, AS::none,
                 [](Ctx& c) {
                     double p = 1.0;
                     for (double t : c.angles(Src::outer)) p *= std::cos(t);
                     return Values{p};
                 }),
           kProven);
    status(b.add("k103", 1, "A'/A", NC::odd, AS::none,
                 [](Ctx& c) { return Values{ratio(c, A(c, Src::outer), A(c, Src::orbit))}; }),
           kProven);
    status(b.add("k104", 1, "sum cos(2 theta'_i)", NC::all, AS::none,
                 [](Ctx& c) {
                     double s = 0.0;
                     for (double t : c.angles(Src::outer)) s += std::cos(2.0 * t);
                     return Values{s};
                 }),
           kProven);
    auto half_sines = [](Ctx& c) {
        double p = 1.0;
        for (double t : c.angles(Src::orbit)) p *= std::sin(0.5 * t);
        return p;
    };
    status(b.add("k105", 1, "prod sin(theta_i/2)", NC::odd, AS::none,
                 [=](Ctx& c) { return Values{half_sines(c)}; }),
           kProven);
    status(b.add("k106", 1, "A' A", NC::even, AS::none,
                 [](Ctx& c) { return Values{A(c, Src::outer) * A(c, Src::orbit)}; }),
           kProven);
    b.add("k107", 1, "k103 k105", NC::mod4_0, AS::none, [=](Ctx& c) {
        return Values{ratio(c, A(c, Src::outer), A(c, Src::orbit)) * half_sines(c)};
    });
    b.add("k108", 1, "k103 / k105", NC::mod4_2, AS::none, [=](Ctx& c) {
        return Values{ratio(c, A(c, Src::outer), A(c, Src::orbit)) / half_sines(c)};
    });
    // Tabulated value is "k103": equal to A'/A sample by sample, not a closed form.
    b.add("k109", 1, "A/A''", NC::odd, AS::none,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::orbit), A(c, Src::inner))}; })
        .closed_form_text = "k103";
    b.add("k110", 1, "A A''", NC::even, AS::none,
          [](Ctx& c) { return Values{A(c, Src::orbit) * A(c, Src::inner)}; });
    b.add("k111", 1, "A' A''", NC::even, AS::none,
          [](Ctx& c) { return Values{A(c, Src::outer) * A(c, Src::inner)}; });
    status(with(b.add("k112", 1, "A' A''/A^2", NC::odd, AS::none,
                      [](Ctx& c) {
                          const double a = A(c, Src::orbit);
                          return Values{ratio(c, A(c, Src::outer) * A(c, Src::inner), a * a)};
                      }),
                "1", constant(1.0)),
           kProven);
    status(with(b.add("k113", 1, "A'/A''", NC::all, AS::none,
                      [](Ctx& c) { return Values{ratio(c, A(c, Src::outer), A(c, Src::inner))}; }),
                "[ab/(a''b'')]^2",
                [](const FamilyConstants& k) {
                    const double r = k.a * k.b / (k.a_c * k.b_c);
                    return r * r;
                }),
           kProven);
    b.add("k114", 1, "prod d_{1,i}", NC::mod4_2, AS::none,
          [](Ctx& c) { return Values{prod(c.focal_distances(1))}; });
    b.add("k115", 1, "prod |P'_i - f1|", NC::mod4_0, AS::none,
          [](Ctx& c) { return Values{prod(distances_to(c.poly(Src::outer), c.focus(1)))}; });
    status(with(b.add("k116", 1, "prod l_i / prod r_i", NC::all, AS::none,
                      [](Ctx& c) { return Values{prod(c.left_segments()) / prod(c.right_segments())}; }),
                "1", constant(1.0)),
           kProven);
    b.add("k117", 1, "prod l_i, prod r_i", NC::even, AS::none,
          [](Ctx& c) { return Values{prod(c.left_segments()), prod(c.right_segments())}; },
          {"prod_l", "prod_r"});
    with(b.add("k118", 1, "sum l_i, sum r_i", NC::odd, AS::none,
               [](Ctx& c) { return Values{sum(c.left_segments()), sum(c.right_segments())}; },
               {"sum_l", "sum_r"}),
         "L/2", [](const FamilyConstants& k) { return 0.5 * k.perimeter; });
    status(with(b.add("k119", 1, "sum kappa_i^(2/3)", NC::all, AS::none,
                      [](Ctx& c) {
                          double s = 0.0;
                          for (const Point& p : c.sample().vertices)
                              s += std::cbrt(std::pow(curvature(c.family().billiard, p), 2.0));
                          return Values{s};
                      }),
                "L/[2J(ab)^(4/3)]",
                [](const FamilyConstants& k) {
                    return k.perimeter / (2.0 * k.joachimsthal * std::pow(k.a * k.b, 4.0 / 3.0));
                }),
           kProven);
    b.add("k120", 1, "sum cos(alpha_{1,i})", NC::all, AS::none, [](Ctx& c) {
        const Polygon& p = c.sample().vertices;
        const Point f = c.focus(1);
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += cos_between(p[i] - f, p[i + 1] - f);
        return Values{s};
    });
    status(b.add("k121", 1, "sum d_{1,i}", NC::even, AS::none,
                 [](Ctx& c) { return Values{sum(c.focal_distances(1))}; }),
           kSymmetry);
}

Values radius_range(const Polygon& q) {
    double lo = INFINITY, hi = 0.0;
    for (const Point& p : q) {
        lo = std::min(lo, norm(p));
        hi = std::max(hi, norm(p));
    }
    return {lo, hi};
}

void pedal_rows(Builder& b) {
    status(with(b.add("k201", 2, "|Q_i - O|", NC::all, AS::foci,
                      [](Ctx& c) { return radius_range(c.pedal(Src::orbit, c.m(), "M")); }, {"min", "max"}),
                "a''", [](const FamilyConstants& k) { return k.a_c; }),
           kProven);
    auto feet_product = [](Ctx& c) { return Values{prod(distances_to(c.pedal(Src::orbit, c.m(), "M"), c.m()))}; };
    status(with(b.add("k202a", 2, "prod |Q_i - M|", NC::even, AS::foci, feet_product), "(b'')^N",
                [](const FamilyConstants& k) { return std::pow(k.b_c, k.n); }),
           kProven);
    status(with(b.add("k202b", 2, "prod |Q_i - M|", NC::mod4_0, AS::origin, feet_product), "(a''b'')^(N/2)",
                [](const FamilyConstants& k) { return std::pow(k.a_c * k.b_c, 0.5 * k.n); }),
           kProven);
    auto area_product = [](Ctx& c) { return Values{A(c, Src::orbit) * A_pedal(c, Src::orbit)}; };
    b.add("k203a", 2, "A A_m", NC::mod4_0, AS::any, area_product);
    b.add("k203b", 2, "A A_m", NC::not_mod4_2, AS::origin, area_product);
    b.add("k204", 2, "A/A_m", NC::mod4_2, AS::any,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::orbit), A_pedal(c, Src::orbit))}; });
    status(b.add("k205", 2, "sum cos(phi_i)", NC::all, AS::any,
                 [](Ctx& c) { return Values{sum(spoke_cosines(c.pedal(Src::orbit, c.m(), "M"), c.m()))}; }),
           kProven);

    status(with(b.add("k301", 3, "|Q'_i - O|", NC::all, AS::foci,
                      [](Ctx& c) { return radius_range(c.pedal(Src::outer, c.m(), "M")); }, {"min", "max"}),
                "a", [](const FamilyConstants& k) { return k.a; }),
           kProven);
    status(b.add("k302", 3, "sum |Q'_i - M|^2", NC::all, AS::any,
                 [](Ctx& c) {
                     double s = 0.0;
                     for (double d : distances_to(c.pedal(Src::outer, c.m(), "M"), c.m())) s += d * d;
                     return Values{s};
                 }),
           kProven);
    auto outer_product = [](Ctx& c) { return Values{A(c, Src::outer) * A_pedal(c, Src::outer)}; };
    b.add("k303a", 3, "A' A'_m", NC::mod4_2, AS::any, outer_product);
    b.add("k303b", 3, "A' A'_m", NC::not_mod4_0, AS::origin, outer_product);
    b.add("k304", 3, "A'/A'_m", NC::mod4_0, AS::any,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::outer), A_pedal(c, Src::outer))}; });
    status(b.add("k305", 3, "prod cos(phi'_i)", NC::all, AS::any,
                 [](Ctx& c) { return Values{prod(spoke_cosines(c.pedal(Src::outer, c.m(), "M"), c.m()))}; }),
           kProven);
    status(b.add("k306", 3, "C'_0", NC::all, AS::any,
                 [](Ctx& c) { return point(vertex_centroid(c.pedal(Src::outer, c.m(), "M"))); }, {"x", "y"}),
           kProven);
    b.add("k307", 3, "C'_2", NC::even, AS::any,
          [](Ctx& c) { return point(area_centroid(c.pedal(Src::outer, c.m(), "M"))); }, {"x", "y"});
}

void antipedal_rows(Builder& b) {
    // A_m here is the pedal area; with the antipedal area neither row is
    // constant for any M at any N.
    b.add("k401", 4, "A' A_m", NC::mod4_2, AS::any,
          [](Ctx& c) { return Values{A(c, Src::outer) * A_pedal(c, Src::orbit)}; });
    b.add("k402", 4, "A'/A_m", NC::mod4_0, AS::any,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::outer), A_pedal(c, Src::orbit))}; });
    auto pair_product = [](Ctx& c) { return Values{A_pedal(c, Src::orbit) * A_antipedal(c, Src::orbit)}; };
    b.add("k403a", 4, "A_m A*_m", NC::odd, AS::origin, pair_product);
    b.add("k403b", 4, "A_m A*_m", NC::mod4_0, AS::foci, pair_product);
    b.add("k404", 4, "A*_m/A_m", NC::mod4_2, AS::foci,
          [](Ctx& c) { return Values{ratio(c, A_antipedal(c, Src::orbit), A_pedal(c, Src::orbit))}; });
    b.add("k405", 4, "C*_0", NC::even, AS::origin_or_foci,
          [](Ctx& c) { return point(vertex_centroid(c.antipedal(Src::orbit, c.m(), "M"))); }, {"x", "y"});
    auto outer_centroids = [](Ctx& c) {
        const Polygon& q = c.antipedal(Src::outer, c.m(), "M");
        const Point c0 = vertex_centroid(q);
        const Point c2 = area_centroid(q);
        return Values{c0.x, c0.y, c2.x, c2.y};
    };
    const std::vector<std::string> four{"C0_x", "C0_y", "C2_x", "C2_y"};
    with(b.add("k406a", 4, "C*'_0, C*'_2", NC::even, AS::origin, outer_centroids, four), "O", constant(0.0));
    b.add("k406b", 4, "C*'_0, C*'_2", NC::only_4, AS::foci, outer_centroids, four);
    b.add("k407", 4, "C*'_0", NC::even, AS::foci,
          [](Ctx& c) { return point(vertex_centroid(c.antipedal(Src::outer, c.m(), "M"))); }, {"x", "y"});
}

void steiner_and_pair_rows(Builder& b) {
    b.add("k501", 5, "A/A_k", NC::odd, AS::none, [](Ctx& c) { return Values{steiner_ratio(c, Src::orbit)}; });
    b.add("k502", 5, "A'/A'_k", NC::odd, AS::none, [](Ctx& c) { return Values{steiner_ratio(c, Src::outer)}; });
    b.add("k503", 5, "A''/A''_k", NC::odd, AS::none, [](Ctx& c) { return Values{steiner_ratio(c, Src::inner)}; });

    b.add("k601", 6, "sum q_{1,i} sum q_{2,i}", NC::odd, AS::none,
          [](Ctx& c) { return Values{sum(pedal_focal_lengths(c, 1)) * sum(pedal_focal_lengths(c, 2))}; });
    b.add("k602", 6, "prod q_{1,i} prod q_{2,i}", NC::all, AS::none,
          [](Ctx& c) { return Values{prod(pedal_focal_lengths(c, 1)) * prod(pedal_focal_lengths(c, 2))}; });
    with(b.add("k603", 6, "sum q*_{1,i} / sum q*_{2,i}", NC::all, AS::none,
               [](Ctx& c) {
                   return Values{ratio(c, sum(antipedal_focal_lengths(c, 1)), sum(antipedal_focal_lengths(c, 2)))};
               }),
         "1", constant(1.0));
    b.add("k604a", 6, "Abar_1 Abar_2", NC::odd, AS::none, [](Ctx& c) {
        return Values{A_focal_pedal(c, Src::orbit, 1) * A_focal_pedal(c, Src::orbit, 2)};
    });
    status(with(b.add("k604b", 6, "Abar_1/Abar_2", NC::even, AS::none,
                      [](Ctx& c) {
                          return Values{ratio(c, A_focal_pedal(c, Src::orbit, 1), A_focal_pedal(c, Src::orbit, 2))};
                      }),
                "1", constant(1.0)),
           kSymmetry);
    b.add("k605a", 6, "Abar'_1 Abar'_2", NC::odd, AS::none, [](Ctx& c) {
        return Values{A_focal_pedal(c, Src::outer, 1) * A_focal_pedal(c, Src::outer, 2)};
    });
    status(with(b.add("k605b", 6, "Abar'_1/Abar'_2", NC::even, AS::none,
                      [](Ctx& c) {
                          return Values{ratio(c, A_focal_pedal(c, Src::outer, 1), A_focal_pedal(c, Src::outer, 2))};
                      }),
                "1", constant(1.0)),
           kSymmetry);
    // The tabulated statement is the equality of the two focal ratios; their
    // quotient is the conserved quantity.
    b.add("k606", 6, "(Abar_1/Abar_2) / (Abar'_1/Abar'_2)", NC::all, AS::none, [](Ctx& c) {
        const double orbit = ratio(c, A_focal_pedal(c, Src::orbit, 1), A_focal_pedal(c, Src::orbit, 2));
        const double outer = ratio(c, A_focal_pedal(c, Src::outer, 1), A_focal_pedal(c, Src::outer, 2));
        return Values{orbit / outer};
    });
    auto focal_ratio = [&b](std::string id, std::string expr, NC cond, auto area) {
        with(b.add(std::move(id), 6, std::move(expr), cond, AS::none,
                   [area](Ctx& c) { return Values{ratio(c, area(c, 1), area(c, 2))}; }),
             "1", constant(1.0));
    };
    focal_ratio("k607", "Abar*_1/Abar*_2", NC::mod4_0,
                [](Ctx& c, int j) { return A_focal_antipedal(c, Src::orbit, j); });
    focal_ratio("k608", "Abar'*_1/Abar'*_2", NC::even,
                [](Ctx& c, int j) { return A_focal_antipedal(c, Src::outer, j); });
    focal_ratio("k609", "Abar''_1/Abar''_2", NC::even,
                [](Ctx& c, int j) { return A_focal_pedal(c, Src::inner, j); });
    focal_ratio("k610", "Abar''*_1/Abar''*_2", NC::even,
                [](Ctx& c, int j) { return A_focal_antipedal(c, Src::inner, j); });

    b.add("k701", 7, "A/A_ev", NC::greater_than_4, AS::none,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::orbit), signed_area(c.evolute(Src::orbit)))}; });
    b.add("k702", 7, "A'/A'_ev", NC::greater_than_4, AS::none,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::outer), signed_area(c.evolute(Src::outer)))}; });
    b.add("k703", 7, "A''/A''_ev", NC::greater_than_4, AS::none,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::inner), signed_area(c.evolute(Src::inner)))}; });
}

void inversive_rows(Builder& b) {
    auto j_of = [](Ctx& c) { return c.anchor_focus_index(); };
    status(b.add("k801", 8, "sum 1/d_{j,i}", NC::all, AS::focus_j,
                 [=](Ctx& c) {
                     double s = 0.0;
                     for (double d : c.focal_distances(j_of(c))) s += 1.0 / d;
                     return Values{s};
                 }),
           kProven);
    b.add("k802", 8, "L_j^dagger", NC::all, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{perimeter(c.inversive(Src::orbit, c.focus(j), focus_tag(j)))};
    });
    b.add("k803", 8, "sum cos(theta^dagger_{j,i})", NC::not_4, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{sum_cos(internal_angles(c.inversive(Src::orbit, c.focus(j), focus_tag(j))))};
    });
    auto inv_product = [=](Ctx& c) { return Values{A(c, Src::orbit) * A_inversive(c, Src::orbit, j_of(c))}; };
    b.add("k804a", 8, "A A_j^dagger", NC::mod4_0, AS::focus_j, inv_product);
    with(b.add("k804b", 8, "A A_j^dagger", NC::only_4, AS::focus_j, inv_product), "4", constant(4.0));
    b.add("k805", 8, "A/A_j^dagger", NC::mod4_2, AS::focus_j,
          [=](Ctx& c) { return Values{ratio(c, A(c, Src::orbit), A_inversive(c, Src::orbit, j_of(c)))}; });
    auto inv_outer_ratio = [=](Ctx& c) {
        const int j = j_of(c);
        return Values{safe_ratio(A_inversive(c, Src::outer, j), A_inversive(c, Src::orbit, j))};
    };
    b.add("k806a", 8, "A'_j^dagger/A_j^dagger", NC::all, AS::focus_j, inv_outer_ratio);
    with(b.add("k806b", 8, "A'_j^dagger/A_j^dagger", NC::only_4, AS::focus_j, inv_outer_ratio), "2",
         constant(2.0))
        .discrepancy = "tabulated value 2 disagrees with the measured signed-area ratio at N=4";
    b.add("k807", 8, "A A^otimes", NC::even, AS::none,
          [](Ctx& c) { return Values{A(c, Src::orbit) * signed_area(c.orbit_in_caustic())}; });
    b.add("k808", 8, "A/A^otimes", NC::odd, AS::none,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::orbit), signed_area(c.orbit_in_caustic()))}; });
    b.add("k809", 8, "A' A'^ominus", NC::even, AS::none,
          [](Ctx& c) { return Values{A(c, Src::outer) * signed_area(c.outer_in_billiard())}; });
    b.add("k810", 8, "A'/A'^ominus", NC::odd, AS::none,
          [](Ctx& c) { return Values{ratio(c, A(c, Src::outer), signed_area(c.outer_in_billiard()))}; });
    b.add("k811", 8, "sum w_i^2", NC::all, AS::focus_j, [=](Ctx& c) {
        const Polygon& d = c.dual(j_of(c));
        double s = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) s += d.side_length(i) * d.side_length(i);
        return Values{s};
    });
    auto polar_cosines = [](Ctx& c) { return Values{sum_cos(internal_angles(c.polar(1)))}; };
    b.add("k812a", 8, "sum cos(psi_{1,i})", NC::all, AS::none, polar_cosines);
    with(b.add("k812b", 8, "sum cos(psi_{1,i})", NC::only_4, AS::none, polar_cosines), "0", constant(0.0));
    b.add("k813", 8, "A_{j,pol}/A_{j,inv}", NC::all, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{safe_ratio(signed_area(c.polar(j)), A_inversive(c, Src::orbit, j))};
    });
    b.add("k814", 8, "A_{j,pol}/A_{j,dual}", NC::all, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{safe_ratio(signed_area(c.polar(j)), A_dual(c, j))};
    });
    b.add("k815", 8, "A_{j,ped} A_{j,dual}", NC::odd, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{A_focal_pedal(c, Src::orbit, j) * A_dual(c, j)};
    });
    b.add("k816", 8, "A_{j,ped}/A_{j,dual}", NC::even, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{safe_ratio(A_focal_pedal(c, Src::orbit, j), A_dual(c, j))};
    });
    b.add("k817", 8, "A_j^dagger A_{j,ant}", NC::mod4_0, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{A_inversive(c, Src::orbit, j) * A_focal_antipedal(c, Src::orbit, j)};
    });
    // Reciprocal form: the antipedal area vanishes identically at a/b = 2, N = 6.
    b.add("k818", 8, "A_{j,ant}/A_j^dagger", NC::mod4_2, AS::focus_j, [=](Ctx& c) {
        const int j = j_of(c);
        return Values{safe_ratio(A_focal_antipedal(c, Src::orbit, j), A_inversive(c, Src::orbit, j))};
    });
}

void inversive_pair_rows(Builder& b) {
    auto inv_sum = [](Ctx& c, int j) {
        double s = 0.0;
        for (double d : c.focal_distances(j)) s += 1.0 / d;
        return s;
    };
    status(with(b.add("k901", 9, "sum 1/d_{1,i} / sum 1/d_{2,i}", NC::all, AS::none,
                      [=](Ctx& c) { return Values{inv_sum(c, 1) / inv_sum(c, 2)}; }),
                "1", constant(1.0)),
           kProven);
    status(with(b.add("k902", 9, "sum 1/(d_{1,i} d_{2,i})", NC::all, AS::none,
                      [](Ctx& c) {
                          const auto d1 = c.focal_distances(1);
                          const auto d2 = c.focal_distances(2);
                          double s = 0.0;
                          for (std::size_t i = 0; i < d1.size(); ++i) s += 1.0 / (d1[i] * d2[i]);
                          return Values{s};
                      }),
                "L/[2J(ab)^2]",
                [](const FamilyConstants& k) {
                    return k.perimeter / (2.0 * k.joachimsthal * (k.a * k.b) * (k.a * k.b));
                }),
           kProven);

    auto pair = [&b](std::string base, std::string name, auto area, ProofStatus ratio_status,
                     NC product_cond = NC::odd, NC ratio_cond = NC::even) {
        b.add(base + "a", 9, name + "_1 " + name + "_2", product_cond, AS::none,
              [area](Ctx& c) { return Values{area(c, 1) * area(c, 2)}; });
        status(with(b.add(base + "b", 9, name + "_1/" + name + "_2", ratio_cond, AS::none,
                          [area](Ctx& c) { return Values{safe_ratio(area(c, 1), area(c, 2))}; }),
                    "1", constant(1.0)),
               ratio_status);
    };
    pair("k903", "A^dagger", [](Ctx& c, int j) { return A_inversive(c, Src::orbit, j); }, kSymmetry);
    pair("k904", "A'^dagger", [](Ctx& c, int j) { return A_inversive(c, Src::outer, j); }, kSymmetry);
    with(b.add("k905", 9, "A''^dagger_1/A''^dagger_2", NC::even, AS::none,
               [](Ctx& c) {
                   return Values{safe_ratio(A_inversive(c, Src::inner, 1), A_inversive(c, Src::inner, 2))};
               }),
         "1", constant(1.0));
    with(b.add("k906", 9, "A'^ddagger_1/A'^ddagger_2", NC::even, AS::none,
               [](Ctx& c) {
                   auto area = [&c](int j) {
                       const Point f = c.locus_focus(j);
                       return signed_area(c.inversive(Src::outer, f, j == 1 ? "f1'" : "f2'"));
                   };
                   return Values{safe_ratio(area(1), area(2))};
               }),
         "1", constant(1.0));
    pair("k907", "A_dual", [](Ctx& c, int j) { return A_dual(c, j); }, ProofStatus::open);
    with(b.add("k908a", 9, "A^dagger_{1,ped}/A^dagger_{2,ped}", NC::even, AS::none,
               [](Ctx& c) { return Values{safe_ratio(A_inversive_pedal(c, 1), A_inversive_pedal(c, 2))}; }),
         "1", constant(1.0));
    with(b.add("k908b", 9, "A^dagger_{1,ped}/A^dagger_{2,ped}", NC::only_3, AS::none,
               [](Ctx& c) { return Values{safe_ratio(A_inversive_pedal(c, 1), A_inversive_pedal(c, 2))}; }),
         "1", constant(1.0));
}

}  // namespace

bool holds(NCondition cond, int n) {
    switch (cond) {
        case NCondition::all: return true;
        case NCondition::odd: return n % 2 == 1;
        case NCondition::even: return n % 2 == 0;
        case NCondition::mod4_0: return n % 4 == 0;
        case NCondition::mod4_2: return n % 4 == 2;
        case NCondition::not_mod4_2: return n % 4 != 2;
        case NCondition::not_mod4_0: return n % 4 != 0;
        case NCondition::greater_than_4: return n > 4;
        case NCondition::only_3: return n == 3;
        case NCondition::only_4: return n == 4;
        case NCondition::not_4: return n != 4;
    }
    return false;
}

std::string to_string(NCondition cond) {
    switch (cond) {
        case NCondition::all: return "all";
        case NCondition::odd: return "odd";
        case NCondition::even: return "even";
        case NCondition::mod4_0: return "=0 (mod 4)";
        case NCondition::mod4_2: return "=2 (mod 4)";
        case NCondition::not_mod4_2: return "!=2 (mod 4)";
        case NCondition::not_mod4_0: return "!=0 (mod 4)";
        case NCondition::greater_than_4: return ">4";
        case NCondition::only_3: return "3";
        case NCondition::only_4: return "4";
        case NCondition::not_4: return "!=4";
    }
    return "?";
}

std::string to_string(AnchorSet set) {
    switch (set) {
        case AnchorSet::none: return "-";
        case AnchorSet::any: return "all";
        case AnchorSet::origin: return "O";
        case AnchorSet::foci: return "f1,f2";
        case AnchorSet::origin_or_foci: return "O,f1,f2";
        case AnchorSet::focus_j: return "f_j";
    }
    return "?";
}

std::string to_string(ProofStatus status) {
    switch (status) {
        case ProofStatus::proven: return "proven";
        case ProofStatus::open: return "open";
        case ProofStatus::symmetry: return "symmetry";
    }
    return "?";
}

bool anchor_admissible(AnchorSet set, AnchorRole role) {
    const bool focus = role == AnchorRole::f1 || role == AnchorRole::f2;
    switch (set) {
        case AnchorSet::none: return role == AnchorRole::none;
        case AnchorSet::any: return role != AnchorRole::none;
        case AnchorSet::origin: return role == AnchorRole::O;
        case AnchorSet::foci:
        case AnchorSet::focus_j: return focus;
        case AnchorSet::origin_or_foci: return focus || role == AnchorRole::O;
    }
    return false;
}

InvariantCatalog::InvariantCatalog() {
    Builder b;
    basic_rows(b);
    pedal_rows(b);
    antipedal_rows(b);
    steiner_and_pair_rows(b);
    inversive_rows(b);
    inversive_pair_rows(b);
    rows_ = std::move(b.rows);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!index_.emplace(rows_[i].id, i).second) throw ConsistencyError("duplicate invariant id " + rows_[i].id);
    }
}

const InvariantSpec& InvariantCatalog::lookup(std::string_view id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw NotFoundError("unknown invariant id '" + std::string(id) + "'");
    return rows_[it->second];
}

std::size_t InvariantCatalog::base_id_count() const {
    std::set<std::string> bases;
    for (const auto& r : rows_) bases.insert(r.id.substr(0, 4));
    return bases.size();
}

bool InvariantCatalog::applicability(std::string_view id, int n, AnchorRole role) const {
    const InvariantSpec& s = lookup(id);
    return holds(s.condition, n) && anchor_admissible(s.anchors, role);
}

std::vector<double> InvariantCatalog::evaluate(std::string_view id, EvaluationContext& ctx) const {
    return lookup(id).evaluate(ctx);
}

std::optional<double> InvariantCatalog::closed_form_value(std::string_view id, const OrbitFamily& family) const {
    const InvariantSpec& s = lookup(id);
    if (!s.closed_form) return std::nullopt;
    return s.closed_form(FamilyConstants::of(family));
}

const InvariantCatalog& catalog() {
    static const InvariantCatalog instance;
    return instance;
}

}  // namespace poncelet
