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


#include "poncelet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "poncelet/errors.hpp"

namespace poncelet {

namespace {

constexpr double kMaxSkippedFraction = 0.1;

struct Cell {
    const InvariantSpec* spec;
    std::size_t config_index;
    AnchorRequest anchor;
};

std::vector<AnchorRequest> anchors_for(const InvariantSpec& spec, const SweepPlan& plan) {
    switch (spec.anchors) {
        case AnchorSet::none: return {{AnchorRole::none, {}}};
        case AnchorSet::any: return plan.anchors;
        case AnchorSet::origin: return {{AnchorRole::O, {}}};
        case AnchorSet::foci:
        case AnchorSet::focus_j: return {{AnchorRole::f1, {}}, {AnchorRole::f2, {}}};
        case AnchorSet::origin_or_foci: return {{AnchorRole::O, {}}, {AnchorRole::f1, {}}, {AnchorRole::f2, {}}};
    }
    return {};
}

bool needs_locus(const InvariantSpec& spec, const std::vector<AnchorRequest>& anchors) {
    if (spec.id == "k906") return true;
    return std::any_of(anchors.begin(), anchors.end(), [](const AnchorRequest& a) {
        return a.role == AnchorRole::f1_prime || a.role == AnchorRole::f2_prime;
    });
}

AnchorPoint resolve(const AnchorRequest& req, const OrbitFamily& family,
                    const std::optional<std::pair<Point, Point>>& locus) {
    if (req.role == AnchorRole::f1_prime && locus) return {req.role, locus->first};
    if (req.role == AnchorRole::f2_prime && locus) return {req.role, locus->second};
    return make_anchor(req.role, family, req.position);
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::invariant: return "invariant";
        case Verdict::not_invariant: return "not_invariant";
        case Verdict::degenerate: return "degenerate";
    }
    return "?";
}

void SweepPlan::validate() const {
    if (t_samples < 8) throw DomainError("t_samples must be at least 8");
    if (!(tol_rel > 0.0) || !(tol_abs > 0.0)) throw DomainError("tolerances must be positive");
    for (const auto& c : configs) c.validate();
}

bool InvariantReport::passed(double tol_rel) const {
    if (!flag.empty()) return true;
    if (!admissible) return verdict == Verdict::not_invariant;
    if (verdict != Verdict::invariant) return false;
    return !closed_form_residual || *closed_form_residual < tol_rel;
}

std::vector<double> t_grid(int n, double offset) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = offset + 2.0 * std::numbers::pi * k / n;
    return t;
}

Series sweep_quantity(const OrbitFamily& family, const std::string& id, const AnchorPoint& anchor, int n,
                      double t_offset, std::optional<std::pair<Point, Point>> locus_foci) {
    const InvariantSpec& spec = catalog().lookup(id);
    Series out;
    for (double t : t_grid(n, t_offset)) {
        try {
            EvaluationContext ctx(family, orbit_at(family, t), anchor, locus_foci);
            auto values = spec.evaluate(ctx);
            if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
                throw DegenerateError("non-finite value");
            out.points.push_back({t, std::move(values)});
        } catch (const DegenerateError& e) {
            out.skipped.push_back({t, e.what()});
        }
    }
    if (static_cast<double>(out.skipped.size()) > kMaxSkippedFraction * n)
        throw DegenerateError(id + ": " + std::to_string(out.skipped.size()) + " of " + std::to_string(n) +
                              " samples degenerate" +
                              (out.skipped.empty() ? "" : " (" + out.skipped.front().reason + ")"));
    return out;
}

Classification classify(const std::vector<SeriesPoint>& series, double tol_rel, double tol_abs) {
    Classification c;
    if (series.empty()) return c;
    const std::size_t m = series.front().values.size();
    c.mean.assign(m, 0.0);
    for (const auto& p : series)
        for (std::size_t j = 0; j < m; ++j) c.mean[j] += p.values[j];
    for (double& v : c.mean) v /= static_cast<double>(series.size());

    const double floor = tol_abs / tol_rel;
    for (std::size_t j = 0; j < m; ++j) {
        double dev = 0.0;
        for (const auto& p : series) dev = std::max(dev, std::abs(p.values[j] - c.mean[j]));
        c.max_rel_dev = std::max(c.max_rel_dev, dev / std::max(std::abs(c.mean[j]), floor));
    }
    c.verdict = c.max_rel_dev < tol_rel ? Verdict::invariant : Verdict::not_invariant;
    return c;
}

std::vector<InvariantReport> run_catalog(const SweepPlan& plan) {
    plan.validate();
    const InvariantCatalog& cat = catalog();

    std::vector<const InvariantSpec*> specs;
    if (plan.ids.empty()) {
        for (const auto& s : cat.list()) specs.push_back(&s);
    } else {
        for (const auto& id : plan.ids) specs.push_back(&cat.lookup(id));
    }
    std::stable_sort(specs.begin(), specs.end(), [](auto* x, auto* y) { return x->id < y->id; });

    // Families (and the outer-vertex locus, where needed) once per config.
    std::vector<std::shared_ptr<const OrbitFamily>> families(plan.configs.size());
    std::vector<std::string> family_errors(plan.configs.size());
    std::vector<std::optional<std::pair<Point, Point>>> loci(plan.configs.size());
    bool want_locus = false;
    for (const auto* s : specs) want_locus = want_locus || needs_locus(*s, anchors_for(*s, plan));
    for (std::size_t i = 0; i < plan.configs.size(); ++i) {
        try {
            families[i] = shared_family_cache().get(plan.configs[i]);
            if (want_locus) loci[i] = outer_locus_foci(*families[i]);
        } catch (const Error& e) {
            family_errors[i] = e.what();
        }
    }

    std::vector<Cell> cells;
    for (const auto* s : specs) {
        for (std::size_t ci = 0; ci < plan.configs.size(); ++ci) {
            if (holds(s->condition, plan.configs[ci].n) == plan.diagnostics) continue;
            for (const auto& a : anchors_for(*s, plan)) cells.push_back({s, ci, a});
        }
    }

    std::vector<InvariantReport> reports(cells.size());
    auto run_cell = [&](std::size_t k) {
        const Cell& cell = cells[k];
        InvariantReport& r = reports[k];
        r.id = cell.spec->id;
        r.config = plan.configs[cell.config_index];
        r.components = cell.spec->components;
        r.admissible = !plan.diagnostics;
        r.anchor = {cell.anchor.role, cell.anchor.position};
        const auto& family = families[cell.config_index];
        if (!family) {
            r.error = family_errors[cell.config_index];
            return;
        }
        if (!cell.spec->discrepancy.empty() && r.admissible) r.flag = cell.spec->discrepancy;
        try {
            const auto& locus = loci[cell.config_index];
            r.anchor = resolve(cell.anchor, *family, locus);
            r.series = sweep_quantity(*family, r.id, r.anchor, plan.t_samples, plan.t_offset, locus);
            r.n_skipped = r.series.skipped.size();
            const Classification c = classify(r.series.points, plan.tol_rel, plan.tol_abs);
            r.mean = c.mean;
            r.max_rel_dev = c.max_rel_dev;
            r.verdict = c.verdict;
            if (cell.spec->closed_form) {
                const double cf = cell.spec->closed_form(FamilyConstants::of(*family));
                double res = 0.0;
                for (const auto& p : r.series.points)
                    for (double v : p.values) res = std::max(res, std::abs(v - cf) / std::max(1.0, std::abs(cf)));
                r.closed_form = cf;
                r.closed_form_residual = res;
            }
        } catch (const Error& e) {
            r.error = e.what();
            r.verdict = Verdict::degenerate;
            r.n_skipped = r.series.skipped.size();
        }
    };

    const unsigned threads = std::max(1u, plan.threads);
    if (threads == 1) {
        for (std::size_t k = 0; k < cells.size(); ++k) run_cell(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < cells.size(); k = next++) run_cell(k);
            });
    }
    return reports;
}

bool NegativeControlReport::ok() const {
    return std::all_of(probes.begin(), probes.end(),
                       [](const ProbeResult& p) { return p.classification.verdict == Verdict::not_invariant; });
}

NegativeControlReport negative_control(const SweepPlan& plan, bool require) {
    plan.validate();
    NegativeControlReport report;
    for (const auto& config : plan.configs) {
        const auto family = shared_family_cache().get(config);
        std::vector<std::pair<std::string, std::function<double(const OrbitSample&)>>> probes{
            {"A", [](const OrbitSample& s) { return signed_area(s.vertices); }},
            {"theta_1", [](const OrbitSample& s) { return internal_angles(s.vertices).front(); }},
        };
        if (config.n % 2 == 1)
            probes.emplace_back("sum_d1", [&family](const OrbitSample& s) {
                double d = 0.0;
                for (const Point& p : s.vertices) d += distance(p, family->billiard.focus1());
                return d;
            });
        for (const auto& [name, probe] : probes) {
            std::vector<SeriesPoint> series;
            for (double t : t_grid(plan.t_samples, plan.t_offset))
                series.push_back({t, {probe(orbit_at(*family, t))}});
            report.probes.push_back({name, config, classify(series, plan.tol_rel, plan.tol_abs)});
        }
    }
    if (require && !report.ok()) throw ConsistencyError("harness integrity: a negative-control probe classified invariant");
    return report;
}

std::vector<BilliardConfig> acceptance_grid() {
    std::vector<BilliardConfig> grid;
    for (int n = 3; n <= 8; ++n)
        for (double ratio : {1.25, 1.5, 2.0}) grid.push_back({ratio, 1.0, n, 1});
    return grid;
}

}  // namespace poncelet
