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


#include "poncelet/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "poncelet/errors.hpp"

namespace poncelet {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(Point p) { return json::array({p.x, p.y}); }

json to_json(const Polygon& poly) {
    json out = json::array();
    for (const Point& p : poly) out.push_back(to_json(p));
    return out;
}

json to_json(const BilliardConfig& config) {
    return {{"a", config.a}, {"b", config.b}, {"n", config.n}, {"w", config.rotation_number}};
}

json to_json(const AnchorPoint& anchor) {
    return {{"role", to_string(anchor.role)}, {"x", anchor.position.x}, {"y", anchor.position.y}};
}

json family_json(const OrbitFamily& family) {
    json out = to_json(family.config);
    out["a_c"] = family.caustic.a();
    out["b_c"] = family.caustic.b();
    out["J"] = family.joachimsthal;
    out["L"] = family.perimeter;
    out["seed"] = to_json(family.seed);
    return out;
}

json sample_json(const OrbitSample& sample) {
    return {{"t", sample.t},
            {"orbit", to_json(sample.vertices)},
            {"tangency", to_json(sample.tangency_points)},
            {"closure_error", sample.closure_error}};
}

json plan_json(const SweepPlan& plan) {
    json configs = json::array();
    for (const auto& c : plan.configs) configs.push_back(to_json(c));
    json anchors = json::array();
    for (const auto& a : plan.anchors)
        anchors.push_back({{"role", to_string(a.role)}, {"x", a.position.x}, {"y", a.position.y}});
    return {{"configs", configs},
            {"t_samples", plan.t_samples},
            {"anchors", anchors},
            {"tol_rel", plan.tol_rel},
            {"tol_abs", plan.tol_abs},
            {"t_offset", plan.t_offset},
            {"diagnostics", plan.diagnostics},
            {"ids", plan.ids}};
}

SweepPlan plan_from_json(const json& doc) {
    try {
        SweepPlan plan;
        for (const auto& c : doc.at("configs"))
            plan.configs.push_back({c.at("a").get<double>(), c.at("b").get<double>(), c.at("n").get<int>(),
                                    c.value("w", 1)});
        plan.t_samples = doc.value("t_samples", plan.t_samples);
        if (doc.contains("anchors")) {
            plan.anchors.clear();
            for (const auto& a : doc.at("anchors"))
                plan.anchors.push_back({anchor_role_from_string(a.at("role").get<std::string>()),
                                        {a.value("x", 0.0), a.value("y", 0.0)}});
        }
        plan.tol_rel = doc.value("tol_rel", plan.tol_rel);
        plan.tol_abs = doc.value("tol_abs", plan.tol_abs);
        plan.t_offset = doc.value("t_offset", plan.t_offset);
        plan.diagnostics = doc.value("diagnostics", false);
        plan.ids = doc.value("ids", std::vector<std::string>{});
        return plan;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed plan: ") + e.what());
    }
}

std::string run_id(const SweepPlan& plan) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : plan_json(plan).dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// Scalar rows serialize as numbers, point and multi-valued rows as arrays.
json values_json(const std::vector<double>& v) {
    if (v.size() == 1) return v.front();
    return v;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json report_json(const InvariantReport& r, double tol_rel, bool with_series) {
    json out{{"id", r.id},
             {"config", to_json(r.config)},
             {"anchor", to_json(r.anchor)},
             {"components", r.components},
             {"mean", r.mean.empty() ? json(nullptr) : values_json(r.mean)},
             {"max_rel_dev", r.max_rel_dev},
             {"verdict", to_string(r.verdict)},
             {"closed_form", optional_json(r.closed_form)},
             {"closed_form_residual", optional_json(r.closed_form_residual)},
             {"n_skipped", r.n_skipped},
             {"admissible", r.admissible},
             {"passed", r.passed(tol_rel)}};
    if (!r.flag.empty()) out["flag"] = r.flag;
    if (!r.error.empty()) out["error"] = r.error;
    if (with_series || !r.flag.empty()) {
        json series = json::array();
        for (const auto& p : r.series.points) series.push_back({{"t", p.t}, {"value", values_json(p.values)}});
        out["series"] = series;
        json skipped = json::array();
        for (const auto& s : r.series.skipped) skipped.push_back({{"t", s.t}, {"reason", s.reason}});
        out["skipped"] = skipped;
    }
    return out;
}

json run_document(const SweepPlan& plan, const std::vector<InvariantReport>& reports, bool with_series) {
    json list = json::array();
    std::size_t passed = 0, flagged = 0;
    for (const auto& r : reports) {
        list.push_back(report_json(r, plan.tol_rel, with_series));
        passed += r.passed(plan.tol_rel) ? 1 : 0;
        flagged += r.flag.empty() ? 0 : 1;
    }
    return {{"schema_version", kReportSchemaVersion},
            {"run_id", run_id(plan)},
            {"plan", plan_json(plan)},
            {"summary", {{"reports", reports.size()}, {"passed", passed}, {"failed", reports.size() - passed},
                         {"flagged", flagged}}},
            {"reports", list}};
}

std::vector<std::string> validate_run_document(const json& doc) {
    std::vector<std::string> problems;
    auto need = [&](const json& obj, const char* key, auto check, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key)) {
            problems.push_back(where + ": missing '" + key + "'");
            return false;
        }
        if (!check(obj.at(key))) {
            problems.push_back(where + ": bad '" + key + "'");
            return false;
        }
        return true;
    };
    auto is_num = [](const json& v) { return v.is_number(); };
    auto is_num_or_null = [](const json& v) { return v.is_number() || v.is_null(); };
    auto is_str = [](const json& v) { return v.is_string(); };
    auto is_uint = [](const json& v) { return v.is_number_unsigned(); };

    if (!doc.is_object()) return {"document is not an object"};
    if (need(doc, "schema_version", is_num, "document") && doc["schema_version"] != kReportSchemaVersion)
        problems.push_back("document: unsupported schema_version");
    need(doc, "run_id", is_str, "document");
    need(doc, "plan", [](const json& v) { return v.is_object(); }, "document");
    if (!need(doc, "reports", [](const json& v) { return v.is_array(); }, "document")) return problems;

    for (std::size_t i = 0; i < doc["reports"].size(); ++i) {
        const json& r = doc["reports"][i];
        const std::string where = "reports[" + std::to_string(i) + "]";
        need(r, "id", is_str, where);
        if (need(r, "config", [](const json& v) { return v.is_object(); }, where)) {
            need(r["config"], "a", is_num, where + ".config");
            need(r["config"], "b", is_num, where + ".config");
            need(r["config"], "n", is_uint, where + ".config");
        }
        need(r, "anchor", [](const json& v) { return v.is_object(); }, where);
        need(r, "mean", [](const json& v) { return v.is_number() || v.is_array() || v.is_null(); }, where);
        need(r, "max_rel_dev", is_num, where);
        need(r, "verdict", [](const json& v) {
            return v == "invariant" || v == "not_invariant" || v == "degenerate";
        }, where);
        need(r, "closed_form_residual", is_num_or_null, where);
        need(r, "n_skipped", is_uint, where);
    }
    return problems;
}

json catalog_json() {
    json rows = json::array();
    for (const auto& s : catalog().list()) {
        json row{{"id", s.id},
                 {"cluster", s.cluster},
                 {"expression", s.expression},
                 {"which_n", to_string(s.condition)},
                 {"anchors", to_string(s.anchors)},
                 {"closed_form", s.closed_form_text},
                 {"proof", to_string(s.proof)},
                 {"components", s.components}};
        if (!s.discrepancy.empty()) row["discrepancy"] = s.discrepancy;
        rows.push_back(std::move(row));
    }
    return {{"rows", rows}, {"count", catalog().list().size()}, {"base_ids", catalog().base_id_count()}};
}

void write_series_csv(std::ostream& out, const Series& series, const std::vector<std::string>& components,
                      bool point_valued) {
    out << 't';
    if (point_valued) {
        out << ",x,y";
    } else if (components.size() <= 1) {
        out << ",value";
    } else {
        for (const auto& c : components) out << ',' << c;
    }
    out << '\n';
    for (const auto& p : series.points) {
        out << format_double(p.t);
        for (double v : p.values) out << ',' << format_double(v);
        out << '\n';
    }
}

}  // namespace poncelet
