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


#include "poncelet/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "poncelet/errors.hpp"
#include "poncelet/serialize.hpp"
#include "poncelet/service.hpp"

namespace poncelet {

using nlohmann::json;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct ConfigArgs {
    double a = 2.0;
    double b = 1.0;
    int n = 4;
    int w = 1;

    void add_to(CLI::App* app) {
        app->add_option("--a", a, "billiard semi-major axis")->required();
        app->add_option("--b", b, "billiard semi-minor axis")->capture_default_str();
        app->add_option("--n", n, "period N")->required();
        app->add_option("--w", w, "rotation number")->capture_default_str();
    }
    BilliardConfig config() const { return {a, b, n, w}; }
    QueryParams query() const {
        return {{"a", format_double(a)}, {"b", format_double(b)}, {"n", std::to_string(n)}, {"w", std::to_string(w)}};
    }
};

// Argument validation failures are usage errors; anything thrown later is a
// computation failure.
template <class F>
decltype(auto) checked(F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    } catch (const NotFoundError& e) {
        throw UsageError(e.what());
    }
}

// API responses double as CLI payloads; map their status onto exit codes.
int emit(const ApiResponse& r, const std::string& path, std::ostream& out, std::ostream& err) {
    if (r.status != 200) {
        err << "error: " << json::parse(r.body).value("reason", "request failed") << '\n';
        return r.status == 400 ? kExitUsage : kExitFailure;
    }
    if (path.empty()) {
        out << json::parse(r.body).dump(2) << '\n';
        return kExitOk;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << json::parse(r.body).dump(2) << '\n';
    return kExitOk;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    return f;
}

std::string cell(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_number()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
        return buf;
    }
    if (v.is_array()) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + cell(v[i]);
        return s + ")";
    }
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void render_report(const json& doc, bool failures_only, std::ostream& out) {
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %3s %6s %-4s %-30s %-10s %-14s %s\n", "id", "N", "a/b", "M", "mean",
                  "max dev", "verdict", "status");
    out << "run " << doc.value("run_id", "?") << '\n' << line;
    std::size_t shown = 0;
    for (const auto& r : doc["reports"]) {
        const bool passed = r.value("passed", true);
        if (failures_only && passed) continue;
        const auto& c = r["config"];
        std::string status = passed ? "ok" : "FAIL";
        if (r.contains("flag")) status = "flagged";
        if (r.contains("error")) status += " (" + r["error"].get<std::string>() + ")";
        std::snprintf(line, sizeof line, "%-7s %3d %6.3g %-4s %-30s %-10.3g %-14s %s\n",
                      r["id"].get<std::string>().c_str(), c["n"].get<int>(),
                      c["a"].get<double>() / c["b"].get<double>(), r["anchor"].value("role", "-").c_str(),
                      cell(r["mean"]).c_str(), r["max_rel_dev"].get<double>(),
                      r["verdict"].get<std::string>().c_str(), status.c_str());
        out << line;
        ++shown;
    }
    const json& s = doc.value("summary", json::object());
    out << shown << " rows shown; " << s.value("passed", 0) << " passed, " << s.value("failed", 0) << " failed, "
        << s.value("flagged", 0) << " flagged\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical lab for periodic trajectories in the elliptic billiard", "poncelet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    ConfigArgs fam;
    bool fam_json = false;
    auto* family_cmd = app.add_subcommand("family", "caustic, Joachimsthal constant and perimeter of a family");
    fam.add_to(family_cmd);
    family_cmd->add_flag("--json", fam_json, "print JSON");

    ConfigArgs orb;
    double t = 0.0, mx = 0.0, my = 0.0;
    std::string layers, orbit_out;
    auto* orbit_cmd = app.add_subcommand("orbit", "vertices of one trajectory plus derived polygons");
    orb.add_to(orbit_cmd);
    orbit_cmd->add_option("--t", t, "eccentric angle of the first vertex")->capture_default_str();
    orbit_cmd->add_option("--layers", layers, "comma list, e.g. outer,pedal:f1,dual:f2");
    orbit_cmd->add_option("--mx", mx, "x of the anchor M");
    orbit_cmd->add_option("--my", my, "y of the anchor M");
    orbit_cmd->add_option("--out", orbit_out, "output file (default stdout)");

    ConfigArgs swp;
    std::string quantity, sweep_anchor = "O", sweep_out;
    int sweep_samples = 128;
    double sweep_offset = 1e-3;
    std::vector<double> sweep_m;
    bool sweep_any = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "series of one catalog quantity over a family, as CSV");
    swp.add_to(sweep_cmd);
    sweep_cmd->add_option("--quantity", quantity, "catalog id, e.g. k101")->required();
    sweep_cmd->add_option("--samples", sweep_samples)->capture_default_str()->check(CLI::Range(8, 1 << 20));
    sweep_cmd->add_option("--anchor", sweep_anchor, "O, f1, f2, f1', f2' or M")->capture_default_str();
    sweep_cmd->add_option("--m", sweep_m, "coordinates of M")->delimiter(',')->expected(2);
    sweep_cmd->add_option("--offset", sweep_offset, "t grid offset")->capture_default_str();
    sweep_cmd->add_flag("--diagnostics", sweep_any, "allow rows outside their N/anchor conditions");
    sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");

    std::vector<double> ver_a;
    std::vector<int> ver_n;
    double ver_b = 1.0;
    int ver_w = 1, ver_samples = 128;
    unsigned ver_threads = 1;
    bool ver_grid = false, ver_diag = false, ver_series = false;
    std::vector<std::string> ver_ids, ver_anchors;
    std::vector<double> ver_m;
    std::string ver_out, ver_plan;
    auto* verify_cmd = app.add_subcommand("verify", "classify catalog rows over a config grid; exit 0 iff all pass");
    verify_cmd->add_option("--a", ver_a, "semi-major axes (comma list)")->delimiter(',');
    verify_cmd->add_option("--b", ver_b)->capture_default_str();
    verify_cmd->add_option("--n", ver_n, "periods (comma list)")->delimiter(',');
    verify_cmd->add_option("--w", ver_w)->capture_default_str();
    auto* grid_flag = verify_cmd->add_flag("--grid", ver_grid, "N = 3..8 x a/b = 1.25, 1.5, 2");
    auto* plan_opt = verify_cmd->add_option("--plan", ver_plan, "plan JSON file");
    verify_cmd->add_option("--samples", ver_samples)->capture_default_str()->check(CLI::Range(8, 1 << 20));
    verify_cmd->add_option("--ids", ver_ids, "restrict to catalog ids")->delimiter(',');
    verify_cmd->add_option("--anchors", ver_anchors, "anchors for rows valid for any M")->delimiter(',');
    verify_cmd->add_option("--m", ver_m, "coordinates of M")->delimiter(',')->expected(2);
    verify_cmd->add_flag("--diagnostics", ver_diag, "evaluate the excluded N instead");
    verify_cmd->add_flag("--series", ver_series, "embed every series in the report");
    verify_cmd->add_option("--threads", ver_threads)->capture_default_str()->check(CLI::Range(1u, 256u));
    verify_cmd->add_option("--out", ver_out, "report file (default stdout)");
    grid_flag->excludes(plan_opt);

    std::string report_in;
    bool report_failures = false;
    auto* report_cmd = app.add_subcommand("report", "summary table of a verify report");
    report_cmd->add_option("input", report_in, "report JSON")->required();
    report_cmd->add_flag("--failures", report_failures, "only rows that did not pass");

    std::string host = "127.0.0.1", static_dir;
    int port = default_port();
    auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON service");
    serve_cmd->add_option("--host", host)->capture_default_str();
    serve_cmd->add_option("--port", port, "0 picks a free port")->capture_default_str()->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--static", static_dir, "directory served at /");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (family_cmd->parsed()) {
            if (fam_json) return emit(handle_api("/api/family", fam.query()), "", out, err);
            checked([&] { fam.config().validate(); });
            const auto f = shared_family_cache().get(fam.config());
            out << "a_c " << format_double(f->caustic.a()) << '\n'
                << "b_c " << format_double(f->caustic.b()) << '\n'
                << "J   " << format_double(f->joachimsthal) << '\n'
                << "L   " << format_double(f->perimeter) << '\n';
            return kExitOk;
        }

        if (orbit_cmd->parsed()) {
            QueryParams q = orb.query();
            q.emplace("t", format_double(t));
            q.emplace("layers", layers);
            q.emplace("mx", format_double(mx));
            q.emplace("my", format_double(my));
            return emit(handle_api("/api/orbit", q), orbit_out, out, err);
        }

        if (sweep_cmd->parsed()) {
            const BilliardConfig config = swp.config();
            checked([&] { config.validate(); });
            const InvariantSpec& spec = checked([&]() -> const InvariantSpec& { return catalog().lookup(quantity); });
            const AnchorRole role = spec.anchors == AnchorSet::none
                                        ? AnchorRole::none
                                        : checked([&] { return anchor_role_from_string(sweep_anchor); });
            if (role == AnchorRole::arbitrary && sweep_m.size() != 2) throw UsageError("anchor M needs --m x,y");
            if (!sweep_any && !catalog().applicability(quantity, config.n, role))
                throw UsageError(quantity + " does not apply to N=" + std::to_string(config.n) + " with anchor " +
                                 to_string(role) + " (use --diagnostics)");
            const auto family = shared_family_cache().get(config);
            const Point m = sweep_m.size() == 2 ? Point{sweep_m[0], sweep_m[1]} : Point{};
            std::optional<std::pair<Point, Point>> locus;
            if (quantity == "k906" || role == AnchorRole::f1_prime || role == AnchorRole::f2_prime)
                locus = outer_locus_foci(*family);
            const Series s = sweep_quantity(*family, quantity, make_anchor(role, *family, m), sweep_samples,
                                            sweep_offset, locus);
            if (sweep_out.empty()) {
                write_series_csv(out, s, spec.components, spec.point_valued());
            } else {
                auto f = open_out(sweep_out);
                write_series_csv(f, s, spec.components, spec.point_valued());
            }
            for (const auto& k : s.skipped) err << "skipped t=" << format_double(k.t) << ": " << k.reason << '\n';
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            SweepPlan plan;
            if (!ver_plan.empty()) {
                std::ifstream f(ver_plan);
                if (!f) throw UsageError("cannot read " + ver_plan);
                json doc;
                try {
                    doc = json::parse(f);
                } catch (const json::exception& e) {
                    throw UsageError(std::string("plan is not JSON: ") + e.what());
                }
                plan = checked([&] { return plan_from_json(doc); });
            } else if (ver_grid) {
                plan.configs = acceptance_grid();
            } else {
                if (ver_a.empty() || ver_n.empty()) throw UsageError("verify needs --a and --n, --grid or --plan");
                for (int n : ver_n)
                    for (double a : ver_a) plan.configs.push_back({a, ver_b, n, ver_w});
            }
            if (ver_plan.empty()) {
                plan.t_samples = ver_samples;
                plan.diagnostics = ver_diag;
                plan.ids = ver_ids;
                if (!ver_anchors.empty()) {
                    plan.anchors.clear();
                    for (const auto& name : ver_anchors) {
                        const AnchorRole role = checked([&] { return anchor_role_from_string(name); });
                        if (role == AnchorRole::arbitrary && ver_m.size() != 2)
                            throw UsageError("anchor M needs --m x,y");
                        plan.anchors.push_back(
                            {role, role == AnchorRole::arbitrary ? Point{ver_m[0], ver_m[1]} : Point{}});
                    }
                }
            }
            plan.threads = ver_threads;
            checked([&] {
                plan.validate();
                for (const auto& id : plan.ids) catalog().lookup(id);
            });

            const auto reports = run_catalog(plan);
            const json doc = run_document(plan, reports, ver_series);
            if (ver_out.empty()) {
                out << doc.dump(1) << '\n';
            } else {
                auto f = open_out(ver_out);
                f << doc.dump(1) << '\n';
            }
            const auto& s = doc["summary"];
            err << s["reports"] << " reports, " << s["passed"] << " passed, " << s["failed"] << " failed, "
                << s["flagged"] << " flagged\n";
            return s["failed"] == 0 ? kExitOk : kExitFailure;
        }

        if (report_cmd->parsed()) {
            std::ifstream f(report_in);
            if (!f) throw UsageError("cannot read " + report_in);
            json doc;
            try {
                doc = json::parse(f);
            } catch (const json::exception& e) {
                err << "error: not JSON: " << e.what() << '\n';
                return kExitFailure;
            }
            const auto problems = validate_run_document(doc);
            if (!problems.empty()) {
                for (const auto& p : problems) err << "error: " << p << '\n';
                return kExitFailure;
            }
            render_report(doc, report_failures, out);
            return kExitOk;
        }

        if (serve_cmd->parsed()) {
            Service service({host, port, static_dir});
            const int bound = service.bind();
            out << "listening on http://" << host << ':' << bound << '\n' << std::flush;
            service.run();
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace poncelet
