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


#include "poncelet/service.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>

#include "httplib.h"
#include "poncelet/errors.hpp"
#include "poncelet/serialize.hpp"

namespace poncelet {

using nlohmann::json;

namespace {

struct BadRequest : Error {
    BadRequest(std::string param, const std::string& what) : Error(what), param(std::move(param)) {}
    std::string param;
};

std::optional<std::string> param(const QueryParams& q, const std::string& key) {
    auto it = q.find(key);
    if (it == q.end()) return std::nullopt;
    return it->second;
}

double number(const QueryParams& q, const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto raw = param(q, key);
    if (!raw) {
        if (fallback) return *fallback;
        throw BadRequest(key, "missing parameter '" + key + "'");
    }
    char* end = nullptr;
    const double v = std::strtod(raw->c_str(), &end);
    if (raw->empty() || *end != '\0' || !std::isfinite(v)) throw BadRequest(key, "'" + key + "' is not a finite number");
    return v;
}

int integer(const QueryParams& q, const std::string& key, std::optional<int> fallback = std::nullopt) {
    const double v = number(q, key, fallback ? std::optional<double>(*fallback) : std::nullopt);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw BadRequest(key, "'" + key + "' is not an integer");
    return static_cast<int>(v);
}

BilliardConfig config_of(const QueryParams& q) {
    BilliardConfig c{number(q, "a"), number(q, "b"), integer(q, "n"), integer(q, "w", 1)};
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw BadRequest("a,b,n,w", e.what());
    }
    return c;
}

// Reduced mod 2 pi and snapped to 1e-12 so that t and t + 2 pi name the same sample.
double canonical_t(double t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    r = std::round(r * 1e12) / 1e12;
    return r >= two_pi ? 0.0 : r;
}

AnchorRole role_of(const std::string& token, const std::string& key) {
    try {
        return anchor_role_from_string(token);
    } catch (const Error&) {
        throw BadRequest(key, "unknown anchor '" + token + "'");
    }
}

AnchorPoint anchor_of(const std::string& token, const QueryParams& q, const OrbitFamily& family,
                      const std::string& key) {
    const AnchorRole role = role_of(token, key);
    if (role == AnchorRole::none) throw BadRequest(key, "anchor required");
    Point m{};
    if (role == AnchorRole::arbitrary) m = {number(q, "mx"), number(q, "my")};
    return make_anchor(role, family, m);
}

Polygon layer(const std::string& token, const QueryParams& q, const OrbitFamily& family, const OrbitSample& s) {
    const auto colon = token.find(':');
    const std::string kind = token.substr(0, colon);
    const std::string where = colon == std::string::npos ? "" : token.substr(colon + 1);
    auto anchored = [&](const char* fallback) {
        return anchor_of(where.empty() ? fallback : where, q, family, "layers").position;
    };
    auto focal = [&] {
        const AnchorRole r = role_of(where.empty() ? "f1" : where, "layers");
        if (r != AnchorRole::f1 && r != AnchorRole::f2) throw BadRequest("layers", kind + " needs a billiard focus");
        return make_anchor(r, family).position;
    };
    const bool unanchored = kind == "outer" || kind == "inner" || kind == "evolute" || kind == "ellipse_inverse";
    if (unanchored && !where.empty()) throw BadRequest("layers", kind + " takes no anchor");

    if (kind == "outer") return outer_polygon(s, family.billiard);
    if (kind == "inner") return inner_polygon(s);
    if (kind == "evolute") return evolute_polygon(s.vertices);
    if (kind == "ellipse_inverse") return ellipse_inverse_polygon(outer_polygon(s, family.billiard), family.billiard);
    if (kind == "pedal") return pedal_polygon(s.vertices, anchored("O"));
    if (kind == "antipedal") return antipedal_polygon(s.vertices, anchored("O"));
    if (kind == "inversive") return inversive_polygon(s.vertices, anchored("f1"));
    if (kind == "polar") return polar_polygon(s, focal());
    if (kind == "dual") return dual_polygon(s, family.billiard, focal());
    throw BadRequest("layers", "unknown layer '" + kind + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = s.find(sep, start);
        const auto piece = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!piece.empty()) out.push_back(piece);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

json family_summary(const OrbitFamily& f) {
    json out = family_json(f);
    out.erase("seed");
    return out;
}

json api_family(const QueryParams& q) {
    return family_summary(*shared_family_cache().get(config_of(q)));
}

json api_orbit(const QueryParams& q) {
    const BilliardConfig config = config_of(q);
    const double t = canonical_t(number(q, "t", 0.0));
    const std::vector<std::string> tokens = split(param(q, "layers").value_or(""), ',');
    const auto family = shared_family_cache().get(config);
    const OrbitSample sample = orbit_at(*family, t);
    json out = sample_json(sample);
    out["family"] = family_summary(*family);
    json layers = json::object();
    for (const auto& token : tokens) {
        try {
            layers[token] = to_json(layer(token, q, *family, sample));
        } catch (const DegenerateError& e) {
            throw DegenerateError("layer " + token + ": " + e.what());
        }
    }
    out["layers"] = layers;
    return out;
}

json api_invariants(const QueryParams& q) {
    const BilliardConfig config = config_of(q);
    const int samples = integer(q, "samples", 64);
    if (samples < 8 || samples > 4096) throw BadRequest("samples", "samples must lie in [8, 4096]");
    const double tol_rel = 1e-8, tol_abs = 1e-10;
    const auto family = shared_family_cache().get(config);
    const std::string anchor_token = param(q, "anchor").value_or("O");
    const AnchorPoint anchor = anchor_of(anchor_token, q, *family, "anchor");
    const auto locus = outer_locus_foci(*family);

    json rows = json::array();
    for (const auto& spec : catalog().list()) {
        const AnchorPoint used = spec.anchors == AnchorSet::none ? AnchorPoint{AnchorRole::none, {}} : anchor;
        json row{{"id", spec.id},
                 {"expression", spec.expression},
                 {"which_n", to_string(spec.condition)},
                 {"anchors", to_string(spec.anchors)},
                 {"closed_form", spec.closed_form_text}};
        const bool n_ok = holds(spec.condition, config.n);
        const bool m_ok = anchor_admissible(spec.anchors, used.role);
        row["admissible"] = n_ok && m_ok;
        if (!n_ok || !m_ok) {
            row["reason"] = !n_ok ? "which N" : "anchor";
            rows.push_back(std::move(row));
            continue;
        }
        try {
            const Series s = sweep_quantity(*family, spec.id, used, samples, 1e-3, locus);
            const Classification c = classify(s.points, tol_rel, tol_abs);
            json values = json::array();
            for (const auto& p : s.points) values.push_back({{"t", p.t}, {"value", p.values.size() == 1 ? json(p.values[0]) : json(p.values)}});
            row["values"] = values;
            row["mean"] = c.mean.size() == 1 ? json(c.mean[0]) : json(c.mean);
            row["max_rel_dev"] = c.max_rel_dev;
            row["verdict"] = to_string(c.verdict);
            row["n_skipped"] = s.skipped.size();
        } catch (const DegenerateError& e) {
            row["verdict"] = to_string(Verdict::degenerate);
            row["reason"] = e.what();
        }
        if (!spec.discrepancy.empty()) row["flag"] = spec.discrepancy;
        rows.push_back(std::move(row));
    }
    return {{"family", family_summary(*family)}, {"anchor", to_json(anchor)}, {"samples", samples}, {"rows", rows}};
}

json error_body(const std::string& kind, const std::string& reason, const std::string& param = {}) {
    json out{{"error", kind}, {"reason", reason}};
    if (!param.empty()) out["param"] = param;
    return out;
}

}  // namespace

ApiResponse handle_api(const std::string& path, const QueryParams& query) {
    try {
        json body;
        if (path == "/api/family") {
            body = api_family(query);
        } else if (path == "/api/orbit") {
            body = api_orbit(query);
        } else if (path == "/api/invariants") {
            body = api_invariants(query);
        } else if (path == "/api/catalog") {
            body = catalog_json();
        } else {
            return {404, error_body("not_found", "no endpoint " + path).dump()};
        }
        return {200, body.dump()};
    } catch (const BadRequest& e) {
        return {400, error_body("bad_request", e.what(), e.param).dump()};
    } catch (const DomainError& e) {
        return {400, error_body("bad_request", e.what()).dump()};
    } catch (const Error& e) {
        return {422, error_body("unprocessable", e.what()).dump()};
    }
}

int default_port() {
    if (const char* env = std::getenv("PONCELET_PORT")) {
        char* end = nullptr;
        const long p = std::strtol(env, &end, 10);
        if (*env != '\0' && *end == '\0' && p > 0 && p < 65536) return static_cast<int>(p);
    }
    return 8080;
}

struct Service::Impl {
    ServiceOptions options;
    httplib::Server server;
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->options = std::move(options);
    auto& svr = impl_->server;
    svr.Get(R"(/api/[a-z]+)", [](const httplib::Request& req, httplib::Response& res) {
        QueryParams q(req.params.begin(), req.params.end());
        const ApiResponse r = handle_api(req.path, q);
        res.status = r.status;
        if (r.status == 200) res.set_header("Cache-Control", "public, max-age=86400");
        res.set_content(r.body, "application/json");
    });
    if (!impl_->options.static_dir.empty() && !svr.set_mount_point("/", impl_->options.static_dir))
        throw Error("static directory not found: " + impl_->options.static_dir);
}

Service::~Service() { stop(); }

int Service::bind() {
    auto& o = impl_->options;
    if (o.port == 0) {
        o.port = impl_->server.bind_to_any_port(o.host);
        if (o.port <= 0) throw Error("cannot bind " + o.host);
    } else if (!impl_->server.bind_to_port(o.host, o.port)) {
        throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
    }
    return o.port;
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace poncelet
