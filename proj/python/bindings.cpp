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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "poncelet/errors.hpp"
#include "poncelet/serialize.hpp"
#include "poncelet/service.hpp"
#include "poncelet/sweep.hpp"

namespace py = pybind11;
using namespace poncelet;

namespace {

using XY = std::pair<double, double>;

std::vector<XY> points(const Polygon& p) {
    std::vector<XY> out;
    for (const Point& q : p) out.emplace_back(q.x, q.y);
    return out;
}

std::shared_ptr<const OrbitFamily> family_of(double a, double b, int n, int w) {
    py::gil_scoped_release release;
    return shared_family_cache().get({a, b, n, w});
}

py::dict orbit(const OrbitFamily& f, double t) {
    const OrbitSample s = orbit_at(f, t);
    py::dict d;
    d["t"] = s.t;
    d["vertices"] = points(s.vertices);
    d["tangency"] = points(s.tangency_points);
    d["closure_error"] = s.closure_error;
    return d;
}

// Series of one catalog row; anchors are named as in the CLI.
py::dict sweep(const std::string& id, const OrbitFamily& f, const std::string& anchor, XY m, int samples,
               double offset) {
    const AnchorPoint a = make_anchor(anchor_role_from_string(anchor), f, {m.first, m.second});
    Series s;
    {
        py::gil_scoped_release release;
        std::optional<std::pair<Point, Point>> locus;
        if (id == "k906" || a.role == AnchorRole::f1_prime || a.role == AnchorRole::f2_prime)
            locus = outer_locus_foci(f);
        s = sweep_quantity(f, id, a, samples, offset, locus);
    }
    std::vector<double> t;
    std::vector<std::vector<double>> values;
    for (const auto& p : s.points) {
        t.push_back(p.t);
        values.push_back(p.values);
    }
    std::vector<std::pair<double, std::string>> skipped;
    for (const auto& k : s.skipped) skipped.emplace_back(k.t, k.reason);
    py::dict d;
    d["t"] = t;
    d["values"] = values;
    d["skipped"] = skipped;
    d["components"] = catalog().lookup(id).components;
    return d;
}

std::string verify(const std::vector<std::tuple<double, double, int>>& configs, int samples,
                   const std::vector<std::string>& ids, bool diagnostics, unsigned threads, bool series) {
    SweepPlan plan;
    for (const auto& [a, b, n] : configs) plan.configs.push_back({a, b, n});
    plan.t_samples = samples;
    plan.ids = ids;
    plan.diagnostics = diagnostics;
    plan.threads = threads;
    py::gil_scoped_release release;
    return run_document(plan, run_catalog(plan), series).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Periodic billiard trajectories in an ellipse: families, derived polygons, invariant sweeps";

    static py::exception<Error> base(m, "PonceletError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const NotFoundError& e) {
            PyErr_SetString(PyExc_KeyError, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<OrbitFamily, std::shared_ptr<OrbitFamily>>(m, "Family")
        .def_property_readonly("a", [](const OrbitFamily& f) { return f.billiard.a(); })
        .def_property_readonly("b", [](const OrbitFamily& f) { return f.billiard.b(); })
        .def_property_readonly("n", [](const OrbitFamily& f) { return f.config.n; })
        .def_property_readonly("w", [](const OrbitFamily& f) { return f.config.rotation_number; })
        .def_property_readonly("a_c", [](const OrbitFamily& f) { return f.caustic.a(); })
        .def_property_readonly("b_c", [](const OrbitFamily& f) { return f.caustic.b(); })
        .def_property_readonly("J", [](const OrbitFamily& f) { return f.joachimsthal; })
        .def_property_readonly("L", [](const OrbitFamily& f) { return f.perimeter; })
        .def_property_readonly("seed", [](const OrbitFamily& f) { return points(f.seed); })
        .def("__repr__", [](const OrbitFamily& f) {
            return "Family(a=" + format_double(f.billiard.a()) + ", b=" + format_double(f.billiard.b()) +
                   ", n=" + std::to_string(f.config.n) + ")";
        });

    m.def("family", [](double a, double b, int n, int w) {
        // The cache hands out const families; the binding copies the handle.
        return std::const_pointer_cast<OrbitFamily>(family_of(a, b, n, w));
    }, py::arg("a"), py::arg("b") = 1.0, py::arg("n"), py::arg("w") = 1);

    m.def("orbit", &orbit, py::arg("family"), py::arg("t") = 0.0, "vertices and caustic contacts at parameter t");
    m.def("sweep", &sweep, py::arg("id"), py::arg("family"), py::arg("anchor") = "-", py::arg("m") = XY{0, 0},
          py::arg("samples") = 128, py::arg("offset") = 1e-3);
    m.def("classify", [](const std::vector<std::vector<double>>& values, double tol_rel, double tol_abs) {
        std::vector<SeriesPoint> s;
        for (std::size_t i = 0; i < values.size(); ++i) s.push_back({static_cast<double>(i), values[i]});
        const Classification c = classify(s, tol_rel, tol_abs);
        return py::make_tuple(to_string(c.verdict), c.mean, c.max_rel_dev);
    }, py::arg("values"), py::arg("tol_rel") = 1e-8, py::arg("tol_abs") = 1e-10);

    m.def("verify_json", &verify, py::arg("configs"), py::arg("samples") = 128,
          py::arg("ids") = std::vector<std::string>{}, py::arg("diagnostics") = false, py::arg("threads") = 1u,
          py::arg("series") = false);
    m.def("validate_report_json", [](const std::string& text) {
        return validate_run_document(nlohmann::json::parse(text));
    });
    m.def("catalog_json", [] { return catalog_json().dump(); });
    m.def("api", [](const std::string& path, const std::map<std::string, std::string>& query) {
        ApiResponse r;
        {
            py::gil_scoped_release release;
            r = handle_api(path, QueryParams(query.begin(), query.end()));
        }
        return py::make_tuple(r.status, r.body);
    }, py::arg("path"), py::arg("query") = std::map<std::string, std::string>{});
}
