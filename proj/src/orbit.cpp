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


#include "poncelet/orbit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "poncelet/errors.hpp"

namespace poncelet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClosureTol = 1e-9;
constexpr double kJoachimsthalTol = 1e-8;

// Eccentric angles t_1..t_n of the seed orbit through (a, 0). The orbit is
// symmetric about the x axis; for even n it is also symmetric about the y axis.
std::vector<double> expand_angles(int n, int w, std::span<const double> free) {
    std::vector<double> t(static_cast<std::size_t>(n) + 1, 0.0);  // 1-based
    const double full = 2.0 * kPi * w;
    std::size_t k = 0;
    if (n % 2 == 1) {
        for (int i = 2; i <= (n + 1) / 2; ++i) t[i] = free[k++];
    } else {
        const double half = kPi * w;
        const int h = n / 2;
        for (int i = 2; i <= h; ++i) {
            if (i <= n / 4 + 1) {
                t[i] = (n % 4 == 0 && i == n / 4 + 1) ? 0.5 * half : free[k++];
            } else {
                t[i] = half - t[h + 2 - i];
            }
        }
        t[h + 1] = half;
    }
    for (int i = 2; i <= (n + 1) / 2; ++i) t[n + 2 - i] = full - t[i];
    t.erase(t.begin());
    return t;
}

Polygon polygon_from_angles(const Ellipse& e, std::span<const double> t) {
    std::vector<Point> v;
    v.reserve(t.size());
    for (double ti : t) v.push_back(e.at(ti));
    return Polygon(std::move(v));
}

std::vector<double> bisection_residuals(const Ellipse& e, const Polygon& poly) {
    const long n = static_cast<long>(poly.size());
    std::vector<double> r(poly.size());
    for (long i = 0; i < n; ++i) {
        const Point p = poly.at_cyclic(i);
        const Vec u_prev = normalized(poly.at_cyclic(i - 1) - p);
        const Vec u_next = normalized(poly.at_cyclic(i + 1) - p);
        const Vec diff = u_prev - u_next;
        const double len = norm(diff);
        // Coincident directions: the vertex is a cusp, maximally wrong.
        r[static_cast<std::size_t>(i)] = len == 0.0 ? 1.0 : dot(ellipse_normal(e, p), diff / len);
    }
    return r;
}

double sum_sq(std::span<const double> r) {
    return std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
}

struct Objective {
    const Ellipse& e;
    int n;
    int w;

    std::vector<double> residuals(std::span<const double> x) const {
        const auto t = expand_angles(n, w, x);
        return bisection_residuals(e, polygon_from_angles(e, t));
    }
    double error(std::span<const double> x) const { return sum_sq(residuals(x)); }
};

struct LmResult {
    std::vector<double> x;
    double error;
    int iterations;
};

LmResult levenberg_marquardt(const Objective& f, std::vector<double> x, const SolverOptions& opt) {
    const std::size_t k = x.size();
    auto r = f.residuals(x);
    double err = sum_sq(r);
    if (k == 0) return {x, err, 0};

    const std::size_t m = r.size();
    double mu = 1e-3;
    int it = 0;
    for (; it < opt.max_iterations && err > 1e-30; ++it) {
        Eigen::MatrixXd jac(m, k);
        for (std::size_t j = 0; j < k; ++j) {
            const double h = 1e-7;
            auto xp = x;
            auto xm = x;
            xp[j] += h;
            xm[j] -= h;
            const auto rp = f.residuals(xp);
            const auto rm = f.residuals(xm);
            for (std::size_t i = 0; i < m; ++i) jac(i, j) = (rp[i] - rm[i]) / (2.0 * h);
        }
        const Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(m));
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * rv;

        bool accepted = false;
        double step_norm = 0.0;
        while (mu < 1e12) {
            Eigen::MatrixXd lhs = jtj;
            lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
            const Eigen::VectorXd delta = lhs.ldlt().solve(-g);
            auto trial = x;
            for (std::size_t j = 0; j < k; ++j) trial[j] += delta(static_cast<Eigen::Index>(j));
            auto rt = f.residuals(trial);
            const double et = sum_sq(rt);
            if (std::isfinite(et) && et < err) {
                x = std::move(trial);
                r = std::move(rt);
                err = et;
                step_norm = delta.norm();
                mu = std::max(mu / 3.0, 1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if (!accepted || step_norm < opt.step_tolerance) break;
    }
    return {x, err, it};
}

// Derivative-free fallback when the damped Gauss-Newton iteration stalls.
std::vector<double> nelder_mead(const Objective& f, std::vector<double> x0, int max_iter) {
    const std::size_t k = x0.size();
    std::vector<std::vector<double>> simplex(k + 1, x0);
    for (std::size_t j = 0; j < k; ++j) simplex[j + 1][j] += 0.05;
    std::vector<double> fv(k + 1);
    for (std::size_t i = 0; i <= k; ++i) fv[i] = f.error(simplex[i]);

    auto lerp = [&](const std::vector<double>& from, const std::vector<double>& to, double s) {
        std::vector<double> out(k);
        for (std::size_t j = 0; j < k; ++j) out[j] = from[j] + s * (to[j] - from[j]);
        return out;
    };

    for (int it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> order(k + 1);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return fv[i] < fv[j]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[k - 1];
        if (fv[best] < 1e-30) break;

        std::vector<double> centroid(k, 0.0);
        for (std::size_t i : order)
            if (i != worst)
                for (std::size_t j = 0; j < k; ++j) centroid[j] += simplex[i][j] / static_cast<double>(k);

        const auto refl = lerp(centroid, simplex[worst], -1.0);
        const double fr = f.error(refl);
        if (fr < fv[best]) {
            const auto exp = lerp(centroid, simplex[worst], -2.0);
            const double fe = f.error(exp);
            if (fe < fr) { simplex[worst] = exp; fv[worst] = fe; }
            else { simplex[worst] = refl; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            simplex[worst] = refl;
            fv[worst] = fr;
        } else {
            const auto con = lerp(centroid, simplex[worst], 0.5);
            const double fc = f.error(con);
            if (fc < fv[worst]) {
                simplex[worst] = con;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= k; ++i) {
                    if (i == best) continue;
                    simplex[i] = lerp(simplex[best], simplex[i], 0.5);
                    fv[i] = f.error(simplex[i]);
                }
            }
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    return simplex[static_cast<std::size_t>(it - fv.begin())];
}

int gcd(int p, int q) { return q == 0 ? p : gcd(q, p % q); }

}  // namespace

void BilliardConfig::validate() const {
    if (!(b > 0.0) || !(a > b) || !std::isfinite(a))
        throw DomainError("billiard requires a > b > 0");
    if (n < 3) throw DomainError("periodicity n must be at least 3");
    if (rotation_number < 1 || 2 * rotation_number >= n || gcd(n, rotation_number) != 1)
        throw DomainError("rotation number must satisfy 1 <= w < n/2 and gcd(n, w) = 1");
}

Ellipse caustic_from_segment(const Ellipse& billiard, Point p1, Point p2) {
    const Line line = Line::through(p1, p2);
    const Vec nrm = line.normal();
    const double a2 = billiard.a() * billiard.a();
    const double b2 = billiard.b() * billiard.b();
    // (a^2 u^2 + b^2 v^2 - 1) / (u^2 + v^2) with (u, v) = normal / offset.
    const double lambda = a2 * nrm.x * nrm.x + b2 * nrm.y * nrm.y - line.offset() * line.offset();
    if (!(lambda > 0.0) || !(lambda < b2 * (1.0 - 1e-12)))
        throw DomainError("segment is not tangent to a confocal ellipse (lambda = " +
                          std::to_string(lambda) + ")");
    return Ellipse(std::sqrt(a2 - lambda), std::sqrt(b2 - lambda));
}

double bisection_error(const Ellipse& billiard, const Polygon& vertices) {
    return sum_sq(bisection_residuals(billiard, vertices));
}

std::size_t seed_parameter_count(int n) {
    if (n % 2 == 1) return static_cast<std::size_t>(n / 2);
    return static_cast<std::size_t>(n % 4 == 0 ? n / 4 - 1 : n / 4);
}

SeedOrbit solve_seed_orbit(const BilliardConfig& config, const SolverOptions& options) {
    config.validate();
    const Ellipse e = config.billiard();
    const int n = config.n;
    const int w = config.rotation_number;
    const Objective f{e, n, w};

    // Evenly spaced eccentric angles; the free ones are t_2, t_3, ...
    std::vector<double> x(seed_parameter_count(n));
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = 2.0 * kPi * w * static_cast<double>(j + 1) / n;

    auto lm = levenberg_marquardt(f, x, options);
    bool used_simplex = false;
    if (!(lm.error < options.tolerance)) {
        used_simplex = true;
        auto polished = levenberg_marquardt(f, nelder_mead(f, lm.x, 20000), options);
        polished.iterations += lm.iterations;
        lm = std::move(polished);
    }
    if (!(lm.error < options.tolerance))
        throw SolverError("seed orbit did not converge", lm.error);

    return {polygon_from_angles(e, expand_angles(n, w, lm.x)), lm.error, lm.iterations,
            used_simplex, x.size()};
}

Point ccw_tangency(const Ellipse& caustic, Point p) {
    // Scale the caustic to the unit circle, take the tangent point on the
    // counterclockwise side, scale back.
    const Point q{p.x / caustic.a(), p.y / caustic.b()};
    const double q2 = dot(q, q);
    if (!(q2 > 1.0)) throw DomainError("tangent from a point inside the caustic");
    const Point tp = (q + std::sqrt(q2 - 1.0) * perp(q)) / q2;
    return {tp.x * caustic.a(), tp.y * caustic.b()};
}

Point second_intersection(const Ellipse& e, Point p, Vec d) {
    const double ia2 = 1.0 / (e.a() * e.a());
    const double ib2 = 1.0 / (e.b() * e.b());
    const double dad = d.x * d.x * ia2 + d.y * d.y * ib2;
    const double pad = p.x * d.x * ia2 + p.y * d.y * ib2;
    return p + (-2.0 * pad / dad) * d;
}

double closure_angle_excess(const BilliardConfig& config, double a_caustic) {
    const Ellipse e = config.billiard();
    const double c2 = e.c() * e.c();
    const Ellipse caustic(a_caustic, std::sqrt(a_caustic * a_caustic - c2));
    Point p{e.a(), 0.0};
    double swept = 0.0;
    for (int i = 0; i < config.n; ++i) {
        const Point q = second_intersection(e, p, ccw_tangency(caustic, p) - p);
        const Point ps{p.x / e.a(), p.y / e.b()};
        const Point qs{q.x / e.a(), q.y / e.b()};
        swept += std::atan2(cross(ps, qs), dot(ps, qs));
        p = q;
    }
    return swept - 2.0 * kPi * config.rotation_number;
}

Ellipse caustic_by_closure(const BilliardConfig& config) {
    config.validate();
    const Ellipse e = config.billiard();
    const double c = e.c();
    double lo = c + 1e-12 * e.a();
    double hi = e.a() * (1.0 - 1e-14);
    double flo = closure_angle_excess(config, lo);
    const double fhi = closure_angle_excess(config, hi);
    if (!(flo > 0.0 && fhi < 0.0))
        throw NotFoundError("closure error has no sign change for this rotation number");
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = closure_angle_excess(config, mid);
        if (fm > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double ac = 0.5 * (lo + hi);
    return Ellipse(ac, std::sqrt(ac * ac - c * c));
}

double joachimsthal_product(const Ellipse& billiard, Point x, Vec v) {
    return x.x * v.x / (billiard.a() * billiard.a()) + x.y * v.y / (billiard.b() * billiard.b());
}

OrbitFamily build_family(const BilliardConfig& config) {
    const SeedOrbit seed = solve_seed_orbit(config);
    const Ellipse billiard = config.billiard();
    const Ellipse caustic = caustic_from_segment(billiard, seed.vertices[0], seed.vertices[1]);
    const double a = billiard.a();
    const double b = billiard.b();
    const double ac = caustic.a();
    const double j = std::sqrt((a - ac) * (a + ac)) / (a * b);

    const long n = static_cast<long>(seed.vertices.size());
    for (long i = 0; i < n; ++i) {
        const Point x = seed.vertices.at_cyclic(i);
        const Vec v = normalized(x - seed.vertices.at_cyclic(i - 1));
        const double jx = joachimsthal_product(billiard, x, v);
        if (std::abs(jx - j) > kJoachimsthalTol)
            throw ConsistencyError("Joachimsthal cross-check failed: <Ax,v> = " + std::to_string(jx) +
                                   ", J = " + std::to_string(j));
    }
    return {config, billiard, caustic, perimeter(seed.vertices), j, seed.vertices};
}

OrbitSample orbit_at(const OrbitFamily& family, double t) {
    const Ellipse& e = family.billiard;
    const int n = family.config.n;
    std::vector<Point> verts;
    std::vector<Point> touch;
    verts.reserve(static_cast<std::size_t>(n));
    touch.reserve(static_cast<std::size_t>(n));
    Point p = e.at(t);
    for (int i = 0; i < n; ++i) {
        const Point tp = ccw_tangency(family.caustic, p);
        verts.push_back(p);
        touch.push_back(tp);
        p = second_intersection(e, p, tp - p);
    }
    const double closure = distance(p, verts.front());
    if (!(closure < kClosureTol))
        throw ConsistencyError("trajectory does not close (error " + std::to_string(closure) + ")");
    return {t, Polygon(std::move(verts)), Polygon(std::move(touch)), closure};
}

OrbitResiduals check_sample(const OrbitFamily& family, const OrbitSample& sample) {
    OrbitResiduals res;
    const Ellipse& e = family.billiard;
    const double big_a = family.caustic.a() * family.caustic.a();
    const double big_b = family.caustic.b() * family.caustic.b();
    const Polygon& poly = sample.vertices;
    const long n = static_cast<long>(poly.size());
    for (long i = 0; i < n; ++i) {
        const Point p = poly.at_cyclic(i);
        res.on_billiard = std::max(res.on_billiard, std::abs(e.implicit(p)));
        const auto [u, v] = Line::through(p, poly.at_cyclic(i + 1)).uv();
        res.tangency = std::max(res.tangency, std::abs(big_a * u * u + big_b * v * v - 1.0));
        const Vec bis = normalized(normalized(poly.at_cyclic(i - 1) - p) + normalized(poly.at_cyclic(i + 1) - p));
        res.reflection = std::max(res.reflection, std::abs(cross(ellipse_normal(e, p), bis)));
        const double jx = joachimsthal_product(e, p, normalized(p - poly.at_cyclic(i - 1)));
        res.joachimsthal_spread =
            std::max(res.joachimsthal_spread, std::abs(jx - family.joachimsthal) / family.joachimsthal);
    }
    res.closure = sample.closure_error;
    return res;
}

std::shared_ptr<const OrbitFamily> FamilyCache::get(const BilliardConfig& config) {
    const Key key{config.a, config.b, config.n, config.rotation_number};
    {
        std::shared_lock lock(mutex_);
        if (auto it = families_.find(key); it != families_.end()) {
            const OrbitFamily& f = *it->second;
            const double ac = f.caustic.a();
            const double j = std::sqrt((f.billiard.a() - ac) * (f.billiard.a() + ac)) /
                             (f.billiard.a() * f.billiard.b());
            const double confocal = ac * ac - f.caustic.b() * f.caustic.b() - f.billiard.c() * f.billiard.c();
            if (std::abs(j - f.joachimsthal) > kJoachimsthalTol || std::abs(confocal) > 1e-12)
                throw ConsistencyError("cached family failed re-verification");
            return it->second;
        }
    }
    auto fam = std::make_shared<const OrbitFamily>(build_family(config));
    std::unique_lock lock(mutex_);
    return families_.try_emplace(key, std::move(fam)).first->second;
}

std::size_t FamilyCache::size() const {
    std::shared_lock lock(mutex_);
    return families_.size();
}

void FamilyCache::clear() {
    std::unique_lock lock(mutex_);
    families_.clear();
}

FamilyCache& shared_family_cache() {
    static FamilyCache cache;
    return cache;
}

}  // namespace poncelet
