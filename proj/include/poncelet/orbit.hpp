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

#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>

#include "poncelet/geometry.hpp"

namespace poncelet {

struct BilliardConfig {
    double a = 2.0;
    double b = 1.0;
    int n = 3;
    int rotation_number = 1;

    Ellipse billiard() const { return Ellipse(a, b); }
    /// Throws DomainError unless a > b > 0, n >= 3 and
    /// 1 <= rotation_number < n/2 with gcd(n, rotation_number) = 1.
    void validate() const;
    friend bool operator==(const BilliardConfig&, const BilliardConfig&) = default;
};

/// A solved Poncelet family of n-periodic billiard trajectories.
struct OrbitFamily {
    BilliardConfig config;
    Ellipse billiard{2.0, 1.0};
    Ellipse caustic{1.0, 1.0};
    double perimeter = 0.0;     // L
    double joachimsthal = 0.0;  // J
    Polygon seed;               // least-squares orbit with P1 = (a, 0)
};

/// One member of a family, started at eccentric angle t.
struct OrbitSample {
    double t = 0.0;
    Polygon vertices;        // P_i
    Polygon tangency_points; // P''_i, contact of side P_i P_{i+1} with the caustic
    double closure_error = 0.0;
};

struct SolverOptions {
    double tolerance = 1e-18;  // required bound on the squared bisection error
    double step_tolerance = 1e-13;
    int max_iterations = 500;
};

struct SeedOrbit {
    Polygon vertices;
    double bisection_error = 0.0;
    int iterations = 0;
    bool used_simplex = false;
    std::size_t free_parameters = 0;
};

/// Confocal ellipse x^2/(a^2-l) + y^2/(b^2-l) = 1 tangent to the line p1 p2.
/// Throws DomainError when the line is tangent to no confocal ellipse
/// (l outside (0, b^2), e.g. lines through a focus).
Ellipse caustic_from_segment(const Ellipse& billiard, Point p1, Point p2);

/// Sum over vertices of (n_i . b_i)^2 with n_i the billiard normal and b_i the
/// unit external bisector of the two incident sides (zero for a trajectory).
double bisection_error(const Ellipse& billiard, const Polygon& vertices);

/// Number of eccentric angles left free by the mirror symmetries of the orbit
/// through (a, 0).
std::size_t seed_parameter_count(int n);

/// Damped Gauss-Newton on the bisection error over the symmetry-reduced
/// eccentric angles, with a simplex fallback. Throws SolverError.
SeedOrbit solve_seed_orbit(const BilliardConfig& config, const SolverOptions& options = {});

/// Winding of n caustic-tangent steps from (a, 0) minus 2 pi w, for a trial
/// confocal caustic of major semi-axis a_caustic. Decreasing in a_caustic.
double closure_angle_excess(const BilliardConfig& config, double a_caustic);

/// Caustic located by bisection on closure_angle_excess over (c, a).
/// Independent of solve_seed_orbit. Throws NotFoundError.
Ellipse caustic_by_closure(const BilliardConfig& config);

/// <A x, v> with A = diag(1/a^2, 1/b^2).
double joachimsthal_product(const Ellipse& billiard, Point x, Vec v);

/// Throws ConsistencyError if the seed violates the Joachimsthal cross-check.
OrbitFamily build_family(const BilliardConfig& config);

/// Tangency point of the counterclockwise tangent from an exterior point p.
Point ccw_tangency(const Ellipse& caustic, Point p);
/// Second intersection of the line p + s d with the ellipse, p on the ellipse.
Point second_intersection(const Ellipse& e, Point p, Vec d);

/// Family member with P1 = (a cos t, b sin t). Throws ConsistencyError when
/// the trajectory fails to close within 1e-9.
OrbitSample orbit_at(const OrbitFamily& family, double t);

struct OrbitResiduals {
    double on_billiard = 0.0;    // max |implicit(P_i)|
    double tangency = 0.0;       // max |A u^2 + B v^2 - 1| over sides
    double reflection = 0.0;     // max |n_i x bisector_i|
    double joachimsthal_spread = 0.0;  // max |<Ax,v> - J| / J
    double closure = 0.0;
};

OrbitResiduals check_sample(const OrbitFamily& family, const OrbitSample& sample);

/// Memoized build_family. Concurrent readers, exclusive insertion.
class FamilyCache {
public:
    std::shared_ptr<const OrbitFamily> get(const BilliardConfig& config);
    std::size_t size() const;
    void clear();

private:
    using Key = std::tuple<double, double, int, int>;
    mutable std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const OrbitFamily>> families_;
};

FamilyCache& shared_family_cache();

}  // namespace poncelet
