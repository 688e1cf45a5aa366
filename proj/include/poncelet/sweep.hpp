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

#include <optional>
#include <string>
#include <vector>

#include "poncelet/catalog.hpp"

namespace poncelet {

enum class Verdict { invariant, not_invariant, degenerate };
std::string to_string(Verdict v);

/// An anchor as requested by a plan: foci are resolved per family.
struct AnchorRequest {
    AnchorRole role = AnchorRole::O;
    Point position;  // used by AnchorRole::arbitrary only
};

struct SweepPlan {
    std::vector<BilliardConfig> configs;
    int t_samples = 128;
    // The arbitrary M sits inside every grid caustic. Once a side sweeps
    // across M the signed pedal quantities jump, so a point outside the
    // caustic breaks the "all M" rows for reasons unrelated to the family.
    std::vector<AnchorRequest> anchors{{AnchorRole::O, {}}, {AnchorRole::f1, {}}, {AnchorRole::f2, {}},
                                       {AnchorRole::arbitrary, {0.1, 0.05}}};
    double tol_rel = 1e-8;
    double tol_abs = 1e-10;
    /// Offset of the uniform t grid away from the axis-symmetric positions.
    double t_offset = 1e-3;
    /// Evaluate rows whose "which N" excludes the config instead of the admissible ones.
    bool diagnostics = false;
    /// Restrict to these ids (empty: whole catalog).
    std::vector<std::string> ids;
    unsigned threads = 1;

    /// Throws DomainError.
    void validate() const;
};

struct SeriesPoint {
    double t = 0.0;
    std::vector<double> values;
};

struct SkippedSample {
    double t = 0.0;
    std::string reason;
};

struct Series {
    std::vector<SeriesPoint> points;
    std::vector<SkippedSample> skipped;
};

struct Classification {
    std::vector<double> mean;
    double max_rel_dev = 0.0;
    Verdict verdict = Verdict::degenerate;
};

struct InvariantReport {
    std::string id;
    BilliardConfig config;
    AnchorPoint anchor;
    std::vector<std::string> components;
    Series series;
    std::size_t n_skipped = 0;
    std::vector<double> mean;
    double max_rel_dev = 0.0;
    Verdict verdict = Verdict::degenerate;
    std::optional<double> closed_form;
    /// max over samples and components of |value - closed form| / max(1, |closed form|).
    std::optional<double> closed_form_residual;
    bool admissible = true;
    /// Non-empty for rows with a documented discrepancy; such rows never fail.
    std::string flag;
    /// Set when the family itself could not be built.
    std::string error;

    /// Admissible rows pass when invariant and matching their closed form;
    /// diagnostics rows pass when classified not invariant.
    bool passed(double tol_rel) const;
};

/// Uniform grid t_k = offset + 2 pi k / n.
std::vector<double> t_grid(int n, double offset);

/// Evaluates one catalog row over the grid. Samples whose construction
/// degenerates are recorded as skipped. Throws DegenerateError when more than
/// 10% of the samples are skipped.
Series sweep_quantity(const OrbitFamily& family, const std::string& id, const AnchorPoint& anchor, int n,
                      double t_offset = 1e-3,
                      std::optional<std::pair<Point, Point>> locus_foci = std::nullopt);

/// Invariant iff max |v_i - mean| / max(|mean|, tol_abs/tol_rel) < tol_rel for
/// every component.
Classification classify(const std::vector<SeriesPoint>& series, double tol_rel, double tol_abs);

/// Reports for every id x config x admissible anchor, ordered by (id, config,
/// anchor). Per-cell failures are recorded in the report, never thrown.
std::vector<InvariantReport> run_catalog(const SweepPlan& plan);

struct ProbeResult {
    std::string probe;
    BilliardConfig config;
    Classification classification;
};

struct NegativeControlReport {
    std::vector<ProbeResult> probes;
    bool ok() const;
};

/// Known non-invariants (orbit area, theta_1, sum of focal distances at odd N)
/// must classify not_invariant. Throws ConsistencyError otherwise when
/// `require` is set.
NegativeControlReport negative_control(const SweepPlan& plan, bool require = true);

/// The acceptance grid: n in {3..8} x a/b in
/// {1.25, 1.5, 2} with b = 1.
std::vector<BilliardConfig> acceptance_grid();

}  // namespace poncelet
