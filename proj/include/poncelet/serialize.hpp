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


// JSON and CSV forms of families, samples, plans and reports.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "poncelet/sweep.hpp"

namespace poncelet {

inline constexpr int kReportSchemaVersion = 1;

/// printf-style %.17g; enough digits to round-trip any double.
std::string format_double(double v);

nlohmann::json to_json(Point p);
nlohmann::json to_json(const Polygon& poly);
nlohmann::json to_json(const BilliardConfig& config);
nlohmann::json to_json(const AnchorPoint& anchor);

/// {a, b, n, w, a_c, b_c, J, L, seed}.
nlohmann::json family_json(const OrbitFamily& family);
/// {t, orbit, tangency, closure_error}.
nlohmann::json sample_json(const OrbitSample& sample);

nlohmann::json plan_json(const SweepPlan& plan);
/// Inverse of plan_json. Throws DomainError on malformed input.
SweepPlan plan_from_json(const nlohmann::json& doc);

/// 16 hex digits of FNV-1a over the serialized plan; threads excluded.
std::string run_id(const SweepPlan& plan);

/// Series are embedded for flagged rows, or for every row when `with_series`.
nlohmann::json report_json(const InvariantReport& report, double tol_rel, bool with_series = false);
nlohmann::json run_document(const SweepPlan& plan, const std::vector<InvariantReport>& reports,
                            bool with_series = false);

/// Empty when the document has the shape `verify` writes; otherwise the list
/// of problems found.
std::vector<std::string> validate_run_document(const nlohmann::json& doc);

nlohmann::json catalog_json();

/// Header "t,value", "t,x,y" for point rows, or "t,<component>..." otherwise.
void write_series_csv(std::ostream& out, const Series& series, const std::vector<std::string>& components,
                      bool point_valued);

}  // namespace poncelet
