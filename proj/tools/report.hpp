#pragma once

#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "flatlie/catalog.hpp"
#include "flatlie/metric_geometry.hpp"
#include "flatlie/poisson.hpp"
#include "flatlie/subspace.hpp"

namespace flatlie::report {

using nlohmann::json;

inline constexpr const char* kSchema = "flatlie.report/1";

json matrix_json(const Eigen::MatrixXd& m);
json vector_json(const Eigen::VectorXd& v);
/// {"dim": p, "basis": [column, ...]}
json subspace_json(const Subspace& s);

/// Flatness conditions plus the structural extras shown by `analyze`.
json theorem_json(const TheoremReport& t);
json analysis_json(const catalog::Instance& inst, double tol);
json equivalence_json(const YbEquivalenceReport& p);
json dual_connection_json(const DualConnectionReport& e);
json bialgebra_json(const BialgebraReport& b);

/// "bivector i j v" lines for the nonzero upper triangle.
std::string bivector_lines(const Bivector& r);

/// Human summaries rendered from the json sections, so both views always
/// show the same numbers.
std::string render_analysis(const json& report);
std::string render_yb(const json& report);
std::string render_bialgebra(const json& report);
std::string render_validate(const json& report);
std::string render_search(const json& report);

}  // namespace flatlie::report
