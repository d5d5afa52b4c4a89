#include "report.hpp"

#include <iomanip>
#include <sstream>

#include "flatlie/instance_io.hpp"
#include "flatlie/lie_algebra.hpp"

namespace flatlie::report {
namespace {

json condition(int id, const std::string& name, const ConditionResult& c) {
  return {{"id", id}, {"name", name}, {"status", "computed"}, {"defect", c.defect}, {"holds", c.holds}};
}

std::string num(double x, int precision = 3) {
  std::ostringstream os;
  if (x == 0.0) x = 0.0;  // no "-0"

  os << std::setprecision(precision) << x;
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string vec_text(const json& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i].get<double>(), 6);
  return s + ")";
}

void subspace_text(std::ostream& os, const std::string& label, const json& s) {
  os << label << ": dim " << s["dim"].get<int>();
  if (s["dim"].get<int>() > 0) {
    os << ", basis";
    for (const auto& col : s["basis"]) os << ' ' << vec_text(col);
  }
  os << '\n';
}

}  // namespace

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j) + 0.0);
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i) + 0.0);
  return out;
}

json subspace_json(const Subspace& s) {
  json cols = json::array();
  for (int j = 0; j < s.dim(); ++j) cols.push_back(vector_json(s.basis().col(j)));
  return {{"dim", s.dim()}, {"basis", std::move(cols)}};
}

json theorem_json(const TheoremReport& t) {
  json conditions = json::array();
  conditions.push_back(condition(1, "riemann-lie identity", t.riemann_lie));
  conditions.push_back({{"id", 2}, {"name", "riemann-poisson structure on the dual group"},
                        {"status", "equivalent-by-paper"}});
  conditions.push_back(condition(3, "parallel d(theta)", t.parallel_dtheta));
  conditions.push_back(condition(4, "flat metric", t.flat));
  json c5 = condition(5, "milnor splitting", t.milnor);
  c5["failed_clause"] = t.decomposition.succeeded() ? json(nullptr) : json(t.decomposition.failed_clause);
  conditions.push_back(std::move(c5));

  json decomposition = nullptr;
  if (const auto split = t.decomposition.split()) {
    decomposition = {{"s", subspace_json(split->first)}, {"u", subspace_json(split->second)}};
  }
  return {{"scale", t.scale},
          {"threshold", t.threshold},
          {"riemannian", t.riemannian},
          {"riemann_lie", t.is_riemann_lie()},
          {"consistent", t.consistent},
          {"conditions", std::move(conditions)},
          {"decomposition", std::move(decomposition)}};
}

json analysis_json(const catalog::Instance& inst, double tol) {
  const LieAlgebra& alg = inst.alg;
  const ScalarProduct& metric = *inst.metric;
  const TheoremReport t = classify(alg, metric, tol);
  const KillingForm k = killing_form(alg, tol);
  json out = {{"signature", {metric.n_plus(), metric.n_minus()}},
              {"banner", metric.riemannian() ? json(nullptr)
                                             : json("pseudo-Riemannian: equivalences not guaranteed")},
              {"theorem", theorem_json(t)},
              {"orthogonal_subalgebra", subspace_json(orthogonal_subalgebra(alg, metric, tol))},
              {"killing", {{"matrix", matrix_json(k.matrix)}, {"verdict", to_string(k.verdict)}}},
              {"center", subspace_json(center(alg, tol))},
              {"derived_algebra", subspace_json(derived_algebra(alg, tol))},
              {"derived_perp", subspace_json(derived_perp(alg, metric, tol))}};
  return out;
}

json equivalence_json(const YbEquivalenceReport& p) {
  return {{"threshold", p.threshold},
          {"schouten_norm", p.schouten_norm},
          {"morphism_defect", p.morphism_defect},
          {"s_r_subalgebra", p.s_r_subalgebra},
          {"delta_omega_defect", p.delta_omega ? json(*p.delta_omega) : json(nullptr)},
          {"morphism_identity_residual", p.morphism_identity_residual},
          {"delta_omega_identity_residual", p.delta_omega_identity_residual ? json(*p.delta_omega_identity_residual) : json(nullptr)},
          {"yang_baxter", p.yang_baxter},
          {"morphism", p.morphism},
          {"symplectic", p.symplectic},
          {"consistent", p.consistent}};
}

json dual_connection_json(const DualConnectionReport& e) {
  return {{"holds", e.holds},
          {"s_r_in_s_metric", e.s_r_in_s_metric},
          {"consistent", e.consistent},
          {"deviation", e.deviation},
          {"dual_curvature", e.dual_curvature},
          {"dual_rl_defect", e.dual_rl_defect},
          {"threshold", e.threshold}};
}

json bialgebra_json(const BialgebraReport& b) {
  return {{"r", matrix_json(b.r.matrix())},
          {"r_lines", bivector_lines(b.r)},
          {"threshold", b.threshold},
          {"schouten_norm", b.schouten_norm},
          {"dual_jacobi", b.dual_jacobi},
          {"image_matches", b.image_matches},
          {"dual_connection", dual_connection_json(b.dual_connection)},
          {"s_r_abelian", b.s_r_abelian},
          {"rpl_defect", b.rpl_defect},
          {"primal", theorem_json(b.primal)},
          {"dual", theorem_json(b.dual)},
          {"both_riemann_lie", b.both_riemann_lie},
          {"certified", b.certified}};
}

std::string bivector_lines(const Bivector& r) {
  std::string out;
  const auto& m = r.matrix();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0.0)
        out += "bivector " + std::to_string(i) + " " + std::to_string(j) + " " + io::format_number(m(i, j)) + "\n";
  return out;
}

std::string render_analysis(const json& rep) {
  std::ostringstream os;
  os << "instance: " << rep["input"]["name"].get<std::string>() << " (dim " << rep["input"]["dim"].get<int>()
     << ")\n";
  if (rep.contains("message")) return os.str();
  const json& a = rep["analysis"];
  const json& t = a["theorem"];
  os << "signature: (" << a["signature"][0].get<int>() << ", " << a["signature"][1].get<int>() << ")\n";
  if (!a["banner"].is_null()) os << "*** " << a["banner"].get<std::string>() << " ***\n";
  os << "threshold: " << num(t["threshold"].get<double>()) << " (tol " << num(rep["tolerance"].get<double>())
     << ", scale " << num(t["scale"].get<double>()) << ")\n";
  os << "RIEMANN-LIE: " << yes_no(t["riemann_lie"].get<bool>()) << '\n';
  for (const auto& c : t["conditions"]) {
    os << "  [" << c["id"].get<int>() << "] " << std::left << std::setw(46) << c["name"].get<std::string>();
    if (c["status"] == "computed") {
      os << "defect " << std::setw(10) << num(c["defect"].get<double>()) << (c["holds"].get<bool>() ? "holds" : "fails");
      if (c.contains("failed_clause") && !c["failed_clause"].is_null())
        os << " (clause: " << c["failed_clause"].get<std::string>() << ")";
    } else {
      os << "equivalent to [1], not computed";
    }
    os << '\n';
  }
  os << "consistency: "
     << (t["consistent"].get<bool>() ? "conditions agree"
                                     : (t["riemannian"].get<bool>() ? "CONDITIONS DISAGREE" : "conditions differ"))
     << '\n';
  subspace_text(os, "orthogonal subalgebra", a["orthogonal_subalgebra"]);
  if (!t["decomposition"].is_null()) {
    subspace_text(os, "milnor S", t["decomposition"]["s"]);
    subspace_text(os, "milnor U", t["decomposition"]["u"]);
  }
  os << "killing form: " << a["killing"]["verdict"].get<std::string>() << '\n';
  subspace_text(os, "center", a["center"]);
  subspace_text(os, "derived algebra", a["derived_algebra"]);
  subspace_text(os, "derived perp", a["derived_perp"]);
  return os.str();
}

std::string render_yb(const json& rep) {
  std::ostringstream os;
  os << "instance: " << rep["input"]["name"].get<std::string>() << " (dim " << rep["input"]["dim"].get<int>()
     << ")\n";
  if (rep.contains("message")) return os.str();
  const json& y = rep["yb"];
  const json& p = y["equivalence"];
  os << "mode: " << y["mode"].get<std::string>() << '\n';
  os << "r:\n" << y["r_lines"].get<std::string>();
  os << "schouten norm: " << num(p["schouten_norm"].get<double>()) << " (threshold "
     << num(p["threshold"].get<double>()) << ")\n";
  os << "  (a) yang-baxter [r,r] = 0        " << yes_no(p["yang_baxter"].get<bool>()) << '\n';
  os << "  (b) r is a morphism              " << yes_no(p["morphism"].get<bool>()) << "  defect "
     << num(p["morphism_defect"].get<double>()) << '\n';
  os << "  (c) S_r symplectic subalgebra    " << yes_no(p["symplectic"].get<bool>());
  if (!p["delta_omega_defect"].is_null()) os << "  delta omega " << num(p["delta_omega_defect"].get<double>());
  if (!p["s_r_subalgebra"].get<bool>()) os << "  (S_r not a subalgebra)";
  os << '\n';
  os << "identity residuals: morphism " << num(p["morphism_identity_residual"].get<double>());
  if (!p["delta_omega_identity_residual"].is_null()) os << ", delta omega " << num(p["delta_omega_identity_residual"].get<double>());
  os << '\n';
  os << "verdicts agree: " << yes_no(p["consistent"].get<bool>()) << '\n';
  return os.str();
}

std::string render_bialgebra(const json& rep) {
  std::ostringstream os;
  os << "instance: " << rep["input"]["name"].get<std::string>() << " (dim " << rep["input"]["dim"].get<int>()
     << ")\n";
  if (rep.contains("message")) return os.str();
  const json& b = rep["bialgebra"];
  const json& e = b["dual_connection"];
  os << "r:\n" << b["r_lines"].get<std::string>();
  os << "threshold: " << num(b["threshold"].get<double>()) << '\n';
  os << "  schouten norm          " << num(b["schouten_norm"].get<double>()) << '\n';
  os << "  dual jacobi            " << num(b["dual_jacobi"].get<double>()) << '\n';
  os << "  Im r = S               " << yes_no(b["image_matches"].get<bool>()) << '\n';
  os << "  dual connection form   " << yes_no(e["holds"].get<bool>()) << "  deviation "
     << num(e["deviation"].get<double>()) << '\n';
  os << "  S_r in S_metric        " << yes_no(e["s_r_in_s_metric"].get<bool>()) << '\n';
  os << "  dual curvature         " << num(e["dual_curvature"].get<double>()) << '\n';
  os << "  dual riemann-lie       " << num(e["dual_rl_defect"].get<double>()) << '\n';
  os << "  S_r abelian            " << yes_no(b["s_r_abelian"].get<bool>()) << '\n';
  os << "  compatibility defect   " << num(b["rpl_defect"].get<double>()) << '\n';
  os << "primal RIEMANN-LIE: " << yes_no(b["primal"]["riemann_lie"].get<bool>()) << '\n';
  os << "dual RIEMANN-LIE: " << yes_no(b["dual"]["riemann_lie"].get<bool>()) << '\n';
  os << "both riemann-lie: " << yes_no(b["both_riemann_lie"].get<bool>()) << '\n';
  os << "CERTIFIED: " << yes_no(b["certified"].get<bool>()) << '\n';
  return os.str();
}

std::string render_validate(const json& rep) {
  std::ostringstream os;
  os << "instance: " << rep["input"]["name"].get<std::string>() << " (dim " << rep["input"]["dim"].get<int>()
     << ")\n";
  for (const auto& c : rep["checks"]) {
    os << "  " << std::left << std::setw(10) << c["field"].get<std::string>() << (c["passed"].get<bool>() ? "ok    " : "FAIL  ")
       << c["detail"].get<std::string>() << '\n';
  }
  return os.str();
}

std::string render_search(const json& rep) {
  std::ostringstream os;
  const json& s = rep["search"];
  os << "instance: " << rep["input"]["name"].get<std::string>() << " (dim " << rep["input"]["dim"].get<int>()
     << ")\n";
  os << "signature (" << s["signature"][0].get<int>() << ", " << s["signature"][1].get<int>() << "), "
     << s["starts"].get<int>() << " starts, target " << num(s["target"].get<double>()) << '\n';
  os << "found: " << yes_no(s["found"].get<bool>()) << ", best defect " << num(s["best_defect"].get<double>()) << '\n';
  if (!s["witness"].is_null()) {
    os << "witness metric:\n";
    for (const auto& row : s["witness"]) {
      os << ' ';
      for (const auto& x : row) os << ' ' << std::setw(12) << num(x.get<double>(), 6);
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace flatlie::report
