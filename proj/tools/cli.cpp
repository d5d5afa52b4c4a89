#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>

#include <CLI11.hpp>

#include "flatlie/catalog.hpp"
#include "flatlie/errors.hpp"
#include "flatlie/instance_io.hpp"
#include "report.hpp"

namespace flatlie::cli {
namespace {

using report::json;

struct Outcome {
  json report;
  int code = kPass;
};

json envelope(const std::string& command, double tol) {
  return {{"schema", report::kSchema}, {"command", command}, {"tolerance", tol}};
}

json input_echo(const std::string& path, const io::InstanceFile* f) {
  json in = {{"path", path}, {"name", ""}, {"dim", 0},
             {"sections", {{"metric", false}, {"bivector", false}, {"subspace", false}}}};
  if (f) {
    in["name"] = f->name;
    in["dim"] = f->dim;
    in["sections"] = {{"metric", f->metric.has_value()},
                      {"bivector", f->bivector.has_value()},
                      {"subspace", f->subspace.has_value()}};
  }
  return in;
}

void finish(Outcome& o, int code, const std::string& message = {}) {
  o.code = code;
  o.report["exit_code"] = code;
  o.report["status"] = code == kPass ? "ok" : (code == kDomainFailure ? "domain-failure" : "error");
  if (!message.empty()) o.report["message"] = message;
}

// Parses the file and runs `body`, mapping the library's exception types to
// exit codes. `body` fills the command section and returns the exit code.
Outcome guarded(const std::string& command, const std::string& path, double tol,
                const std::function<int(const io::InstanceFile&, Outcome&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{envelope(command, tol), kPass};
  o.report["input"] = input_echo(path, nullptr);
  try {
    const io::InstanceFile f = io::read_file(path);
    o.report["input"] = input_echo(path, &f);
    finish(o, body(f, o));
  } catch (const ParseError& e) {
    finish(o, kInputFailure, path + ": " + e.what());
  } catch (const InputError& e) {
    finish(o, kDomainFailure, e.what());
  } catch (const PreconditionError& e) {
    finish(o, kDomainFailure, e.what());
  } catch (const NumericalError& e) {
    finish(o, kDomainFailure, std::string("numerical check failed: ") + e.what());
  }
  o.report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return o;
}

void emit(const Outcome& o, bool as_json, const std::function<std::string(const json&)>& render, std::ostream& out,
          std::ostream& err) {
  if (as_json) {
    out << o.report.dump(2) << '\n';
    return;
  }
  if (o.code == kInputFailure) {
    err << "error: " << o.report["message"].get<std::string>() << '\n';
    return;
  }
  out << render(o.report);
  if (o.report.contains("message")) err << "error: " << o.report["message"].get<std::string>() << '\n';
}

Outcome validate(const std::string& path, double tol) {
  return guarded("validate", path, tol, [tol](const io::InstanceFile& f, Outcome& o) {
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& field, bool passed, const std::string& detail, json value = nullptr) {
      checks.push_back({{"field", field}, {"passed", passed}, {"detail", detail}, {"value", std::move(value)}});
      all = all && passed;
    };
    auto attempt = [&](const std::string& field, const std::function<std::string()>& fn) {
      try {
        add(field, true, fn());
      } catch (const InputError& e) {
        add(field, false, e.what());
      }
    };

    std::optional<LieAlgebra> alg;
    try {
      alg = LieAlgebra::from_brackets(f.dim, f.brackets);
    } catch (const InputError& e) {
      add("brackets", false, e.what());
    }
    if (alg) {
      const double c = alg->max_abs_constant();
      const double defect = jacobi_defect(*alg);
      const double threshold = tol * (1.0 + c * c);
      add("brackets", defect <= threshold,
          defect <= threshold ? "Jacobi identity holds" : "Jacobi identity fails: defect " + io::format_number(defect),
          defect);
    }
    if (f.metric) {
      attempt("metric", [&] {
        const ScalarProduct g(*f.metric, tol);
        return "symmetric, nondegenerate, signature (" + std::to_string(g.n_plus()) + ", " +
               std::to_string(g.n_minus()) + ")";
      });
    }
    if (f.bivector) {
      attempt("bivector", [&] {
        const Bivector r = Bivector::from_entries(f.dim, *f.bivector);
        return "antisymmetric, rank " + std::to_string(numerical_rank(r.matrix(), tol));
      });
    }
    if (f.subspace) {
      attempt("subspace", [&] {
        const SymplecticSubspace sf(Subspace(f.subspace->basis, tol), f.subspace->omega, tol);
        return "dimension " + std::to_string(sf.dim()) + ", omega nondegenerate";
      });
    }
    o.report["checks"] = std::move(checks);
    o.report["valid"] = all;
    return all ? kPass : kDomainFailure;
  });
}

Outcome analyze(const std::string& path, double tol) {
  return guarded("analyze", path, tol, [tol](const io::InstanceFile& f, Outcome& o) {
    const catalog::Instance inst = io::to_instance(f, tol);
    if (!inst.metric) throw InputError("instance has no metric section");
    o.report["analysis"] = report::analysis_json(inst, tol);
    const json& t = o.report["analysis"]["theorem"];
    // Disagreement only counts as a failure for positive-definite metrics.
    return (t["riemannian"].get<bool>() && !t["consistent"].get<bool>()) ? kDomainFailure : kPass;
  });
}

Outcome yb(const std::string& path, double tol, bool construct, const std::string& out_path) {
  return guarded("yb", path, tol, [&](const io::InstanceFile& f, Outcome& o) {
    catalog::Instance inst = io::to_instance(f, tol);
    std::optional<Bivector> r;
    if (construct) {
      if (!inst.symplectic) throw InputError("--construct needs a subspace section");
      r = subspace_form_to_r(*inst.symplectic);
    } else {
      if (!inst.bivector) throw InputError("--check needs a bivector section");
      r = inst.bivector;
    }
    o.report["yb"] = {{"mode", construct ? "construct" : "check"},
                      {"r", report::matrix_json(r->matrix())},
                      {"r_lines", report::bivector_lines(*r)},
                      {"equivalence", report::equivalence_json(prop21_report(inst.alg, *r, tol))}};
    if (!out_path.empty()) {
      inst.bivector = r;
      std::ofstream os(out_path);
      if (!(os << io::serialize(io::to_file(inst)))) throw ParseError("cannot write " + out_path, 0);
    }
    return kPass;
  });
}

Outcome bialgebra(const std::string& path, double tol) {
  return guarded("bialgebra", path, tol, [tol](const io::InstanceFile& f, Outcome& o) {
    const catalog::Instance inst = io::to_instance(f, tol);
    if (!inst.metric) throw InputError("instance has no metric section");
    if (!inst.symplectic) throw InputError("instance has no subspace section");
    const BialgebraReport b = bialgebra_report(inst.alg, *inst.metric, *inst.symplectic, tol);
    o.report["bialgebra"] = report::bialgebra_json(b);
    return b.certified ? kPass : kDomainFailure;
  });
}

Outcome search(const std::string& path, double tol, int n_plus, int n_minus, std::uint64_t seed, int starts,
               double target) {
  return guarded("search", path, tol, [&](const io::InstanceFile& f, Outcome& o) {
    const catalog::Instance inst = io::to_instance(f, tol);
    const auto res = catalog::search_metric(inst.alg, n_plus, n_minus, seed, starts, target);
    o.report["search"] = {{"signature", {n_plus, n_minus}},
                          {"seed", seed},
                          {"starts", res.starts},
                          {"target", target},
                          {"found", res.found},
                          {"best_defect", res.best_defect},
                          {"witness", res.witness ? report::matrix_json(*res.witness) : json(nullptr)}};
    return kPass;
  });
}

int write_instance(const catalog::Instance& inst, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
  const std::string text = io::serialize(io::to_file(inst));
  if (out_path.empty()) {
    out << text;
    return kPass;
  }
  std::ofstream os(out_path);
  if (!(os << text)) {
    err << "error: cannot write " << out_path << '\n';
    return kInputFailure;
  }
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemann-Lie classification and Yang-Baxter certification for Lie algebras", "flatlie"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  bool as_json = false;
  std::string out_path;
  std::uint64_t seed = 1;
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "base tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "print the machine report"); };

  std::string path;
  auto* v = app.add_subcommand("validate", "check the invariants of an instance file");
  v->add_option("path", path, "instance file")->required();
  add_tol(v);
  add_json(v);

  std::vector<std::string> paths;
  auto* a = app.add_subcommand("analyze", "classify (algebra, metric) against the five flatness conditions");
  a->add_option("paths", paths, "instance files, analysed concurrently")->required();
  add_tol(a);
  add_json(a);

  bool construct = false;
  bool check = false;
  auto* y = app.add_subcommand("yb", "Yang-Baxter report for a constructed or given r");
  y->add_option("path", path, "instance file")->required();
  auto* c1 = y->add_flag("--construct", construct, "build r from the subspace section");
  auto* c2 = y->add_flag("--check", check, "use the bivector section");
  c1->excludes(c2);
  y->add_option("--out", out_path, "write the instance with r attached");
  add_tol(y);
  add_json(y);

  auto* b = app.add_subcommand("bialgebra", "certify the bialgebra built from the subspace section");
  b->add_option("path", path, "instance file")->required();
  add_tol(b);
  add_json(b);

  int n_plus = 0;
  int n_minus = 0;
  int starts = 64;
  double target = 1e-8;
  auto* s = app.add_subcommand("search", "look for a metric of given signature with zero Riemann-Lie defect");
  s->add_option("path", path, "instance file (metric section ignored)")->required();
  s->add_option("--plus", n_plus, "positive directions")->required()->check(CLI::NonNegativeNumber);
  s->add_option("--minus", n_minus, "negative directions")->required()->check(CLI::NonNegativeNumber);
  s->add_option("--starts", starts, "random starts")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--target", target, "defect to reach")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--seed", seed, "seed")->capture_default_str();
  add_tol(s);
  add_json(s);

  auto* g = app.add_subcommand("generate", "write a reproducible instance file");
  g->require_subcommand(1);
  std::string name;
  int p = 0;
  int q = 0;
  auto* gf = g->add_subcommand("flat", "random flat semidirect product");
  gf->add_option("--p", p, "rotating directions")->required();
  gf->add_option("--q", q, "abelian ideal dimension")->required();
  auto* gm = g->add_subcommand("metric", "named algebra with a random metric");
  gm->add_option("name", name, "catalog name")->required();
  gm->add_option("--plus", n_plus, "positive directions (default: all)");
  gm->add_option("--minus", n_minus, "negative directions")->capture_default_str();
  auto* gn = g->add_subcommand("named", "catalog algebra with the identity metric");
  gn->add_option("name", name, "catalog name")->required();
  for (auto* sub : {gf, gm, gn}) {
    sub->add_option("--seed", seed, "seed")->capture_default_str();
    sub->add_option("--out", out_path, "output path (default: stdout)");
  }

  std::vector<const char*> argv{"flatlie"};
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputFailure;
  }

  if (*v) {
    const Outcome o = validate(path, tol);
    emit(o, as_json, report::render_validate, out, err);
    return o.code;
  }
  if (*a) {
    std::vector<std::future<Outcome>> jobs;
    for (const auto& one : paths) jobs.push_back(std::async(std::launch::async, analyze, one, tol));
    std::vector<Outcome> done;
    for (auto& job : jobs) done.push_back(job.get());
    int code = kPass;
    for (const auto& o : done) code = std::max(code, o.code);
    if (done.size() == 1) {
      emit(done.front(), as_json, report::render_analysis, out, err);
    } else if (as_json) {
      json batch = envelope("analyze-batch", tol);
      batch["reports"] = json::array();
      for (const auto& o : done) batch["reports"].push_back(o.report);
      batch["exit_code"] = code;
      batch["status"] = code == kPass ? "ok" : (code == kDomainFailure ? "domain-failure" : "error");
      out << batch.dump(2) << '\n';
    } else {
      for (std::size_t i = 0; i < done.size(); ++i) {
        if (i) out << '\n';
        emit(done[i], false, report::render_analysis, out, err);
      }
    }
    return code;
  }
  if (*y) {
    if (!construct && !check) {
      err << "error: yb needs --construct or --check\n";
      return kInputFailure;
    }
    const Outcome o = yb(path, tol, construct, out_path);
    emit(o, as_json, report::render_yb, out, err);
    return o.code;
  }
  if (*b) {
    const Outcome o = bialgebra(path, tol);
    emit(o, as_json, report::render_bialgebra, out, err);
    return o.code;
  }
  if (*s) {
    const Outcome o = search(path, tol, n_plus, n_minus, seed, starts, target);
    emit(o, as_json, report::render_search, out, err);
    return o.code;
  }

  try {
    if (*gf) return write_instance(catalog::random_flat(p, q, seed), out_path, out, err);
    catalog::Instance inst = catalog::named(name);
    if (*gm) {
      const int n = inst.alg.dim();
      if (gm->count("--plus") == 0) n_plus = n - n_minus;
      inst.metric = catalog::random_metric(n, seed, n_plus, n_minus);
      inst.label = name + "-metric-p" + std::to_string(n_plus) + "m" + std::to_string(n_minus) + "-seed" +
                   std::to_string(seed);
      inst.seed = seed;
    }
    return write_instance(inst, out_path, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

}  // namespace flatlie::cli
