// ncg: command-line front end. exit 0 pass, 2 assertion failure, 1 usage error

#include "ncg/fuzzy_sphere.hpp"
#include "ncg/nc_torus.hpp"
#include "report_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace ncg;
using io::json;

namespace {

struct Common {
  std::string format = "json";
  std::string out;
  double tol = 0;
  bool tol_given = false;
  bool timings = false;
  std::vector<std::string> argv;

  double resolved_tol = default_tol;
  std::string tol_source = "default";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "write the report here instead of standard output");
  sub->add_option("--tol", c.tol, "rank tolerance (overrides NCG_TOL)")->check(CLI::PositiveNumber);
  sub->add_flag("--timings", c.timings, "include wall-clock per stage in the json envelope");
}

void resolve_tol(Common& c) {
  if (c.tol_given) {
    c.resolved_tol = c.tol;
    c.tol_source = "flag";
    return;
  }
  if (const char* env = std::getenv("NCG_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw usage_error("NCG_TOL is not a positive number");
    c.resolved_tol = v;
    c.tol_source = "NCG_TOL";
  }
}

Progress stderr_progress(const std::string& what) {
  return [what](const std::string& stage) { std::cerr << "ncg " << what << ": " << stage << "\n"; };
}

json envelope(const Common& c, const std::string& command) {
  json j;
  j["schema"] = io::schema;
  j["command"] = command;
  j["argv"] = c.argv;
  j["tolerance"] = c.resolved_tol;
  j["tolerance_source"] = c.tol_source;
  return j;
}

json section(const ModelReport& rep, const Common& c) {
  json s;
  s["checks"] = io::checks_json(rep);
  s["notes"] = rep.notes;
  s["pass"] = rep.pass();
  if (c.timings) s["timings"] = io::timings_json(rep);
  return s;
}

void print_timings(const std::string& what, const ModelReport& rep) {
  for (const auto& [stage, s] : rep.timings)
    std::cerr << "ncg " << what << ": " << stage << " took " << io::format_double(s) << " s\n";
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw usage_error("cannot open '" + c.out + "' for writing");
  f << text;
}

// sphere

struct SphereArgs {
  int level = 1;
  long max_degree = 3;
  bool no_connection = false;
};

int run_sphere(const SphereArgs& a, const Common& c) {
  if (a.level < 1) throw usage_error("sphere: --level must be at least 1");
  if (a.max_degree < 1) throw usage_error("sphere: --max-degree must be at least 1");
  SphereModel m = build_sphere(a.level);
  SphereOptions opts;
  opts.max_degree = a.max_degree;
  opts.tol = c.resolved_tol;
  opts.solve_connection = !a.no_connection;
  opts.progress = stderr_progress("sphere");
  SphereReport r = sphere_report(m, opts);
  print_timings("sphere", r.report);

  if (c.format == "csv") {
    emit(c, io::degree_csv(r.pi_dims, r.junk_dims, r.canon_dims, r.module_ranks, r.betti));
  } else if (c.format == "text") {
    std::ostringstream os;
    os << "fuzzy sphere, level " << a.level << "\n";
    os << "betti:";
    for (auto b : r.betti) os << " " << b;
    os << "\nmodule ranks:";
    for (auto x : r.module_ranks) os << " " << x;
    os << "\nscalar curvature: " << io::format_double(r.scalar) << "\n";
    os << io::checks_text(r.report);
    os << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
    emit(c, os.str());
  } else {
    json j = envelope(c, "sphere");
    j["parameters"] = {{"level", a.level}, {"max_degree", a.max_degree},
                       {"solve_connection", !a.no_connection}};
    j["results"] = {{"pi_dims", io::index_list(r.pi_dims)},
                    {"junk_dims", io::index_list(r.junk_dims)},
                    {"form_dims", io::index_list(r.canon_dims)},
                    {"module_ranks", io::index_list(r.module_ranks)},
                    {"betti", io::index_list(r.betti)},
                    {"expected_betti", io::index_list(r.expected_betti)},
                    {"h0_projector_distance", r.h0_projector_distance},
                    {"scalar_curvature", r.scalar},
                    {"torsion_residual", r.torsion_residual},
                    {"curvature_residual", r.curvature_residual},
                    {"ricci_residual", r.ricci_residual},
                    {"lc_homogeneous_dim", r.lc_homogeneous_dim}};
    j["sections"] = {{"n1", section(r.report, c)}};
    j["pass"] = r.pass();
    emit(c, io::dump(j));
  }
  return r.pass() ? 0 : 2;
}

// torus

struct TorusArgs {
  int num = 1, den = 5;
  std::vector<double> metric;
  long max_degree = 3;
  bool no_connection = false;
  bool with_n11 = false, with_n22 = false;
  int samples = 5;
  unsigned long seed = 2024;
};

RMatrix metric_from(const std::vector<double>& g) {
  if (g.empty()) return RMatrix::Identity(2, 2);
  if (g.size() != 3) throw usage_error("torus: --metric takes g11 g12 g22");
  RMatrix m(2, 2);
  m << g[0], g[1], g[1], g[2];
  return m;
}

int run_torus(const TorusArgs& a, const Common& c) {
  if (a.samples < 0) throw usage_error("torus: --samples must be non-negative");
  TorusModel m = build_torus(a.num, a.den, metric_from(a.metric));
  m.data.tol = c.resolved_tol;
  TorusOptions opts;
  opts.max_degree = a.max_degree;
  opts.solve_connection = !a.no_connection;
  opts.progress = stderr_progress("torus");
  TorusReport r = torus_report(m, opts);
  print_timings("torus", r.report);
  bool pass = r.pass();
  const double rtol = 1e-10;

  std::optional<DoubledReport> n11;
  ModelReport random_rep;
  std::vector<std::array<double, 4>> random_relations;
  std::optional<KahlerReport> n22;
  if (a.with_n11 || a.with_n22) {
    std::cerr << "ncg torus: doubled data\n";
    DoubledTorus t = build_doubled(m, zero_spin_connection(m));
    if (a.with_n11) {
      n11 = doubled_report(t, rtol);
      pass = pass && n11->report.pass();
      std::mt19937_64 rng(a.seed);
      for (int s = 0; s < a.samples; ++s) {
        DoubledReport rs = doubled_report(build_doubled(m, random_spin_connection(m, rng)), rtol);
        random_relations.push_back(rs.relations);
        random_rep.flag("random omega " + std::to_string(s) + " breaks a relation",
                        rs.max_relation() > 1e-6, io::format_double(rs.max_relation()));
      }
      pass = pass && random_rep.pass();
    }
    if (a.with_n22) {
      std::cerr << "ncg torus: kahler data\n";
      n22 = kahler_report(build_kahler(t), rtol);
      pass = pass && n22->report.pass();
    }
  }

  if (c.format == "csv") {
    std::string s = io::degree_csv(r.pi_dims, r.junk_dims, r.canon_dims, r.module_ranks, r.betti);
    if (n11) s += "\n" + io::checks_csv(n11->report) + "\n" + io::checks_csv(random_rep);
    if (n22) s += "\n" + io::checks_csv(n22->report);
    emit(c, s);
  } else if (c.format == "text") {
    std::ostringstream os;
    os << "rational torus, alpha = " << a.num << "/" << a.den << " (rational finite model)\n";
    os << "betti:";
    for (auto b : r.betti) os << " " << b;
    os << "\nmodule ranks:";
    for (auto x : r.module_ranks) os << " " << x;
    os << "\n" << io::checks_text(r.report);
    if (n11) {
      os << "-- N=(1,1)\n" << io::checks_text(n11->report) << io::checks_text(random_rep);
    }
    if (n22) os << "-- N=(2,2)\n" << io::checks_text(n22->report);
    os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    emit(c, os.str());
  } else {
    json j = envelope(c, "torus");
    j["parameters"] = {{"num", a.num},
                       {"den", a.den},
                       {"metric", {m.metric(0, 0), m.metric(0, 1), m.metric(1, 1)}},
                       {"max_degree", a.max_degree},
                       {"solve_connection", !a.no_connection},
                       {"with_n11", a.with_n11},
                       {"with_n22", a.with_n22},
                       {"samples", a.samples},
                       {"seed", a.seed},
                       {"classical", m.classical}};
    j["results"] = {{"pi_dims", io::index_list(r.pi_dims)},
                    {"junk_dims", io::index_list(r.junk_dims)},
                    {"form_dims", io::index_list(r.canon_dims)},
                    {"module_ranks", io::index_list(r.module_ranks)},
                    {"betti", io::index_list(r.betti)},
                    {"cotangent_free", r.cotangent_free},
                    {"lc_homogeneous_dim", r.lc_homogeneous_dim},
                    {"lc_coefficient_norm", r.lc_coefficient_norm},
                    {"scalar_curvature_norm", r.scalar_norm}};
    json sections = {{"n1", section(r.report, c)}};
    if (n11) {
      json s = section(n11->report, c);
      s["relations"] = n11->relations;
      s["grading_residual"] = n11->grading_residual;
      s["j_signs"] = {{"epsilon", n11->j_square}, {"epsilon_prime", n11->j_gamma},
                      {"epsilon_double_prime", n11->j_dirac}};
      s["first_order_residual"] = n11->first_order;
      json rnd = section(random_rep, c);
      rnd["relations"] = random_relations;
      s["random_connections"] = rnd;
      sections["n11"] = s;
    }
    if (n22) {
      json s = section(n22->report, c);
      s["bigrade_ranks"] = io::index_list(n22->bigrade_ranks);
      sections["n22"] = s;
    }
    j["sections"] = sections;
    j["pass"] = pass;
    emit(c, io::dump(j));
  }
  return pass ? 0 : 2;
}

// verify

struct VerifyArgs {
  std::string model;
  std::string flavor;
  int level = 1;
  int num = 1, den = 5;
};

ModelReport axiom_table(const SpectralData& data, double tol) {
  ModelReport rep;
  AxiomReport ax = check_axioms(data, tol);
  for (const auto& [name, v] : ax.residuals) rep.small(name, v, tol);
  return rep;
}

int run_verify(const VerifyArgs& a, const Common& c) {
  const double rtol = 1e-10;
  ModelReport rep;
  json extra = json::object();
  auto need_flavor = [&](std::initializer_list<const char*> ok) {
    if (a.flavor.empty()) return;
    for (const char* f : ok)
      if (a.flavor == f) return;
    throw usage_error("verify: flavor '" + a.flavor + "' does not apply to model '" + a.model + "'");
  };
  if (a.model != "torus" && a.level < 1) throw usage_error("verify: --level must be at least 1");
  if (a.model == "sphere") {
    need_flavor({"n1"});
    rep = axiom_table(build_sphere(a.level).data, rtol);
  } else if (a.model == "brst") {
    need_flavor({"n11"});
    SphereOptions opts;
    opts.tol = c.resolved_tol;
    opts.progress = stderr_progress("verify");
    rep = brst_report(build_brst(a.level), opts);
  } else if (a.model == "susy") {
    need_flavor({});
    SusyReport s = broken_susy_report(build_broken_susy(a.level), rtol, false);
    rep = s.report;
    extra["min_laplacian_eigenvalue"] = s.min_eigenvalue;
    extra["laplacian_kernel_dim"] = static_cast<long long>(s.kernel_dim);
  } else {
    need_flavor({"n1", "n11", "n22"});
    TorusModel m = build_torus(a.num, a.den);
    std::string f = a.flavor.empty() ? "n1" : a.flavor;
    if (f == "n1") {
      rep = axiom_table(m.data, rtol);
    } else {
      DoubledTorus t = build_doubled(m, zero_spin_connection(m));
      rep = f == "n11" ? axiom_table(t.data, rtol) : axiom_table(build_kahler(t).data, rtol);
    }
  }

  if (c.format == "csv") {
    emit(c, io::checks_csv(rep));
  } else if (c.format == "text") {
    std::ostringstream os;
    os << io::checks_text(rep);
    for (auto it = extra.begin(); it != extra.end(); ++it) os << it.key() << ": " << it.value().dump() << "\n";
    os << "result: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    emit(c, os.str());
  } else {
    json j = envelope(c, "verify");
    j["parameters"] = {{"model", a.model}, {"flavor", a.flavor}, {"level", a.level},
                       {"num", a.num}, {"den", a.den}};
    j["results"] = extra;
    j["sections"] = {{a.model, section(rep, c)}};
    j["pass"] = rep.pass();
    emit(c, io::dump(j));
  }
  return rep.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical non-commutative geometry workbench"};
  app.require_subcommand(1);
  Common common;
  for (int i = 0; i < argc; ++i) common.argv.push_back(i == 0 ? "ncg" : argv[i]);

  SphereArgs sa;
  auto* sphere = app.add_subcommand("sphere", "fuzzy 3-sphere geometry report");
  sphere->add_option("--level,-k", sa.level, "level k >= 1")->capture_default_str();
  sphere->add_option("--max-degree", sa.max_degree, "top form degree")->capture_default_str();
  sphere->add_flag("--no-connection", sa.no_connection, "skip the levi-civita uniqueness solve");
  add_common(sphere, common);

  TorusArgs ta;
  auto* torus = app.add_subcommand("torus", "rational non-commutative torus report");
  torus->add_option("--num,-M", ta.num, "numerator M of alpha")->capture_default_str();
  torus->add_option("--den,-N", ta.den, "denominator N of alpha")->capture_default_str();
  torus->add_option("--metric", ta.metric, "g11 g12 g22")->expected(3);
  torus->add_option("--max-degree", ta.max_degree, "top form degree")->capture_default_str();
  torus->add_flag("--no-connection", ta.no_connection, "skip the levi-civita solve");
  torus->add_flag("--with-n11", ta.with_n11, "add the N=(1,1) doubled data");
  torus->add_flag("--with-n22", ta.with_n22, "add the N=(2,2) kahler data");
  torus->add_option("--samples", ta.samples, "random connections for the N=(1,1) converse")
      ->capture_default_str();
  torus->add_option("--seed", ta.seed, "seed for the random connections")->capture_default_str();
  add_common(torus, common);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "axiom residual table for one model");
  verify->add_option("--model", va.model, "model")
      ->required()
      ->check(CLI::IsMember({"sphere", "torus", "brst", "susy"}));
  verify->add_option("--flavor", va.flavor, "n1, n11 or n22 where it applies");
  verify->add_option("--level,-k", va.level, "sphere level")->capture_default_str();
  verify->add_option("--num,-M", va.num, "torus numerator")->capture_default_str();
  verify->add_option("--den,-N", va.den, "torus denominator")->capture_default_str();
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (auto* sub : {sphere, torus, verify})
      if (sub->parsed()) common.tol_given = sub->count("--tol") > 0;
    resolve_tol(common);
    if (common.tol_source == "NCG_TOL")
      std::cerr << "ncg: tolerance " << io::format_double(common.resolved_tol) << " from NCG_TOL\n";
    if (sphere->parsed()) return run_sphere(sa, common);
    if (torus->parsed()) return run_torus(ta, common);
    return run_verify(va, common);
  } catch (const usage_error& e) {
    std::cerr << "ncg: usage error: " << e.what() << "\n";
    return 1;
  } catch (const contract_violation& e) {
    std::cerr << "ncg: usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ncg: " << e.what() << "\n";
    return 2;
  }
}
