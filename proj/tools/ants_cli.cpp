#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ants/extremals.hpp"
#include "ants/quartic.hpp"
#include "ants/verify.hpp"

using nlohmann::ordered_json;

namespace {

ants::Rational parse_rational(const std::string& s) {
  try {
    return ants::Rational(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a rational number, got '" + s + "'");
  }
}

std::vector<ants::Rational> parse_rationals(const std::string& csv,
                                            std::size_t expect) {
  std::vector<ants::Rational> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
  if (out.size() != expect)
    throw CLI::ValidationError("expected " + std::to_string(expect) +
                               " comma-separated values in '" + csv + "'");
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw CLI::RuntimeError("cannot open output file " + out_path, 1);
    f << text;
  }
}

struct CommonOpts {
  std::uint64_t seed = 12345;
  double step = 1e-4;
  double duration = 1.0;
  std::string format = "json";
  std::string out;
  std::map<std::string, double> tolerances;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "Deterministic seed for sampled points");
  cmd->add_option("--step", o.step, "Integration step size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--duration", o.duration, "Integration duration")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "Output format: json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
  for (const char* name :
       {"h", "sum", "prod", "bary", "systemb", "reduced", "zeta", "udot",
        "elliptic", "nu", "fuchsian", "vertex", "side", "area", "bisectrix"}) {
    cmd->add_option_function<double>(
        std::string("--tol-") + name,
        [&o, name](double v) { o.tolerances[name] = v; },
        std::string("Tolerance override for the '") + name + "' monitors");
  }
}

int cmd_verify(const CommonOpts& o, const std::vector<std::string>& only,
               bool mutate) {
  ants::VerifyConfig cfg;
  cfg.seed = o.seed;
  cfg.step = o.step;
  cfg.duration = o.duration;
  cfg.tolerances = o.tolerances;
  cfg.only = only;
  cfg.mutate_structure_equations = mutate;
  auto report = ants::run_verification(cfg);
  emit(report.to_json(), o.out);
  return report.all_pass() ? 0 : 1;
}

int cmd_analyze(const CommonOpts& o, const std::string& model) {
  using namespace ants;
  std::optional<Distribution> dist;
  std::vector<std::pair<std::string, MultiPoly>> integral_candidates;
  std::size_t symmetry_dim = 0;
  std::size_t depth = 3;
  if (model == "rule-a" || model == "rule-b" || model == "sqrt-b") {
    AntModel m = (model == "rule-a") ? build_rule_a() : build_rule_b();
    dist = (model == "sqrt-b") ? square_root_distribution(m) : m.distribution();
    integral_candidates.emplace_back("32A", m.area32);
    if (model == "sqrt-b") depth = 4;
    // count verified symmetries among the configured candidate basis
    auto X = projective_symmetries(m.chart);
    std::vector<VectorField> basis;
    if (model == "sqrt-b")
      basis = {X[0], X[1], X[2], X[3], X[4] - X[5]};
    else
      basis.assign(X.begin(), X.end());
    for (auto& x : basis)
      if (is_symmetry(x, *dist).ok) ++symmetry_dim;
  } else if (model == "affine") {
    dist = build_affine_model().rank2_distribution();
    depth = 4;
  } else if (model == "flat36") {
    dist = build_flat36();
  } else if (model == "quadric235") {
    dist = build_quadric235();
    depth = 4;
  } else {
    std::cerr << "unknown model '" << model << "'\n";
    return 2;
  }

  auto flag = derived_flag(*dist, depth, o.seed, 3);
  std::string growth = "(";
  for (std::size_t i = 0; i < flag.ranks.size(); ++i)
    growth += (i ? "," : "") + std::to_string(flag.ranks[i]);
  growth += ")";
  std::vector<std::string> integrals;
  for (auto& [name, f] : integral_candidates)
    if (check_first_integral(*dist, f)) integrals.push_back(name);

  if (o.format == "text") {
    std::ostringstream os;
    os << "model: " << model << "\n";
    os << "growth: " << growth << "\n";
    os << "derived flag stabilized: " << (flag.stabilized ? "yes" : "no") << "\n";
    for (auto& n : integrals) os << "first integral: " << n << "\n";
    if (symmetry_dim) os << "symmetry dimension: " << symmetry_dim << "\n";
    emit(os.str(), o.out);
  } else {
    ordered_json j;
    j["model"] = model;
    j["growth"] = growth;
    j["derived_flag_ranks"] = flag.ranks;
    j["stabilized"] = flag.stabilized;
    j["first_integrals"] = integrals;
    if (symmetry_dim) j["symmetry_dimension"] = symmetry_dim;
    emit(j.dump(2) + "\n", o.out);
  }
  return 0;
}

int cmd_simulate(const CommonOpts& o, const std::string& rule,
                 const std::string& u0_csv, const std::string& triangle_csv,
                 const std::string& preset) {
  using namespace ants;
  std::string csv_path = o.out.empty() ? "trajectory.csv" : o.out;
  std::string manifest_path = csv_path + ".manifest.json";

  if (preset == "fixed-vertex") {
    using Cx = std::complex<double>;
    auto tri = parse_rationals(triangle_csv, 6);
    std::array<Cx, 3> z0;
    for (int i = 0; i < 3; ++i)
      z0[i] = {to_double(tri[2 * i]), to_double(tri[2 * i + 1])};
    auto rep = fixed_vertex_trajectory(z0, 0.5, o.duration, o.step);
    std::ostringstream csv;
    csv << "t,x1,y1,x2,y2,x3,y3\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
      csv << fmt_double(rep.times[i]);
      for (int k = 0; k < 3; ++k)
        csv << "," << fmt_double(rep.z[i][k].real()) << ","
            << fmt_double(rep.z[i][k].imag());
      csv << "\n";
    }
    emit(csv.str(), csv_path);
    ordered_json j;
    j["preset"] = "fixed-vertex";
    j["seed"] = o.seed;
    j["step"] = fmt_double(o.step);
    j["duration"] = fmt_double(o.duration);
    j["max_fixed_vertex_motion"] = fmt_double(rep.max_fixed_vertex_motion);
    j["max_parallel_side_residual"] = fmt_double(rep.max_side_cross);
    j["max_area_drift"] = fmt_double(rep.max_area_drift);
    j["max_bisectrix_residual"] = fmt_double(rep.max_bisectrix_residual);
    emit(j.dump(2) + "\n", manifest_path);
    return 0;
  }

  AntModel m = (rule == "a") ? build_rule_a() : build_rule_b();
  auto lift = hamiltonian_lift(m.Z);
  auto u0 = parse_rationals(u0_csv, 3);
  auto tri = parse_rationals(triangle_csv, 6);
  auto lam = initial_covector(lift, tri, {u0[0], u0[1], u0[2]});
  if (!lam) {
    std::cerr << "no initial covector: the control target is not attainable "
                 "in the annihilator at this configuration\n";
    return 2;
  }
  std::array<double, 6> q0d{}, l0d{};
  for (int k = 0; k < 6; ++k) {
    q0d[k] = to_double(tri[k]);
    l0d[k] = to_double((*lam)[k]);
  }
  MonitorConfig mc;
  auto get = [&](const char* n, double dflt) {
    auto it = o.tolerances.find(n);
    return it == o.tolerances.end() ? dflt : it->second;
  };
  mc.tol_h = get("h", mc.tol_h);
  mc.tol_sum = get("sum", mc.tol_sum);
  mc.tol_prod = get("prod", mc.tol_prod);
  mc.tol_bary = get("bary", mc.tol_bary);
  auto traj = integrate_extremal(lift, q0d, l0d, o.duration, o.step, mc);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  emit(csv.str(), csv_path);

  ordered_json j;
  j["rule"] = rule;
  j["seed"] = o.seed;
  j["step"] = fmt_double(o.step);
  j["duration"] = fmt_double(o.duration);
  j["points"] = traj.points.size();
  j["max_h_drift"] = fmt_double(traj.max_h_drift);
  j["max_sum_u"] = fmt_double(traj.max_sum_u);
  j["max_prod_drift"] = fmt_double(traj.max_prod_drift);
  j["max_barycenter_second_difference"] = fmt_double(traj.max_bary_dd);
  j["flagged"] = traj.flagged;
  j["breaches"] = traj.breaches;
  emit(j.dump(2) + "\n", manifest_path);
  return 0;
}

int cmd_quartic(const CommonOpts& o, const std::string& coeffs_csv,
                const std::string& cartan_c) {
  using namespace ants;
  BinaryQuartic q;
  if (!cartan_c.empty()) {
    q = cartan_quartic(parse_rational(cartan_c));
  } else {
    auto c = parse_rationals(coeffs_csv, 5);
    for (int i = 0; i < 5; ++i) q.c[i] = c[i];
  }
  auto rt = classify_quartic(q);
  if (o.format == "text") {
    emit(rt.tag + "\n", o.out);
    return 0;
  }
  ordered_json j;
  j["coefficients"] = ordered_json::array();
  for (auto& c : q.c) j["coefficients"].push_back(to_string(c));
  j["squarefree_factors"] = ordered_json::array();
  for (auto& f : rt.factors) {
    ordered_json e;
    e["coefficients"] = ordered_json::array();
    for (auto& c : f.coeffs) e["coefficients"].push_back(to_string(c));
    e["multiplicity"] = f.multiplicity;
    e["sturm_real_roots"] = f.real_roots;
    j["squarefree_factors"].push_back(std::move(e));
  }
  j["infinity_multiplicity"] = rt.infinity_multiplicity;
  j["real_roots_with_multiplicity"] = rt.real_count_with_multiplicity();
  j["tag"] = rt.tag;
  emit(j.dump(2) + "\n", o.out);
  return 0;
}

int cmd_ellipse(const CommonOpts& o, const std::string& triangle_csv,
                const std::string& u_csv) {
  using namespace ants;
  auto v = parse_rationals(triangle_csv, 6);
  Triangle t{{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}}};
  Ellipse e;
  try {
    e = steiner_circumellipse(t);
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << "\n";
    return 2;
  }
  ordered_json j;
  j["center"] = {to_string(e.center[0]), to_string(e.center[1])};
  j["gram"] = ordered_json::array(
      {ordered_json::array({to_string(e.gram[0][0]), to_string(e.gram[0][1])}),
       ordered_json::array({to_string(e.gram[1][0]), to_string(e.gram[1][1])})});
  if (!u_csv.empty()) {
    auto u = parse_rationals(u_csv, 3);
    if (u[0] + u[1] + u[2] != 0) {
      std::cerr << "controls must satisfy u1+u2+u3 = 0\n";
      return 2;
    }
    Rational sp = subriemannian_speed_sq(t, {u[0], u[1], u[2]});
    Rational s2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    j["speed_sq"] = to_string(sp);
    if (s2 != 0) j["speed_constant"] = to_string(sp / s2);
  }
  emit(j.dump(2) + "\n", o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical toolkit for planar three-point "
               "nonholonomic models"};
  app.require_subcommand(1);

  CommonOpts vo, ao, so, qo, eo;
  std::vector<std::string> only;
  bool mutate = false;
  std::string model, rule = "b", u0_csv = "1/4,1/4,-1/2";
  std::string triangle_csv = "0,0,1,0,0,1", preset;
  std::string coeffs_csv, cartan_c, u_csv;

  auto* verify = app.add_subcommand("verify", "Run the full check suite");
  add_common(verify, vo);
  verify->add_option("--only", only, "Restrict to checks with this group or id prefix");
  verify->add_flag("--mutate-eq15", mutate,
                   "Test hook: perturb one structure constant");

  auto* analyze = app.add_subcommand("analyze", "Analyze a named model");
  add_common(analyze, ao);
  analyze
      ->add_option("model", model,
                   "One of rule-a, rule-b, sqrt-b, affine, flat36, quadric235")
      ->required();

  auto* simulate = app.add_subcommand("simulate", "Integrate an extremal");
  add_common(simulate, so);
  simulate->add_option("--rule", rule, "a | b")->check(CLI::IsMember({"a", "b"}));
  simulate->add_option("--u0", u0_csv, "Control target u1,u2,u3 (rationals)");
  simulate->add_option("--lambda-target", u0_csv,
                       "Alias of --u0: bracket values the covector must attain");
  simulate->add_option("--triangle", triangle_csv,
                       "Initial configuration x1,y1,x2,y2,x3,y3");
  simulate->add_option("--preset", preset, "Named scenario: fixed-vertex")
      ->check(CLI::IsMember({"fixed-vertex"}));

  auto* quartic = app.add_subcommand("quartic", "Classify a binary quartic");
  add_common(quartic, qo);
  quartic->add_option("--coeffs", coeffs_csv, "c0,c1,c2,c3,c4 (rationals)");
  quartic->add_option("--cartan", cartan_c, "Build the invariant quartic for c");

  auto* ellipse = app.add_subcommand("ellipse", "Steiner circumellipse");
  add_common(ellipse, eo);
  ellipse->add_option("--triangle", triangle_csv, "x1,y1,x2,y2,x3,y3")
      ->required();
  ellipse->add_option("--u", u_csv, "Optional controls u1,u2,u3 for the speed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(vo, only, mutate);
    if (analyze->parsed()) return cmd_analyze(ao, model);
    if (simulate->parsed())
      return cmd_simulate(so, rule, u0_csv, triangle_csv, preset);
    if (quartic->parsed()) {
      if (coeffs_csv.empty() == cartan_c.empty()) {
        std::cerr << "provide exactly one of --coeffs or --cartan\n";
        return 2;
      }
      return cmd_quartic(qo, coeffs_csv, cartan_c);
    }
    if (ellipse->parsed()) return cmd_ellipse(eo, triangle_csv, u_csv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
