// varwave: mappings and closed-form general solutions of linear wave
// equations u_tt = c^2(x,t) u_xx with variable wave speeds, plus the
// numerical verification harness.
//
// Subcommands: solve, ivp, verify, compare, classify, catalog.
// Exit codes: 0 success, 1 domain/validation failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "varwave/io.hpp"
#include "varwave/ivp.hpp"
#include "varwave/verify.hpp"

using json = nlohmann::ordered_json;
using namespace varwave;

namespace {

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file `" + path + "`");
  json j;
  in >> j;
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return j;
}

// flags override the config file: only unset options are filled in
template <typename T>
void fill(const CLI::Option* opt, T& var, const json& cfg, const char* key) {
  if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write `" + path + "`");
  out << text;
}

struct GridOutput {
  std::vector<std::vector<double>> rows;
  std::size_t failures = 0;
  std::vector<std::string> notes;
};

GridOutput sweep(const JetField& f, const GridSpec& grid) {
  GridOutput out;
  for (double x : grid.x_nodes())
    for (double t : grid.t_nodes()) {
      try {
        out.rows.push_back({x, t, f.value(x, t)});
      } catch (const std::exception& e) {
        ++out.failures;
        if (out.notes.size() < 5) out.notes.push_back(e.what());
      }
    }
  return out;
}

int emit_csv_with_header(const std::vector<std::string>& columns, const GridOutput& got,
                         const json& header, const std::string& out_path, bool json_only) {
  std::ostringstream csv;
  write_csv(csv, columns, got.rows);
  if (!out_path.empty()) {
    write_text(out_path, csv.str());
    write_text(out_path + ".json", header.dump(2) + "\n");
    std::cout << header.dump(2) << "\n";
  } else if (json_only) {
    std::cout << header.dump(2) << "\n";
  } else {
    std::cout << csv.str();
  }
  if (got.rows.empty()) {
    std::cerr << "error: every grid point failed ("
              << (got.notes.empty() ? "no note" : got.notes.front()) << ")\n";
    return 1;
  }
  return 0;
}

AnalyticSolution build_family_solution(const std::string& family, const SolutionPair& fg,
                                       double delta) {
  if (family == "const15") return dalembert(fg);
  if (family == "quad17") return general_solution_quadratic(fg);
  if (family == "delta") return general_solution_delta(fg, delta);
  if (family == "n1gen") return general_solution_n1(fg);
  if (family == "n2gen") return general_solution_n2(fg);
  throw std::invalid_argument("unknown family `" + family +
                              "` (want const15|quad17|delta|n1gen|n2gen)");
}

int cmd_solve(const std::string& config_path, const CLI::Option* o_family,
              const CLI::Option* o_F, const CLI::Option* o_G, const CLI::Option* o_delta,
              const CLI::Option* o_grid, std::string family, std::string Fsrc,
              std::string Gsrc, double delta, std::string grid_text, std::string out_path,
              bool json_only) {
  json cfg = load_config(config_path);
  fill(o_family, family, cfg, "family");
  fill(o_F, Fsrc, cfg, "F");
  fill(o_G, Gsrc, cfg, "G");
  fill(o_delta, delta, cfg, "delta");
  fill(o_grid, grid_text, cfg, "grid");
  if (family.empty()) throw std::invalid_argument("--family is required");
  if (grid_text.empty()) throw std::invalid_argument("--grid is required");

  SolutionPair fg = SolutionPair::from_text(Fsrc, Gsrc);
  AnalyticSolution sol = build_family_solution(family, fg, delta);
  GridSpec grid = GridSpec::parse(grid_text);
  GridOutput got = sweep(sol.field, grid);

  json header;
  header["schema_version"] = "1";
  header["command"] = "solve";
  header["family"] = sol.name;
  if (family == "delta") header["delta"] = delta;
  header["F"] = render(fg.F);
  header["G"] = render(fg.G);
  header["grid"] = grid.to_string();
  header["columns"] = {"x", "t", "u"};
  if (sol.equation.kind == Equation::Kind::Characteristic)
    header["coordinates"] = "characteristic (x=xi, t=eta)";
  header["validity"] = sol.region.to_string();
  header["rows"] = got.rows.size();
  header["failures"] = got.failures;
  if (!got.notes.empty()) header["failure_notes"] = got.notes;
  return emit_csv_with_header({"x", "t", "u"}, got, header, out_path, json_only);
}

std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open `" + path + "`");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> a, b;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("`" + path + "`: expected two comma-separated columns");
    a.push_back(std::stod(line.substr(0, comma)));
    b.push_back(std::stod(line.substr(comma + 1)));
  }
  return {a, b};
}

int cmd_ivp(const std::string& config_path, CLI::Option* o_phi, CLI::Option* o_psi,
            CLI::Option* o_a, CLI::Option* o_b, CLI::Option* o_t0, CLI::Option* o_n,
            CLI::Option* o_grid, std::string phi_src, std::string psi_src, double a, double b,
            double t0, int n, std::string grid_text, std::string out_path, bool json_only) {
  json cfg = load_config(config_path);
  fill(o_phi, phi_src, cfg, "phi");
  fill(o_psi, psi_src, cfg, "psi");
  fill(o_a, a, cfg, "a");
  fill(o_b, b, cfg, "b");
  fill(o_t0, t0, cfg, "t0");
  fill(o_n, n, cfg, "n");
  fill(o_grid, grid_text, cfg, "grid");
  if (phi_src.empty() || psi_src.empty())
    throw std::invalid_argument("--phi and --psi are required");
  if (grid_text.empty()) throw std::invalid_argument("--grid is required");

  auto is_csv = [](const std::string& s) {
    return s.size() > 4 && s.substr(s.size() - 4) == ".csv" && std::filesystem::exists(s);
  };

  InitialData data;
  if (is_csv(phi_src) || is_csv(psi_src)) {
    if (!is_csv(phi_src) || !is_csv(psi_src))
      throw std::invalid_argument("phi and psi must both be expressions or both CSV files");
    auto [x1, phi] = read_two_column_csv(phi_src);
    auto [x2, psi] = read_two_column_csv(psi_src);
    if (x1 != x2) throw std::invalid_argument("phi and psi CSVs must share the same x grid");
    data = InitialData::from_samples(std::move(x1), std::move(phi), std::move(psi), t0);
  } else {
    if (!(a > 0 && b > a))
      throw std::invalid_argument("need 0 < a < b for expression-valued data");
    data = InitialData::from_expressions(parse(phi_src, {"x"}), parse(psi_src, {"x"}), a, b,
                                         t0, n);
  }

  CharacteristicSolution sol = solve_ivp_quadratic(data);
  GridSpec grid = GridSpec::parse(grid_text);

  GridOutput got;
  for (double x : grid.x_nodes())
    for (double t : grid.t_nodes()) {
      try {
        got.rows.push_back({x, t, sol(x, t)});
      } catch (const std::exception& e) {
        ++got.failures;
        if (got.notes.size() < 5) got.notes.push_back(e.what());
      }
    }

  json header;
  header["schema_version"] = "1";
  header["command"] = "ivp";
  header["t0"] = sol.t0();
  header["characteristic_interval"] = {sol.s_lo(), sol.s_hi()};
  header["determinacy"] = "both 1/x+(t-t0) and 1/x-(t-t0) in the characteristic interval";
  header["grid"] = grid.to_string();
  header["columns"] = {"x", "t", "u"};
  header["rows"] = got.rows.size();
  header["failures"] = got.failures;
  if (!got.notes.empty()) header["failure_notes"] = got.notes;
  return emit_csv_with_header({"x", "t", "u"}, got, header, out_path, json_only);
}

int cmd_verify(const std::string& config_path, CLI::Option* o_suite, CLI::Option* o_tol,
               CLI::Option* o_seed, CLI::Option* o_trials, CLI::Option* o_inject,
               std::string suite, double tol, std::uint64_t seed, int trials,
               std::string inject, double rho, bool json_out, std::string out_path) {
  json cfg = load_config(config_path);
  fill(o_suite, suite, cfg, "suite");
  fill(o_tol, tol, cfg, "tol");
  fill(o_seed, seed, cfg, "seed");
  fill(o_trials, trials, cfg, "trials");
  fill(o_inject, inject, cfg, "inject");
  if (trials < 1) throw std::invalid_argument("--trials must be positive");
  if (!(tol > 0)) throw std::invalid_argument("--tol must be positive");

  SuiteConfig sc;
  sc.tol = tol;
  sc.seed = seed;
  sc.trials = trials;
  sc.rho = rho;
  sc.injection = injection_from_name(inject);

  VerifyOutcome out = run_verify(sc, suite);
  const std::string report = out.to_json(sc);
  if (!out_path.empty()) write_text(out_path, report + "\n");
  if (json_out)
    std::cout << report << "\n";
  else
    std::cout << out.to_table();
  return out.pass ? 0 : 1;
}

int cmd_compare(const std::string& config_path, CLI::Option* o_family, CLI::Option* o_F,
                CLI::Option* o_G, CLI::Option* o_grid, std::string family, std::string Fsrc,
                std::string Gsrc, std::string grid_text, double cfl, int levels,
                std::string out_path, bool json_only) {
  json cfg = load_config(config_path);
  fill(o_family, family, cfg, "family");
  fill(o_F, Fsrc, cfg, "F");
  fill(o_G, Gsrc, cfg, "G");
  fill(o_grid, grid_text, cfg, "grid");
  if (family.empty()) throw std::invalid_argument("--family is required");
  if (levels < 3) throw std::invalid_argument("--levels must be at least 3");

  ConvergenceCase c = fd_reference_case(family);
  if (!Fsrc.empty() || !Gsrc.empty())
    c.fg = SolutionPair::from_text(Fsrc.empty() ? "0" : Fsrc, Gsrc.empty() ? "0" : Gsrc);
  if (!grid_text.empty()) {
    GridSpec g = GridSpec::parse(grid_text);
    c.x_lo = g.x_lo;
    c.x_hi = g.x_hi;
    c.base_n = g.nx;
    c.t0 = g.t_lo;
    c.t_end = g.t_hi;
  }
  c.cfl = cfl;

  ConvergenceResult res = run_convergence(c, levels);

  std::vector<std::vector<double>> rows;
  for (const auto& e : res.errors) rows.push_back({e.h, e.max_error, e.l2_error});
  std::ostringstream csv;
  write_csv(csv, {"h", "max_error", "l2_error"}, rows);

  json header;
  header["schema_version"] = "1";
  header["command"] = "compare";
  header["family"] = c.family;
  header["F"] = render(c.fg.F);
  header["G"] = render(c.fg.G);
  header["box"] = {{"x", {c.x_lo, c.x_hi}}, {"t", {c.t0, c.t_end}}};
  header["cfl"] = c.cfl;
  header["base_n"] = c.base_n;
  header["levels"] = levels;
  header["order"] = res.order;

  if (!out_path.empty()) {
    write_text(out_path, csv.str());
    write_text(out_path + ".json", header.dump(2) + "\n");
    std::cout << header.dump(2) << "\n";
  } else if (json_only) {
    std::cout << header.dump(2) << "\n";
  } else {
    std::cout << csv.str() << "order," << format_double(res.order) << "\n";
  }
  return 0;
}

int cmd_classify(const std::string& config_path, CLI::Option* o_c, std::string c_src) {
  json cfg = load_config(config_path);
  fill(o_c, c_src, cfg, "c");
  if (c_src.empty()) throw std::invalid_argument("--c is required");
  Expression c = parse(c_src, {"x", "t"});

  json out;
  out["schema_version"] = "1";
  if (auto delta = classify_delta(c)) {
    out["family"] = "delta";
    out["delta"] = *delta;
  } else {
    // x^2 detection: numeric agreement on the classification samples
    bool is_x2 = true;
    for (double x : {-3.1, -1.7, -0.4, 0.4, 1.7, 3.1, 5.3})
      for (double t : {-2.9, -1.3, 0.6, 4.7}) {
        try {
          const double v = eval_jet2(c, Jet2::var_x(x), Jet2::var_t(t)).f;
          if (std::abs(v - x * x) > 1e-9 * std::max(1.0, x * x)) is_x2 = false;
        } catch (const std::exception&) {
          is_x2 = false;
        }
      }
    if (is_x2) {
      out["family"] = "quadratic-x";
    } else if (!c.uses("t")) {
      out["family"] = "profile";
      out["c"] = render(c);
    } else {
      out["family"] = "general";
      out["c"] = render(c);
    }
  }
  std::cout << out.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mappings and general solutions of linear wave equations with variable "
               "wave speeds"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values")
      ->expected(1);

  // solve
  auto* solve = app.add_subcommand("solve", "evaluate a family's general solution on a grid");
  std::string s_family, s_F = "0", s_G = "0", s_grid, s_out;
  double s_delta = 0;
  bool s_json = false;
  std::uint64_t s_seed = 0;
  auto* so_family = solve->add_option("--family", s_family, "const15|quad17|delta|n1gen|n2gen");
  auto* so_F = solve->add_option("--F", s_F, "F(s) source text");
  auto* so_G = solve->add_option("--G", s_G, "G(s) source text");
  auto* so_delta = solve->add_option("--delta", s_delta, "delta for --family delta");
  auto* so_grid = solve->add_option("--grid", s_grid, "x:a:b:n[:log],t:a:b:n[:log]");
  solve->add_option("--out", s_out, "CSV output path (JSON header goes to <out>.json)");
  solve->add_option("--seed", s_seed, "accepted for interface parity; solve is deterministic");
  solve->add_flag("--json", s_json, "print the JSON header instead of CSV");

  // ivp
  auto* ivp = app.add_subcommand("ivp", "solve the c=x^2 initial-value problem exactly");
  std::string i_phi, i_psi, i_grid, i_out;
  double i_a = 1, i_b = 4, i_t0 = 0;
  int i_n = 512;
  bool i_json = false;
  auto* io_phi = ivp->add_option("--phi", i_phi, "u(x,t0): expression in x, or CSV path");
  auto* io_psi = ivp->add_option("--psi", i_psi, "u_t(x,t0): expression in x, or CSV path");
  auto* io_a = ivp->add_option("--a", i_a, "left end of the data interval (a > 0)");
  auto* io_b = ivp->add_option("--b", i_b, "right end of the data interval");
  auto* io_t0 = ivp->add_option("--t0", i_t0, "data time");
  auto* io_n = ivp->add_option("--n", i_n, "sample count for expression-valued data");
  auto* io_grid = ivp->add_option("--grid", i_grid, "query grid");
  ivp->add_option("--out", i_out, "CSV output path");
  ivp->add_flag("--json", i_json, "print the JSON header instead of CSV");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suites; exit 0 iff all pass");
  std::string v_suite = "all", v_inject = "none", v_out;
  double v_tol = 1e-8, v_rho = 1.0;
  std::uint64_t v_seed = SuiteConfig{}.seed;
  int v_trials = 20;
  bool v_json = false;
  auto* vo_suite =
      verify->add_option("--suite", v_suite, "all or comma list: residuals,equivalence,integral,roundtrip");
  auto* vo_tol = verify->add_option("--tol", v_tol, "residual tolerance");
  auto* vo_seed = verify->add_option("--seed", v_seed, "rng seed");
  auto* vo_trials = verify->add_option("--trials", v_trials, "random (F,G) draws per check");
  auto* vo_inject = verify->add_option(
      "--inject", v_inject,
      "none|corrupt-solution|flip-mapping-sign|scale-kappa|flip-inverse-sign");
  verify->add_option("--rho", v_rho, "rho parameter for the DPOS/DNEG catalog entries");
  verify->add_option("--out", v_out, "write the JSON report to this path");
  verify->add_flag("--json", v_json, "print JSON instead of the table");

  // compare
  auto* compare = app.add_subcommand("compare", "leapfrog convergence study vs a closed form");
  std::string c_family, c_F, c_G, c_grid, c_out;
  double c_cfl = 0.9;
  int c_levels = 3;
  bool c_json = false;
  auto* co_family =
      compare->add_option("--family", c_family, "const15|quad17|delta0|delta+1|delta-1|n1gen|n2gen");
  auto* co_F = compare->add_option("--F", c_F, "override the reference F(s)");
  auto* co_G = compare->add_option("--G", c_G, "override the reference G(s)");
  auto* co_grid = compare->add_option(
      "--grid", c_grid, "x:a:b:n,t:t0:t_end:m (n = coarsest cell count; m unused)");
  compare->add_option("--cfl", c_cfl, "CFL number in (0,1]");
  compare->add_option("--levels", c_levels, "number of h-halvings (>= 3)");
  compare->add_option("--out", c_out, "CSV output path");
  compare->add_flag("--json", c_json, "print the JSON summary instead of CSV");

  // classify
  auto* classify = app.add_subcommand("classify", "classify a wave-speed expression");
  std::string cl_c;
  auto* clo_c = classify->add_option("--c", cl_c, "speed expression in x,t");
  bool cl_json = false;
  classify->add_flag("--json", cl_json, "output is always JSON; accepted for parity");

  // catalog
  auto* cat = app.add_subcommand("catalog", "list the mapping catalog");
  bool cat_json = false;
  double cat_rho = 1.0;
  cat->add_flag("--json", cat_json, "emit the catalog as JSON");
  cat->add_option("--rho", cat_rho, "rho parameter for DPOS/DNEG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve)
      return cmd_solve(config_path, so_family, so_F, so_G, so_delta, so_grid, s_family, s_F,
                       s_G, s_delta, s_grid, s_out, s_json);
    if (*ivp)
      return cmd_ivp(config_path, io_phi, io_psi, io_a, io_b, io_t0, io_n, io_grid, i_phi,
                     i_psi, i_a, i_b, i_t0, i_n, i_grid, i_out, i_json);
    if (*verify)
      return cmd_verify(config_path, vo_suite, vo_tol, vo_seed, vo_trials, vo_inject, v_suite,
                        v_tol, v_seed, v_trials, v_inject, v_rho, v_json, v_out);
    if (*compare)
      return cmd_compare(config_path, co_family, co_F, co_G, co_grid, c_family, c_F, c_G,
                         c_grid, c_cfl, c_levels, c_out, c_json);
    if (*classify) return cmd_classify(config_path, clo_c, cl_c);
    if (*cat) {
      auto mappings = catalog(cat_rho);
      if (cat_json) {
        std::cout << catalog_json(mappings) << "\n";
      } else {
        for (const auto& m : mappings) std::cout << mapping_id(m) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
