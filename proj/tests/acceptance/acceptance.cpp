// Acceptance suite: every release criterion exercised at full strength, one
// PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "varwave/ivp.hpp"
#include "varwave/verify.hpp"

using namespace varwave;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++failures;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(VARWAVE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string cli_stdout(const std::string& args) {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "varwave_acceptance_out.txt";
  const std::string cmd =
      std::string(VARWAVE_CLI_PATH) + " " + args + " > " + out.string() + " 2> /dev/null";
  std::system(cmd.c_str());
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- criterion 1: general-solution residuals --------------------------------

void criterion_residuals(const SuiteConfig& cfg) {
  auto reports = suite_residuals(cfg);
  bool pass = true;
  double worst = 0;
  std::string worst_id;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    if (r.max_residual >= worst) {
      worst = r.max_residual;
      worst_id = r.id;
    }
  }
  std::ostringstream d;
  d << reports.size() << " families x " << cfg.trials << " (F,G) pairs on " << cfg.grid_n
    << "x" << cfg.grid_n << " grids, worst max residual " << worst << " (" << worst_id << ")";
  report(1, pass, "general-solution residuals <= 1e-8", d.str());
}

// ---- criterion 2: mapping equivalence ---------------------------------------

void criterion_equivalence(const SuiteConfig& cfg) {
  auto reports = suite_equivalence(cfg);
  bool pass = reports.size() == 11;
  double worst = 0;
  std::string worst_id;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    if (r.max_residual >= worst) {
      worst = r.max_residual;
      worst_id = r.id;
    }
  }
  std::ostringstream d;
  d << reports.size() << " catalog mappings x " << cfg.trials
    << " trials, worst max residual " << worst << " (" << worst_id << ")";
  report(2, pass, "mapping equivalence at 1e-8 (incl. N1/N2 push-forwards)", d.str());
}

// ---- criterion 3: integral relations ----------------------------------------

void criterion_integral(const SuiteConfig& cfg) {
  auto reports = suite_integral(cfg);
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    d << r.id << ": kappa=" << r.kappa << " fit_err=" << r.kappa_rel_err
      << " max_res=" << r.max_residual << "  ";
  }
  report(3, pass, "derivative-form integral relations with derived kappa", d.str());
}

// ---- criterion 4: round trips -----------------------------------------------

void criterion_roundtrip(const SuiteConfig& cfg) {
  auto reports = suite_roundtrip(cfg);
  bool pass = true;
  double worst = 0;
  int rejected = 0;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    worst = std::max(worst, r.worst);
    if (!r.note.empty() && r.pass) ++rejected;
  }
  std::ostringstream d;
  d << "worst deviation " << worst << " over " << cfg.roundtrip_trials
    << " points; non-invertible rejections " << rejected << "/4";
  report(4, pass && rejected == 4, "round trips <= 1e-11 and invert errors on N1/N2/C1/C2",
         d.str());
}

// ---- criterion 5: fd oracle agreement ---------------------------------------

void criterion_fd() {
  bool pass = true;
  std::ostringstream d;
  for (const auto& c : fd_reference_cases()) {
    ConvergenceResult res = run_convergence(c, 3);
    const double finest = res.errors.back().max_error;
    const bool ok = res.order >= 1.8 && res.order <= 2.2 && finest < 1e-3;
    pass = pass && ok;
    d << c.family << ": order=" << std::round(res.order * 100) / 100 << " err=" << finest
      << "  ";
  }
  report(5, pass, "leapfrog convergence order in [1.8,2.2], finest error < 1e-3", d.str());
}

// ---- criterion 6: ivp recovery ----------------------------------------------

void criterion_ivp() {
  SolutionPair fg = SolutionPair::from_text("sin(s)", "cos(s)");
  AnalyticSolution truth = general_solution_quadratic(fg);

  auto recovery_error = [&](int n) {
    std::vector<double> xs(n), phi(n), psi(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = 1.0 + 3.0 * i / (n - 1);
      Jet2 j = truth.field.at(xs[i], 0.0);
      phi[i] = j.f;
      psi[i] = j.ft;
    }
    CharacteristicSolution sol =
        solve_ivp_quadratic(InitialData::from_samples(xs, phi, psi, 0.0));
    double emax = 0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 10; ++j) {
        const double x = 1.3 + (2.2 - 1.3) * i / 20.0;
        const double t = 0.2 * j / 10.0;
        emax = std::max(emax, std::abs(sol(x, t) - truth.field.value(x, t)));
      }
    return emax;
  };

  const double h512 = 3.0 / 511.0;
  const double e512 = recovery_error(512);
  const double e256 = recovery_error(256);
  const double ratio = e256 / e512;
  const bool pass = e512 <= 5.0 * h512 * h512 && ratio >= 3.4 && ratio <= 4.6;
  std::ostringstream d;
  d << "max error " << e512 << " (bound " << 5.0 * h512 * h512 << "), refinement ratio "
    << ratio;
  report(6, pass, "ivp recovery within 5*h^2 and ratio in [3.4,4.6]", d.str());
}

// ---- criterion 7: defect detection ------------------------------------------

void criterion_defects(SuiteConfig cfg) {
  // library level: each injection must fail its target suite
  cfg.trials = 5;
  cfg.relation_points = 10;
  cfg.grid_n = 24;

  bool detected = true;
  std::ostringstream d;

  {
    SuiteConfig c = cfg;
    c.injection = Injection::CorruptSolution;
    bool any = false;
    for (const auto& r : suite_residuals(c)) any = any || !r.pass;
    detected = detected && any;
    d << "corrupt-solution:" << (any ? "caught" : "MISSED") << " ";
  }
  {
    SuiteConfig c = cfg;
    c.injection = Injection::FlipMappingSign;
    bool any = false;
    for (const auto& r : suite_equivalence(c)) any = any || !r.pass;
    detected = detected && any;
    d << "flip-mapping-sign:" << (any ? "caught" : "MISSED") << " ";
  }
  {
    SuiteConfig c = cfg;
    c.injection = Injection::ScaleKappa;
    bool any = false;
    for (const auto& r : suite_integral(c)) any = any || !r.pass;
    detected = detected && any;
    d << "scale-kappa:" << (any ? "caught" : "MISSED") << " ";
  }
  {
    SuiteConfig c = cfg;
    c.injection = Injection::FlipInverseSign;
    bool any = false;
    for (const auto& r : suite_roundtrip(c)) any = any || !r.pass;
    detected = detected && any;
    d << "flip-inverse-sign:" << (any ? "caught" : "MISSED") << " ";
  }

  // CLI level: injected runs must exit 1, clean run exits 0
  const bool cli_clean = run_cli("verify --suite integral --trials 5") == 0;
  const bool cli_kappa = run_cli("verify --suite integral --inject scale-kappa --trials 5") == 1;
  const bool cli_res =
      run_cli("verify --suite residuals --inject corrupt-solution --trials 2") == 1;
  const bool cli_equiv =
      run_cli("verify --suite equivalence --inject flip-mapping-sign --trials 2") == 1;
  const bool cli_rt =
      run_cli("verify --suite roundtrip --inject flip-inverse-sign --trials 2") == 1;
  d << "| cli exits: clean=" << cli_clean << " kappa=" << cli_kappa << " res=" << cli_res
    << " equiv=" << cli_equiv << " rt=" << cli_rt;

  report(7, detected && cli_clean && cli_kappa && cli_res && cli_equiv && cli_rt,
         "every injected defect fails its suite (library + cli exit 1)", d.str());
}

// ---- criterion 8: determinism ------------------------------------------------

void criterion_determinism(const SuiteConfig& cfg) {
  VerifyOutcome a = run_verify(cfg, "all");
  VerifyOutcome b = run_verify(cfg, "all");
  const bool lib_ok = a.to_json(cfg) == b.to_json(cfg);

  const std::string s1 = cli_stdout("verify --suite integral,roundtrip --trials 5 --json");
  const std::string s2 = cli_stdout("verify --suite integral,roundtrip --trials 5 --json");
  const std::string c1 =
      cli_stdout("solve --family quad17 --F \"sin(s)\" --G \"cos(s)\" --grid \"x:1:2:16,t:0:1:16\"");
  const std::string c2 =
      cli_stdout("solve --family quad17 --F \"sin(s)\" --G \"cos(s)\" --grid \"x:1:2:16,t:0:1:16\"");
  const bool cli_ok = !s1.empty() && s1 == s2 && !c1.empty() && c1 == c2;

  report(8, lib_ok && cli_ok, "repeated runs with the same seed are byte-identical",
         lib_ok ? (cli_ok ? "library json + cli json + csv identical" : "cli outputs differ")
                : "library reports differ");
}

}  // namespace

int main() {
  SuiteConfig cfg;  // release tolerances: 1e-8 residuals, 1e-11 roundtrips, 1e-10 kappa fit

  criterion_residuals(cfg);
  criterion_equivalence(cfg);
  criterion_integral(cfg);
  criterion_roundtrip(cfg);
  criterion_fd();
  criterion_ivp();
  criterion_defects(cfg);

  SuiteConfig det = cfg;
  det.trials = 5;
  det.relation_points = 10;
  det.grid_n = 16;
  criterion_determinism(det);

  if (failures == 0) {
    std::cout << "acceptance: all criteria pass" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) failing" << std::endl;
  return 1;
}
