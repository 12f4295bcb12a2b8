#include "varwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "varwave/io.hpp"

namespace varwave {

namespace {

constexpr double kThird = 1.0 / 3.0;

std::pair<double, double> shrink(double lo, double hi, double frac = 0.03) {
  const double d = hi - lo;
  return {lo + frac * d, hi - frac * d};
}

GridSpec grid_from_box(const Region& box, int n, bool t_log = false) {
  auto [xl, xh] = shrink(box.x_lo, box.x_hi);
  auto [tl, th] = shrink(box.t_lo, box.t_hi);
  return GridSpec::box(xl, xh, n, tl, th, n, false, t_log);
}

std::string injection_name(Injection inj) {
  switch (inj) {
    case Injection::None: return "none";
    case Injection::CorruptSolution: return "corrupt-solution";
    case Injection::FlipMappingSign: return "flip-mapping-sign";
    case Injection::ScaleKappa: return "scale-kappa";
    case Injection::FlipInverseSign: return "flip-inverse-sign";
  }
  return "?";
}

AnalyticSolution family_solution(const std::string& family, const SolutionPair& fg) {
  if (family == "const15") return dalembert(fg);
  if (family == "quad17") return general_solution_quadratic(fg);
  if (family == "delta0") return general_solution_delta(fg, 0.0);
  if (family == "delta+1") return general_solution_delta(fg, 1.0);
  if (family == "delta-1") return general_solution_delta(fg, -1.0);
  if (family == "n1gen") return general_solution_n1(fg);
  if (family == "n2gen") return general_solution_n2(fg);
  throw std::invalid_argument("unknown solution family `" + family + "`");
}

void fold_into(ResidualReport& agg, const ResidualReport& one, double& sumsq) {
  agg.points += one.points;
  agg.failures += one.failures;
  agg.max_residual = std::max(agg.max_residual, one.max_residual);
  sumsq += one.l2_residual * one.l2_residual * static_cast<double>(one.points);
  for (const auto& nte : one.notes)
    if (agg.notes.size() < 5) agg.notes.push_back(nte);
}

void finish(ResidualReport& agg, double sumsq, double tol) {
  agg.tolerance = tol;
  agg.l2_residual =
      agg.points ? std::sqrt(sumsq / static_cast<double>(agg.points)) : 0.0;
  agg.pass = agg.failures == 0 && agg.points > 0 && agg.max_residual <= tol;
}

}  // namespace

const std::vector<Expression>& standard_pool() {
  static const std::vector<Expression> pool = [] {
    const char* sources[] = {"s",      "s^2",          "s^3",    "1+2*s", "s-0.5*s^3",
                             "0.25*s^2+s", "sin(s)", "cos(s)", "exp(s)", "tanh(s)"};
    std::vector<Expression> v;
    for (const char* src : sources) v.push_back(parse(src, {"s"}));
    return v;
  }();
  return pool;
}

SolutionPair draw_pair(Rng& rng) {
  const auto& pool = standard_pool();
  return {pool[rng.index(pool.size())], pool[rng.index(pool.size())]};
}

double residual(const JetField& u, const Equation& eq, double x, double t) {
  const Jet2 j = u.at(x, t);
  if (eq.kind == Equation::Kind::Characteristic) {
    const double den = std::max({1.0, std::abs(j.fxx), std::abs(j.ftt)});
    return j.fxt / den;
  }
  const double c = eq.speed->value(x, t);
  const double lhs = j.ftt / (c * c);
  const double den = std::max({1.0, std::abs(lhs), std::abs(j.fxx)});
  return (lhs - j.fxx) / den;
}

ResidualReport residual_grid(const JetField& u, const Equation& eq, const GridSpec& grid,
                             double tol, const std::string& id) {
  ResidualReport rep;
  rep.id = id;
  rep.grid = grid.to_string();
  rep.tolerance = tol;
  double sumsq = 0;
  for (double x : grid.x_nodes())
    for (double t : grid.t_nodes()) {
      try {
        const double r = std::abs(residual(u, eq, x, t));
        rep.max_residual = std::max(rep.max_residual, r);
        sumsq += r * r;
        ++rep.points;
      } catch (const std::exception& e) {
        ++rep.failures;
        if (rep.notes.size() < 5) rep.notes.push_back(e.what());
      }
    }
  rep.l2_residual = rep.points ? std::sqrt(sumsq / static_cast<double>(rep.points)) : 0.0;
  rep.pass = rep.failures == 0 && rep.points > 0 && rep.max_residual <= tol;
  return rep;
}

WaveSpeed declared_source_speed(const Mapping& m) {
  if (const auto* p = std::get_if<PointMapping>(&m)) {
    if (p->source_speed) return *p->source_speed;
    if (p->id == "M2")
      return WaveSpeed::profile_text("1",
                                     Region::box(-Region::kInf, Region::kInf, 0, Region::kInf));
    if (p->id == "M3") return WaveSpeed::profile_text("1", Region::positive_quadrant());
    return WaveSpeed::quadratic_x();
  }
  return WaveSpeed::quadratic_x();
}

ResidualReport check_mapping_equivalence(const Mapping& m, const WaveSpeed& source_speed,
                                         int trials, double tol, std::uint64_t seed) {
  Rng rng(seed);
  ResidualReport agg;
  agg.id = mapping_id(m);
  double sumsq = 0;

  for (int trial = 0; trial < trials; ++trial) {
    const SolutionPair fg = draw_pair(rng);
    ResidualReport one;

    if (const auto* p = std::get_if<PointMapping>(&m)) {
      if (p->target_characteristic) {
        // Build the target-side general solution and pull it back; the pulled
        // solution must satisfy the source wave equation.
        JetField u = apply_point(invert(*p), dalembert(fg).field);
        GridSpec grid = grid_from_box(p->sample_box, 16);
        one = residual_grid(u, Equation::wave(source_speed), grid, tol, agg.id);
      } else {
        auto sol = solution_for_speed(source_speed, fg);
        if (!sol)
          throw std::invalid_argument("no closed-form source solution for speed " +
                                      source_speed.formula());
        JetField sigma = apply_point(*p, sol->field);
        WaveSpeed target = transformed_speed(source_speed, p->id);
        auto [alo, ahi] = std::pair{p->sample_box.x_lo, p->sample_box.x_hi};
        auto [blo, bhi] = std::pair{p->sample_box.t_lo, p->sample_box.t_hi};
        auto [c1, c2] = p->map_point(alo, blo);
        auto [c3, c4] = p->map_point(ahi, bhi);
        Region image = Region::box(std::min(c1, c3), std::max(c1, c3), std::min(c2, c4),
                                   std::max(c2, c4));
        one = residual_grid(sigma, Equation::wave(target), grid_from_box(image, 16), tol,
                            agg.id);
      }
    } else if (const auto* n = std::get_if<NonlocalMapping>(&m)) {
      auto sol = solution_for_speed(source_speed, fg);
      if (!sol)
        throw std::invalid_argument("no closed-form source solution for speed " +
                                    source_speed.formula());
      JetField B = push_forward_nonlocal(*n, sol->field);
      WaveSpeed target = transformed_speed(source_speed, n->id);
      GridSpec grid = grid_from_box(n->sample_box, 16, /*t_log=*/true);
      one = residual_grid(B, Equation::wave(target), grid, tol, agg.id);
    } else {
      const auto& c = std::get<CompositeMapping>(m);
      JetField B = push_forward(c, dalembert(fg).field);
      WaveSpeed target = WaveSpeed::time_power(
          c.inner.speed_power, parse("x^2", {"x"}),
          Region::box(0, Region::kInf, 0, Region::kInf));
      GridSpec grid = grid_from_box(c.inner.sample_box, 16, /*t_log=*/true);
      one = residual_grid(B, Equation::wave(target), grid, tol, agg.id);
    }

    agg.grid = one.grid;
    fold_into(agg, one, sumsq);
  }
  finish(agg, sumsq, tol);
  return agg;
}

RoundtripReport check_roundtrip(const PointMapping& m, int trials, double tol,
                                std::uint64_t seed) {
  Rng rng(seed);
  RoundtripReport rep;
  rep.id = m.id;
  rep.trials = trials;
  rep.tolerance = tol;
  for (int i = 0; i < trials; ++i) {
    const double x = rng.uniform(m.sample_box.x_lo, m.sample_box.x_hi);
    const double t = rng.uniform(m.sample_box.t_lo, m.sample_box.t_hi);
    auto [X, T] = m.map_point(x, t);
    auto [xr, tr] = m.unmap_point(X, T);
    const double dev = std::max(std::abs(xr - x), std::abs(tr - t)) /
                       (1.0 + std::max(std::abs(x), std::abs(t)));
    rep.worst = std::max(rep.worst, dev);
  }
  rep.pass = rep.worst <= tol;
  return rep;
}

RelationReport check_integral_suite(const NonlocalMapping& n, int points, double tol,
                                    double fit_tol, std::uint64_t seed,
                                    std::optional<double> kappa_override) {
  Rng rng(seed);
  RelationReport rep;
  rep.id = n.id;
  rep.kappa = n.relation_kappa;
  rep.tolerance = tol;
  rep.fit_tolerance = fit_tol;
  const double kappa_used = kappa_override.value_or(n.relation_kappa);

  auto [xlo, xhi] = shrink(n.sample_box.x_lo, n.sample_box.x_hi);
  auto [Tlo, Thi] = shrink(n.sample_box.t_lo, n.sample_box.t_hi);

  for (int i = 0; i < points; ++i) {
    const SolutionPair fg = draw_pair(rng);
    AnalyticSolution u = general_solution_quadratic(fg);
    JetField B = push_forward_nonlocal(n, u.field);
    const double x = rng.uniform(xlo, xhi);
    const double T = std::exp(rng.uniform(std::log(Tlo), std::log(Thi)));
    auto [lhs, rhs] = integral_relation_terms(n, u.field, B, x, T);
    const double raw = std::abs(lhs - kappa_used * rhs);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(kappa_used * rhs)});
    rep.max_residual = std::max(rep.max_residual, raw / scale);
    ++rep.points;
  }

  // 3-point least-squares fit of kappa from lhs = kappa * rhs, cross-checked
  // against the stored chain-rule constant.
  {
    const SolutionPair fg = SolutionPair::from_text("sin(s)", "cos(s)");
    AnalyticSolution u = general_solution_quadratic(fg);
    JetField B = push_forward_nonlocal(n, u.field);
    const double xs[3] = {0.9, 1.3, 1.7};
    double num = 0, den = 0;
    for (int i = 0; i < 3; ++i) {
      const double T = Tlo * std::pow(Thi / Tlo, (i + 0.5) / 3.0);
      auto [lhs, rhs] = integral_relation_terms(n, u.field, B, xs[i], T);
      num += lhs * rhs;
      den += rhs * rhs;
    }
    rep.kappa_fit = num / den;
    rep.kappa_rel_err = std::abs(rep.kappa_fit - rep.kappa) / std::abs(rep.kappa);
  }

  rep.pass = rep.max_residual <= tol && rep.kappa_rel_err <= fit_tol;
  return rep;
}

JetField corrupt_with_bump(const JetField& u) {
  JetField bump;
  bump.eval = [](const Jet2& xs, const Jet2& ts) {
    return 0.01 * (powi(xs, 3) * powi(ts, 2));
  };
  return u + bump;
}

Injection injection_from_name(const std::string& name) {
  if (name == "none" || name.empty()) return Injection::None;
  if (name == "corrupt-solution") return Injection::CorruptSolution;
  if (name == "flip-mapping-sign") return Injection::FlipMappingSign;
  if (name == "scale-kappa") return Injection::ScaleKappa;
  if (name == "flip-inverse-sign") return Injection::FlipInverseSign;
  throw std::invalid_argument("unknown injection `" + name + "`");
}

GridSpec family_grid(const std::string& family, int n) {
  if (family == "const15") return GridSpec::box(-2, 2, n, -2, 2, n);
  if (family == "quad17") return GridSpec::box(1, 2, n, 0, 1, n);
  if (family == "delta0") return GridSpec::box(0.7, 2.5, n, 0.7, 2.5, n);
  if (family == "delta+1") return GridSpec::box(1.3, 3.5, n, 1.3, 3.5, n);
  if (family == "delta-1") return GridSpec::box(-2, 2, n, -2, 2, n);
  if (family == "n1gen") return GridSpec::box(0.5, 2.5, n, 1, 27, n, false, true);
  if (family == "n2gen") return GridSpec::box(0.5, 2.5, n, 0.05, 2, n, false, true);
  throw std::invalid_argument("unknown solution family `" + family + "`");
}

FamilyField family_field(const std::string& family, const SolutionPair& fg) {
  if (family == "const15") {
    // Q-pullback: the characteristic solution carried onto the x^2 equation.
    return {apply_point(invert(make_q()), dalembert(fg).field),
            Equation::wave(WaveSpeed::quadratic_x())};
  }
  AnalyticSolution sol = family_solution(family, fg);
  return {sol.field, sol.equation};
}

std::vector<ConvergenceCase> fd_reference_cases() {
  return {
      {"const15", SolutionPair::from_text("sin(s)", "cos(s)"), 1.0, 2.0, 0.0, 0.3},
      {"quad17", SolutionPair::from_text("sin(s)", "cos(s)"), 1.0, 2.0, 0.0, 0.3},
      {"delta0", SolutionPair::from_text("sin(s)", "cos(s)"), 1.0, 2.0, 1.0, 1.4},
      {"delta+1", SolutionPair::from_text("sin(s)", "cos(s)"), 1.5, 2.5, 1.5, 1.9},
      {"delta-1", SolutionPair::from_text("sin(s)", "cos(s)"), 0.0, 1.0, 0.0, 0.4},
      {"n1gen", SolutionPair::from_text("0.05*sin(s)", "0.05*cos(s)"), 1.0, 2.0, 8.0, 9.0},
      {"n2gen", SolutionPair::from_text("0.1*sin(s)", "0.1*cos(s)"), 1.0, 2.0, 0.4, 0.8},
  };
}

ConvergenceCase fd_reference_case(const std::string& family) {
  for (auto& c : fd_reference_cases())
    if (c.family == family) return c;
  throw std::invalid_argument("no fd reference case for family `" + family + "`");
}

ConvergenceResult run_convergence(const ConvergenceCase& c, int levels) {
  FamilyField ff = family_field(c.family, c.fg);
  const JetField& f = ff.field;
  const WaveSpeed& speed = *ff.equation.speed;

  ScalarFn phi = [&f, &c](double x) { return f.value(x, c.t0); };
  ScalarFn psi = [&f, &c](double x) { return f.at(x, c.t0).ft; };
  TraceFn trace = [&f](double x, double t) { return f.value(x, t); };

  ConvergenceResult res;
  int n = c.base_n;
  for (int level = 0; level < levels; ++level, n *= 2) {
    Field2D field = leapfrog_solve(speed, phi, psi, trace, Grid1D::make(c.x_lo, c.x_hi, n),
                                   c.t0, c.t_end, c.cfl);
    res.errors.push_back(field_error(field, trace));
  }
  res.order = convergence_order(res.errors);
  return res;
}

std::vector<ResidualReport> suite_residuals(const SuiteConfig& cfg) {
  const char* families[] = {"const15", "quad17",  "delta0", "delta+1",
                            "delta-1", "n1gen",   "n2gen"};
  std::vector<ResidualReport> reports;
  Rng rng(cfg.seed);
  for (const char* family : families) {
    ResidualReport agg;
    agg.id = family;
    double sumsq = 0;
    const GridSpec grid = family_grid(family, cfg.grid_n);
    agg.grid = grid.to_string();
    for (int trial = 0; trial < cfg.trials; ++trial) {
      AnalyticSolution sol = family_solution(family, draw_pair(rng));
      JetField f = sol.field;
      if (cfg.injection == Injection::CorruptSolution) f = corrupt_with_bump(f);
      ResidualReport one = residual_grid(f, sol.equation, grid, cfg.tol, agg.id);
      fold_into(agg, one, sumsq);
    }
    finish(agg, sumsq, cfg.tol);
    reports.push_back(std::move(agg));
  }
  return reports;
}

std::vector<ResidualReport> suite_equivalence(const SuiteConfig& cfg) {
  std::vector<Mapping> cat = catalog(cfg.rho);
  if (cfg.injection == Injection::FlipMappingSign) {
    for (auto& m : cat)
      if (auto* p = std::get_if<PointMapping>(&m); p && p->id == "Q")
        p->multiplier = [](const Jet2& x, const Jet2&) { return x; };  // 1/x -> x
  }
  std::vector<ResidualReport> reports;
  std::uint64_t k = 0;
  for (const auto& m : cat) {
    reports.push_back(check_mapping_equivalence(m, declared_source_speed(m), cfg.trials,
                                                cfg.tol, cfg.seed + 1000 + k++));
  }
  return reports;
}

std::vector<RelationReport> suite_integral(const SuiteConfig& cfg) {
  std::optional<double> kappa_override;
  std::vector<RelationReport> reports;
  const NonlocalMapping ns[] = {make_n1(), make_n2()};
  std::uint64_t k = 0;
  for (const auto& n : ns) {
    if (cfg.injection == Injection::ScaleKappa) kappa_override = 1.1 * n.relation_kappa;
    reports.push_back(check_integral_suite(n, cfg.relation_points, cfg.tol, cfg.kappa_fit_tol,
                                           cfg.seed + 2000 + k++, kappa_override));
  }
  return reports;
}

std::vector<RoundtripReport> suite_roundtrip(const SuiteConfig& cfg) {
  std::vector<Mapping> cat = catalog(cfg.rho);
  if (cfg.injection == Injection::FlipInverseSign) {
    for (auto& m : cat)
      if (auto* p = std::get_if<PointMapping>(&m); p && p->id == "Q") {
        auto orig = p->inverse;
        p->inverse = [orig](const Jet2& a, const Jet2& b) {
          auto [x, t] = orig(a, b);
          return CoordJets{-x, t};
        };
      }
  }
  std::vector<RoundtripReport> reports;
  std::uint64_t k = 0;
  for (const auto& m : cat) {
    if (const auto* p = std::get_if<PointMapping>(&m)) {
      reports.push_back(
          check_roundtrip(*p, cfg.roundtrip_trials, cfg.roundtrip_tol, cfg.seed + 3000 + k));
    } else {
      RoundtripReport rep;
      rep.id = mapping_id(m);
      rep.tolerance = cfg.roundtrip_tol;
      try {
        invert(m);
        rep.pass = false;
        rep.note = "invert unexpectedly succeeded on a non-invertible mapping";
      } catch (const not_invertible&) {
        rep.pass = true;
        rep.note = "invert correctly rejected (non-invertible)";
      }
      reports.push_back(std::move(rep));
    }
    ++k;
  }
  return reports;
}

VerifyOutcome run_verify(const SuiteConfig& cfg, const std::string& suites) {
  auto wants = [&suites](const char* name) {
    return suites == "all" || suites.find(name) != std::string::npos;
  };
  VerifyOutcome out;
  if (wants("residuals")) {
    out.residuals = suite_residuals(cfg);
    out.ran_residuals = true;
  }
  if (wants("equivalence")) {
    out.equivalences = suite_equivalence(cfg);
    out.ran_equivalence = true;
  }
  if (wants("integral")) {
    out.relations = suite_integral(cfg);
    out.ran_integral = true;
  }
  if (wants("roundtrip")) {
    out.roundtrips = suite_roundtrip(cfg);
    out.ran_roundtrip = true;
  }
  if (!out.ran_residuals && !out.ran_equivalence && !out.ran_integral && !out.ran_roundtrip)
    throw std::invalid_argument("no suite selected by `" + suites + "`");
  for (const auto& r : out.residuals) out.pass = out.pass && r.pass;
  for (const auto& r : out.equivalences) out.pass = out.pass && r.pass;
  for (const auto& r : out.relations) out.pass = out.pass && r.pass;
  for (const auto& r : out.roundtrips) out.pass = out.pass && r.pass;
  return out;
}

std::string VerifyOutcome::to_json(const SuiteConfig& cfg) const {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["seed"] = cfg.seed;
  j["tolerance"] = cfg.tol;
  j["trials"] = cfg.trials;
  j["injection"] = injection_name(cfg.injection);
  auto res = nlohmann::ordered_json::array();
  for (const auto& r : residuals)
    res.push_back({{"id", r.id},
                   {"grid", r.grid},
                   {"points", r.points},
                   {"failures", r.failures},
                   {"max_residual", r.max_residual},
                   {"l2_residual", r.l2_residual},
                   {"pass", r.pass}});
  if (ran_residuals) j["residuals"] = res;
  auto eq = nlohmann::ordered_json::array();
  for (const auto& r : equivalences)
    eq.push_back({{"id", r.id},
                  {"grid", r.grid},
                  {"points", r.points},
                  {"failures", r.failures},
                  {"max_residual", r.max_residual},
                  {"l2_residual", r.l2_residual},
                  {"pass", r.pass}});
  if (ran_equivalence) j["equivalence"] = eq;
  auto rel = nlohmann::ordered_json::array();
  for (const auto& r : relations)
    rel.push_back({{"id", r.id},
                   {"kappa", r.kappa},
                   {"kappa_fit", r.kappa_fit},
                   {"kappa_rel_err", r.kappa_rel_err},
                   {"points", r.points},
                   {"max_residual", r.max_residual},
                   {"pass", r.pass}});
  if (ran_integral) j["integral_relation"] = rel;
  auto rt = nlohmann::ordered_json::array();
  for (const auto& r : roundtrips) {
    nlohmann::ordered_json e = {{"id", r.id},
                                {"trials", r.trials},
                                {"worst_deviation", r.worst},
                                {"pass", r.pass}};
    if (!r.note.empty()) e["note"] = r.note;
    rt.push_back(e);
  }
  if (ran_roundtrip) j["roundtrip"] = rt;
  j["pass"] = pass;
  return j.dump(2);
}

std::string VerifyOutcome::to_table() const {
  std::ostringstream os;
  auto line = [&os](const std::string& suite, const std::string& id, double metric,
                    bool pass, const std::string& extra = "") {
    os << (pass ? "PASS" : "FAIL") << "  " << suite << "  " << id;
    for (std::size_t i = suite.size() + id.size(); i < 24; ++i) os << ' ';
    os << " max=" << format_double(metric);
    if (!extra.empty()) os << "  " << extra;
    os << '\n';
  };
  for (const auto& r : residuals) line("residual   ", r.id, r.max_residual, r.pass);
  for (const auto& r : equivalences) line("equivalence", r.id, r.max_residual, r.pass);
  for (const auto& r : relations)
    line("integral   ", r.id, r.max_residual, r.pass,
         "kappa=" + format_double(r.kappa) + " fit_err=" + format_double(r.kappa_rel_err));
  for (const auto& r : roundtrips)
    line("roundtrip  ", r.id, r.worst, r.pass, r.note);
  os << (pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
  return os.str();
}

}  // namespace varwave
