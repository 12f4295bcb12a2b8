#include "varwave/solutions.hpp"

#include <cmath>
#include <limits>

namespace varwave {

namespace {

constexpr double kThird = 1.0 / 3.0;

Jet2 recip(const Jet2& a) { return compose_univariate(recip_derivs(a.f), a); }

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

}  // namespace

Jet2 apply_f(const Expression& F, const Jet2& theta) {
  Jet1 d = eval_jet1(F, Jet1::variable(theta.f));
  return compose_univariate(d, theta);
}

Jet2 apply_fprime(const Expression& F, const Jet2& theta) {
  Jet1 d = eval_jet1(F, Jet1::variable(theta.f));
  Jet1 dp{d.d1, d.d2, d.d3, std::numeric_limits<double>::quiet_NaN()};
  return compose_univariate(dp, theta);
}

AnalyticSolution dalembert(const SolutionPair& fg) {
  AnalyticSolution s;
  s.family = Family::Const15;
  s.name = "const15";
  s.fg = fg;
  s.equation = Equation::characteristic();
  s.region = Region::all();
  Expression F = fg.F, G = fg.G;
  s.field.eval = [F, G](const Jet2& xi, const Jet2& eta) {
    return apply_f(F, xi) + apply_f(G, eta);
  };
  return s;
}

AnalyticSolution dalembert_physical(const SolutionPair& fg) {
  AnalyticSolution s;
  s.family = Family::Const15;
  s.name = "const15-physical";
  s.fg = fg;
  s.equation = Equation::wave(WaveSpeed::profile_text("1"));
  s.region = Region::all();
  Expression F = fg.F, G = fg.G;
  s.field.eval = [F, G](const Jet2& x, const Jet2& t) {
    return apply_f(F, x + t) + apply_f(G, x - t);
  };
  return s;
}

AnalyticSolution general_solution_quadratic(const SolutionPair& fg) {
  AnalyticSolution s;
  s.family = Family::Quad17;
  s.name = "quad17";
  s.fg = fg;
  s.equation = Equation::wave(WaveSpeed::quadratic_x());
  s.region = Region::x_positive();
  Expression F = fg.F, G = fg.G;
  s.field.eval = [F, G](const Jet2& x, const Jet2& t) {
    Jet2 ix = recip(x);
    return x * (apply_f(F, ix + t) + apply_f(G, ix - t));
  };
  return s;
}

AnalyticSolution general_solution_delta(const SolutionPair& fg, double delta,
                                        std::optional<Region> component) {
  AnalyticSolution s;
  s.family = Family::Delta;
  s.name = "delta";
  s.fg = fg;
  s.delta = delta;
  Expression F = fg.F, G = fg.G;

  if (delta == 0.0) {
    s.region = component.value_or(Region::positive_quadrant());
    s.field.eval = [F, G](const Jet2& x, const Jet2& t) {
      Jet2 ix = recip(x), it = recip(t);
      return x * t * (apply_f(F, ix + it) + apply_f(G, ix - it));
    };
  } else if (delta > 0.0) {
    const double rho = std::sqrt(delta);
    s.region = component.value_or(Region::box(rho, Region::kInf, rho, Region::kInf));
    s.field.eval = [F, G, rho](const Jet2& x, const Jet2& t) {
      auto logratio = [rho](const Jet2& z) {
        Jet2 w = (z - rho) / (z + rho);
        if (w.f > 0) return log(w);
        if (w.f < 0) return log(-w);
        throw eval_error("characteristic coordinate singular at |z|=rho");
      };
      Jet2 lx = logratio(x), lt = logratio(t);
      Jet2 xi = 0.5 * rho * (lx - lt);
      Jet2 eta = 0.5 * rho * (lx + lt);
      Jet2 amp = sqrt((x * x - rho * rho) * (t * t - rho * rho));
      return amp * (apply_f(F, xi) + apply_f(G, eta));
    };
  } else {
    const double rho = std::sqrt(-delta);
    s.region = component.value_or(Region::all());
    s.field.eval = [F, G, rho](const Jet2& x, const Jet2& t) {
      Jet2 ax = rho * atan(x / Jet2::constant(rho));
      Jet2 at = rho * atan(t / Jet2::constant(rho));
      Jet2 amp = sqrt((x * x + rho * rho) * (t * t + rho * rho));
      return amp * (apply_f(F, ax - at) + apply_f(G, ax + at));
    };
  }
  s.equation = Equation::wave(WaveSpeed::delta_family(delta, s.region));
  return s;
}

AnalyticSolution general_solution_n1(const SolutionPair& fg) {
  AnalyticSolution s;
  s.family = Family::N1Gen;
  s.name = "n1gen";
  s.fg = fg;
  s.equation = Equation::wave(
      WaveSpeed::time_power(-4.0 * kThird, parse("x^2", {"x"}),
                            Region::box(0, Region::kInf, 0, Region::kInf)));
  s.region = Region::box(0, Region::kInf, 0, Region::kInf);
  Expression F = fg.F, G = fg.G;
  s.field.third_order_exact = false;  // contains F', G' explicitly
  s.field.eval = [F, G](const Jet2& x, const Jet2& T) {
    Jet2 th = 3.0 * pow(T, -kThird);
    Jet2 ix = recip(x);
    Jet2 xi = ix + th, eta = ix - th;
    Jet2 bracket = apply_f(F, xi) + apply_f(G, eta) +
                   th * (apply_fprime(G, eta) - apply_fprime(F, xi));
    return x * T * bracket;
  };
  return s;
}

AnalyticSolution general_solution_n2(const SolutionPair& fg) {
  AnalyticSolution s;
  s.family = Family::N2Gen;
  s.name = "n2gen";
  s.fg = fg;
  s.equation = Equation::wave(
      WaveSpeed::time_power(-2.0 * kThird, parse("x^2", {"x"}),
                            Region::box(0, Region::kInf, 0, Region::kInf)));
  s.region = Region::box(0, Region::kInf, 0, Region::kInf);
  Expression F = fg.F, G = fg.G;
  s.field.third_order_exact = false;
  s.field.eval = [F, G](const Jet2& x, const Jet2& T) {
    Jet2 th = 3.0 * pow(T, kThird);
    Jet2 ix = recip(x);
    Jet2 xi = ix + th, eta = ix - th;
    Jet2 bracket = apply_f(F, xi) + apply_f(G, eta) +
                   th * (apply_fprime(G, eta) - apply_fprime(F, xi));
    return x * bracket;
  };
  return s;
}

std::optional<AnalyticSolution> solution_for_speed(const WaveSpeed& speed,
                                                   const SolutionPair& fg) {
  switch (speed.family()) {
    case SpeedFamily::QuadraticX:
      return general_solution_quadratic(fg);
    case SpeedFamily::Delta:
      return general_solution_delta(fg, speed.delta(), speed.validity());
    case SpeedFamily::TimePower: {
      // only the x^2 base has a catalog solution
      if (render(speed.expression()) != "x^2") return std::nullopt;
      if (near(speed.power(), -4.0 * kThird)) return general_solution_n1(fg);
      if (near(speed.power(), -2.0 * kThird)) return general_solution_n2(fg);
      return std::nullopt;
    }
    case SpeedFamily::Profile:
    case SpeedFamily::General: {
      // constant speed 1 in physical coordinates
      const auto& e = speed.expression();
      if (e.root() && e.root()->kind == NodeKind::Number && e.root()->number == 1.0) {
        AnalyticSolution s = dalembert_physical(fg);
        s.region = speed.validity();
        return s;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace varwave
