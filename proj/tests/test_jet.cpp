#include <doctest.h>

#include <cmath>

#include "support/fd_oracle.hpp"
#include "varwave/jet.hpp"

using namespace varwave;

namespace {

// The oracle must stand on its own feet before it judges the jets.
TEST_CASE("fd oracle reproduces hand derivatives of sin and exp") {
  const double h = 1e-3;
  auto f = [](double x) { return std::sin(x); };
  CHECK(fd_oracle::d1(f, 0.7, h) == doctest::Approx(std::cos(0.7)).epsilon(1e-9));
  CHECK(fd_oracle::d2(f, 0.7, h) == doctest::Approx(-std::sin(0.7)).epsilon(1e-8));
  CHECK(fd_oracle::d3(f, 0.7, h) == doctest::Approx(-std::cos(0.7)).epsilon(1e-6));
  auto g = [](double x) { return std::exp(x); };
  CHECK(fd_oracle::d3(g, 0.3, h) == doctest::Approx(std::exp(0.3)).epsilon(1e-6));
}

void check_jet1_against_fd(const std::function<Jet1(Jet1)>& jf,
                           const std::function<double(double)>& f, double x,
                           double tol = 1e-6) {
  Jet1 j = jf(Jet1::variable(x));
  const double h = 1e-3;
  CHECK(j.f == doctest::Approx(f(x)).epsilon(1e-12));
  CHECK(j.d1 == doctest::Approx(fd_oracle::d1(f, x, h)).epsilon(tol));
  CHECK(j.d2 == doctest::Approx(fd_oracle::d2(f, x, h)).epsilon(tol));
  CHECK(j.d3 == doctest::Approx(fd_oracle::d3(f, x, h)).epsilon(std::max(tol, 1e-5)));
}

}  // namespace

TEST_CASE("polynomial jets are exact") {
  // (s^2) at s=3 with identity seed: (9, 6, 2, 0)
  Jet1 s = Jet1::variable(3.0);
  Jet1 r = s * s;
  CHECK(r.f == 9.0);
  CHECK(r.d1 == 6.0);
  CHECK(r.d2 == 2.0);
  CHECK(r.d3 == 0.0);

  Jet1 c = powi(s, 3) - 2.0 * s + 5.0;
  CHECK(c.f == 27.0 - 6.0 + 5.0);
  CHECK(c.d1 == 27.0 - 2.0);
  CHECK(c.d2 == 18.0);
  CHECK(c.d3 == 6.0);
}

TEST_CASE("sine jet at zero gives the Taylor pattern") {
  Jet1 j = sin(Jet1::variable(0.0));
  CHECK(j.f == 0.0);
  CHECK(j.d1 == 1.0);
  CHECK(j.d2 == 0.0);
  CHECK(j.d3 == -1.0);
}

TEST_CASE("univariate jets match finite differences") {
  check_jet1_against_fd([](Jet1 s) { return exp(s) * s; },
                        [](double x) { return std::exp(x) * x; }, 0.7, 1e-7);
  check_jet1_against_fd([](Jet1 s) { return sin(s) / (s + 2.0); },
                        [](double x) { return std::sin(x) / (x + 2.0); }, 1.3);
  check_jet1_against_fd([](Jet1 s) { return tanh(s) * atan(s); },
                        [](double x) { return std::tanh(x) * std::atan(x); }, 0.4);
  check_jet1_against_fd([](Jet1 s) { return log(s) + sqrt(s); },
                        [](double x) { return std::log(x) + std::sqrt(x); }, 2.1);
  check_jet1_against_fd([](Jet1 s) { return pow(s, -4.0 / 3.0); },
                        [](double x) { return std::pow(x, -4.0 / 3.0); }, 1.7);
  check_jet1_against_fd([](Jet1 s) { return tan(s); },
                        [](double x) { return std::tan(x); }, 0.5);
}

TEST_CASE("bivariate product seeds") {
  // x*t at (2,5): f=10, fx=5, ft=2, fxt=1, everything else 0
  Jet2 r = Jet2::var_x(2.0) * Jet2::var_t(5.0);
  CHECK(r.f == 10.0);
  CHECK(r.fx == 5.0);
  CHECK(r.ft == 2.0);
  CHECK(r.fxt == 1.0);
  CHECK(r.fxx == 0.0);
  CHECK(r.ftt == 0.0);
  CHECK(r.fxxx == 0.0);
  CHECK(r.fttt == 0.0);
}

TEST_CASE("bivariate jets match finite differences on x^2/t^2") {
  auto f = [](double x, double t) { return x * x / (t * t); };
  Jet2 j = powi(Jet2::var_x(1.5), 2) / powi(Jet2::var_t(0.5), 2);
  auto o = fd_oracle::jet2(f, 1.5, 0.5, 1e-3);
  const double vals[10] = {j.f, j.fx, j.ft, j.fxx, j.fxt, j.ftt, j.fxxx, j.fxxt, j.fxtt, j.fttt};
  for (int k = 0; k < 10; ++k) {
    const double tol = std::max(1e-6, 1e-6 * std::abs(o[k]));
    CHECK(std::abs(vals[k] - o[k]) <= tol);
  }
}

TEST_CASE("compose_univariate: identity and chain rule") {
  Jet2 theta = compose_univariate(recip_derivs(2.0), Jet2::var_x(2.0));  // 1/x at x=2

  SUBCASE("identity outer returns theta") {
    Jet1 ident{theta.f, 1.0, 0.0, 0.0};
    Jet2 r = compose_univariate(ident, theta);
    CHECK(r.f == theta.f);
    CHECK(r.fx == theta.fx);
    CHECK(r.fxx == theta.fxx);
    CHECK(r.fxxx == theta.fxxx);
  }

  SUBCASE("sin of x+t has the right mixed partial") {
    Jet2 s = Jet2::var_x(0.3) + Jet2::var_t(0.9);
    Jet2 r = compose_univariate(sin_derivs(s.f), s);
    CHECK(r.fxt == doctest::Approx(-std::sin(1.2)).epsilon(1e-14));
  }

  SUBCASE("exp(1/x) second derivative matches finite differences") {
    Jet2 r = compose_univariate(exp_derivs(theta.f), theta);
    auto f = [](double x, double) { return std::exp(1.0 / x); };
    const double o = fd_oracle::dxx(f, 2.0, 0.0, 1e-3);
    CHECK(r.fxx == doctest::Approx(o).epsilon(1e-6));
  }
}

TEST_CASE("jet arithmetic is linear") {
  Jet2 a = sin(Jet2::var_x(0.4) * Jet2::var_t(1.1));
  Jet2 b = exp(Jet2::var_x(0.4) + Jet2::var_t(1.1));
  const double lam = 2.75;
  Jet2 lhs = a + lam * b;
  CHECK(lhs.f == doctest::Approx(a.f + lam * b.f).epsilon(1e-15));
  CHECK(lhs.fxt == doctest::Approx(a.fxt + lam * b.fxt).epsilon(1e-15));
  CHECK(lhs.fttt == doctest::Approx(a.fttt + lam * b.fttt).epsilon(1e-15));
}

TEST_CASE("d_dt extracts the t-derivative and poisons order 3") {
  Jet2 w = powi(Jet2::var_x(1.2), 2) * powi(Jet2::var_t(0.7), 3);  // x^2 t^3
  Jet2 d = d_dt(w);                                                 // 3 x^2 t^2
  CHECK(d.f == doctest::Approx(3 * 1.44 * 0.49));
  CHECK(d.fx == doctest::Approx(6 * 1.2 * 0.49 * 0.7 / 0.7 * 0.7));  // 6 x t^2
  CHECK(d.ft == doctest::Approx(6 * 1.44 * 0.7));
  CHECK(d.fxx == doctest::Approx(6 * 0.49));
  CHECK(std::isnan(d.fxxx));
  CHECK(std::isnan(d.fttt));
}

TEST_CASE("substitute_t chains t = tau(T) correctly") {
  // w = t^2 evaluated in (x,t), then t = T^3: w~(T) = T^6
  Jet2 w = powi(Jet2::var_t(8.0), 2);  // at t=8 = 2^3
  Jet1 tau = powi(Jet1::variable(2.0), 3);
  Jet2 r = substitute_t(w, tau);
  CHECK(r.f == doctest::Approx(64.0));
  CHECK(r.ft == doctest::Approx(6.0 * std::pow(2.0, 5)));
  CHECK(r.ftt == doctest::Approx(30.0 * std::pow(2.0, 4)));
  CHECK(r.fttt == doctest::Approx(120.0 * std::pow(2.0, 3)));
}

TEST_CASE("domain errors carry context") {
  CHECK_THROWS_AS(log(Jet1::variable(-1.0)), eval_error);
  CHECK_THROWS_AS(sqrt(Jet1::variable(-2.0)), eval_error);
  CHECK_THROWS_AS(Jet1::variable(1.0) / Jet1::constant(0.0), eval_error);
  CHECK_THROWS_AS(pow(Jet2::var_x(-1.0), 0.5), eval_error);
}
