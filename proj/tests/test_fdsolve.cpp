#include <doctest.h>

#include <cmath>

#include "varwave/fdsolve.hpp"
#include "varwave/solutions.hpp"
#include "varwave/verify.hpp"

using namespace varwave;

TEST_CASE("zero data and boundaries give the identically zero field") {
  WaveSpeed one = WaveSpeed::profile_text("1");
  auto zero1 = [](double) { return 0.0; };
  auto zero2 = [](double, double) { return 0.0; };
  Field2D f = leapfrog_solve(one, zero1, zero1, zero2, Grid1D::make(0, 1, 16), 0.0, 0.5, 0.9);
  for (const auto& level : f.levels)
    for (double v : level) CHECK(v == 0.0);
}

TEST_CASE("classical travelling wave converges at second order") {
  WaveSpeed one = WaveSpeed::profile_text("1");
  const double pi = 3.14159265358979323846;
  auto exact = [pi](double x, double t) { return std::sin(pi * (x - t)); };
  auto phi = [pi](double x) { return std::sin(pi * x); };
  auto psi = [pi](double x) { return -pi * std::cos(pi * x); };

  std::vector<ErrorPair> errors;
  for (int n : {32, 64, 128}) {
    Field2D f = leapfrog_solve(one, phi, psi, exact, Grid1D::make(0, 1, n), 0.0, 0.4, 0.9);
    errors.push_back(field_error(f, exact));
  }
  const double order = convergence_order(errors);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
  CHECK(errors.back().max_error < 1e-3);
}

TEST_CASE("quadratic-speed manufactured solution converges at second order") {
  ConvergenceResult res = run_convergence(fd_reference_case("quad17"));
  CHECK(res.order >= 1.8);
  CHECK(res.order <= 2.2);
  CHECK(res.errors.back().max_error < 1e-3);
  // halving h shrinks the error roughly 4x
  const double ratio = res.errors[1].max_error / res.errors[2].max_error;
  CHECK(ratio >= 2.5);
  CHECK(ratio <= 6.0);
}

TEST_CASE("convergence_order on synthetic slopes") {
  CHECK(convergence_order({{0.1, 0.01}, {0.05, 0.0025}, {0.025, 0.000625}}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(convergence_order({{0.1, 0.1}, {0.05, 0.05}, {0.025, 0.025}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(convergence_order({{0.1, 0.01}, {0.05, 0.0025}}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_order({{0.1, 0.01}, {0.06, 0.0025}, {0.03, 0.1}}),
                  std::invalid_argument);
}

TEST_CASE("parameter validation") {
  WaveSpeed one = WaveSpeed::profile_text("1");
  auto zero1 = [](double) { return 0.0; };
  auto zero2 = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(
      leapfrog_solve(one, zero1, zero1, zero2, Grid1D::make(0, 1, 16), 0.0, 0.5, 1.5),
      std::invalid_argument);
  CHECK_THROWS_AS(
      leapfrog_solve(one, zero1, zero1, zero2, Grid1D::make(0, 1, 16), 0.0, 0.5, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::make(1, 0, 16), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::make(0, 1, 4), std::invalid_argument);
}

TEST_CASE("halving the cfl number changes the solution only at truncation scale") {
  ConvergenceCase c = fd_reference_case("quad17");
  FamilyField ff = family_field(c.family, c.fg);
  auto phi = [&](double x) { return ff.field.value(x, c.t0); };
  auto psi = [&](double x) { return ff.field.at(x, c.t0).ft; };
  auto trace = [&](double x, double t) { return ff.field.value(x, t); };
  Grid1D g = Grid1D::make(c.x_lo, c.x_hi, 64);

  Field2D a = leapfrog_solve(*ff.equation.speed, phi, psi, trace, g, c.t0, c.t_end, 0.9);
  Field2D b = leapfrog_solve(*ff.equation.speed, phi, psi, trace, g, c.t0, c.t_end, 0.45);
  const double err_a = field_error(a, trace).max_error;
  double diff = 0;
  for (int i = 0; i <= g.n; ++i)
    diff = std::max(diff, std::abs(a.final_level()[i] - b.final_level()[i]));
  CHECK(diff <= 4.0 * err_a + 1e-12);
}
