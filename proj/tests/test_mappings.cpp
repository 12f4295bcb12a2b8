#include <doctest.h>

#include <cmath>

#include "support/fd_oracle.hpp"
#include "varwave/mappings.hpp"
#include "varwave/solutions.hpp"
#include "varwave/verify.hpp"

using namespace varwave;

namespace {

JetField const_zero() {
  JetField f;
  f.eval = [](const Jet2&, const Jet2&) { return Jet2::constant(0.0); };
  return f;
}

JetField coordinate_t() {
  JetField f;
  f.eval = [](const Jet2&, const Jet2& ts) { return ts; };
  return f;
}

JetField coordinate_x() {
  JetField f;
  f.eval = [](const Jet2& xs, const Jet2&) { return xs; };
  return f;
}

// generic smooth field for multiplier-consistency checks
JetField smooth_field() {
  JetField f;
  f.eval = [](const Jet2& xs, const Jet2& ts) {
    return sin(xs) * exp((1.0 / 3.0) * ts) + xs;
  };
  return f;
}

}  // namespace

TEST_CASE("catalog contains the eleven expected entries") {
  auto cat = catalog();
  REQUIRE(cat.size() == 11);
  const char* ids[] = {"M1", "M2", "M3", "Q", "D0", "DPOS", "DNEG", "N1", "N2", "C1", "C2"};
  for (std::size_t i = 0; i < cat.size(); ++i) CHECK(mapping_id(cat[i]) == ids[i]);
}

TEST_CASE("catalog json lists all mappings") {
  auto j = catalog_json(catalog());
  for (const char* id : {"M1", "Q", "DPOS", "N2", "C1"})
    CHECK(j.find("\"" + std::string(id) + "\"") != std::string::npos);
}

TEST_CASE("coordinate arithmetic of the catalog maps") {
  CHECK(make_q().map_point(2, 3) == std::pair{3.5, -2.5});
  CHECK(make_m3().map_point(-1, -1) == std::pair{1.0, 1.0});
  auto [xi, eta] = make_d0().map_point(1.0, 2.0);
  CHECK(xi == doctest::Approx(1.5));
  CHECK(eta == doctest::Approx(0.5));
}

TEST_CASE("apply_point: linearity and multiplier rules") {
  SUBCASE("M1 sends the zero solution to zero") {
    JetField s = apply_point(make_m1(), const_zero());
    CHECK(s.value(-2.0, 0.7) == 0.0);
  }
  SUBCASE("Q sends u=x to the constant 1") {
    JetField v = apply_point(make_q(), coordinate_x());
    // old x recovered from (xi,eta) must be positive: xi+eta > 0
    CHECK(v.value(3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    Jet2 j = v.at(2.0, 0.5);
    CHECK(std::abs(j.fx) < 1e-13);
    CHECK(std::abs(j.ft) < 1e-13);
  }
  SUBCASE("M2 sends u=t to the constant 1") {
    JetField s = apply_point(make_m2(), coordinate_t());
    CHECK(s.value(0.3, -2.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("invert: involutions, double inversion, and the nonlocal error") {
  SUBCASE("inverse of M1 maps 1 to -1") {
    PointMapping inv = invert(make_m1());
    auto [X, T] = inv.map_point(1.0, 0.3);
    CHECK(X == -1.0);
    CHECK(T == 0.3);
  }
  SUBCASE("double inversion of Q acts like Q") {
    PointMapping q = make_q(), qq = invert(invert(q));
    for (double x : {0.6, 1.7}) {
      for (double t : {-0.4, 1.1}) {
        auto [a1, b1] = q.map_point(x, t);
        auto [a2, b2] = qq.map_point(x, t);
        CHECK(a1 == doctest::Approx(a2).epsilon(1e-15));
        CHECK(b1 == doctest::Approx(b2).epsilon(1e-15));
      }
    }
  }
  SUBCASE("invert on nonlocal and composite mappings errors") {
    auto cat = catalog();
    for (const char* id : {"N1", "N2", "C1", "C2"})
      CHECK_THROWS_AS(invert(find_mapping(cat, id)), not_invertible);
  }
}

TEST_CASE("compose reproduces the combined characteristic coordinates") {
  CompositeMapping c1 = compose(make_q(), make_n1());
  auto [xi1, eta1] = c1.coords(1.0, 27.0);
  CHECK(xi1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eta1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  CompositeMapping c2 = compose(make_q(), make_n2());
  auto [xi2, eta2] = c2.coords(1.0, 1.0 / 27.0);
  CHECK(xi2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eta2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  PointMapping idq = compose(make_identity(), make_q());
  for (double x : {0.5, 2.0})
    for (double t : {-1.0, 0.8}) {
      auto [a, b] = idq.map_point(x, t);
      auto [qa, qb] = make_q().map_point(x, t);
      CHECK(a == doctest::Approx(qa).epsilon(1e-15));
      CHECK(b == doctest::Approx(qb).epsilon(1e-15));
    }
}

TEST_CASE("push_forward_nonlocal: collapses and constants") {
  NonlocalMapping n1 = make_n1(), n2 = make_n2();

  SUBCASE("the seed solution u=t maps to zero") {
    JetField B = push_forward_nonlocal(n1, coordinate_t());
    CHECK(B.value(1.0, 8.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  }
  SUBCASE("u=1 under N2 gives the constant -1") {
    JetField one;
    one.eval = [](const Jet2&, const Jet2&) { return Jet2::constant(1.0); };
    JetField B = push_forward_nonlocal(n2, one);
    CHECK(B.value(1.3, 0.4) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(B.value(0.7, 1.9) == doctest::Approx(-1.0).epsilon(1e-13));
  }
  SUBCASE("u=x*t maps to zero") {
    JetField xt;
    xt.eval = [](const Jet2& xs, const Jet2& ts) { return xs * ts; };
    JetField B = push_forward_nonlocal(n1, xt);
    CHECK(B.value(1.4, 3.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  }
  SUBCASE("push-forward is linear") {
    AnalyticSolution u1 = general_solution_quadratic(SolutionPair::from_text("sin(s)", "s^2"));
    AnalyticSolution u2 = general_solution_quadratic(SolutionPair::from_text("exp(s)", "cos(s)"));
    const double lam = 1.75;
    JetField combo = u1.field + lam * u2.field;
    JetField Bc = push_forward_nonlocal(n1, combo);
    JetField B1 = push_forward_nonlocal(n1, u1.field);
    JetField B2 = push_forward_nonlocal(n1, u2.field);
    for (double T : {2.0, 9.0}) {
      const double a = Bc.value(1.2, T);
      const double b = B1.value(1.2, T) + lam * B2.value(1.2, T);
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
  }
}

TEST_CASE("push_forward output cannot be re-seeded") {
  JetField B = push_forward_nonlocal(make_n1(), coordinate_t());
  CHECK_THROWS_AS(B(Jet2::var_x(1.0) + 1.0, Jet2::var_t(2.0)), eval_error);
}

TEST_CASE("integral relation holds with the derived kappa") {
  AnalyticSolution u = general_solution_quadratic(SolutionPair::from_text("sin(s)", "cos(s)"));

  SUBCASE("seed case: u=t, B=0") {
    JetField B = push_forward_nonlocal(make_n1(), coordinate_t());
    CHECK(check_integral_relation(make_n1(), coordinate_t(), B, 1.0, 8.0) <= 1e-12);
  }

  SUBCASE("N1 at (1.3, 8.0), cross-checked against finite differences in T") {
    NonlocalMapping n = make_n1();
    JetField B = push_forward_nonlocal(n, u.field);
    CHECK(check_integral_relation(n, u.field, B, 1.3, 8.0) <= 1e-8);

    // fd oracle for the left-hand side d/dT(T^(1/3) u(x, t(T)))
    auto g = [&](double T) {
      const double t = 3.0 * std::pow(T, -1.0 / 3.0);
      return std::pow(T, 1.0 / 3.0) * u.field.value(1.3, t);
    };
    const double lhs_fd = fd_oracle::d1(g, 8.0, 1e-4);
    const double rhs = n.relation_kappa * std::pow(8.0, -5.0 / 3.0) * B.value(1.3, 8.0);
    CHECK(lhs_fd == doctest::Approx(rhs).epsilon(1e-8));
  }

  SUBCASE("N2 at (1.3, 0.2)") {
    NonlocalMapping n = make_n2();
    JetField B = push_forward_nonlocal(n, u.field);
    CHECK(check_integral_relation(n, u.field, B, 1.3, 0.2) <= 1e-8);
    auto g = [&](double T) {
      const double t = 3.0 * std::pow(T, 1.0 / 3.0);
      return std::pow(T, -1.0 / 3.0) * u.field.value(1.3, t);
    };
    const double lhs_fd = fd_oracle::d1(g, 0.2, 1e-5);
    const double rhs = n.relation_kappa * std::pow(0.2, -4.0 / 3.0) * B.value(1.3, 0.2);
    CHECK(lhs_fd == doctest::Approx(rhs).epsilon(1e-7));
  }

  SUBCASE("a scaled kappa breaks the relation") {
    NonlocalMapping n = make_n1();
    JetField B = push_forward_nonlocal(n, u.field);
    CHECK(check_integral_relation(n, u.field, B, 1.3, 8.0, 1.1 * n.relation_kappa) > 1e-4);
  }
}

TEST_CASE("roundtrip property over random valid points") {
  auto cat = catalog();
  for (const auto& m : cat) {
    const auto* p = std::get_if<PointMapping>(&m);
    if (!p) continue;
    Rng rng(501);
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(p->sample_box.x_lo, p->sample_box.x_hi);
      const double t = rng.uniform(p->sample_box.t_lo, p->sample_box.t_hi);
      auto [X, T] = p->map_point(x, t);
      auto [xr, tr] = p->unmap_point(X, T);
      const double scale = 1.0 + std::max(std::abs(x), std::abs(t));
      CHECK_MESSAGE(std::abs(xr - x) <= 1e-12 * scale, p->id, " x ", x, " ", t);
      CHECK_MESSAGE(std::abs(tr - t) <= 1e-12 * scale, p->id, " t ", x, " ", t);
    }
  }
}

TEST_CASE("multiplier consistency: invert undoes apply_point") {
  auto cat = catalog();
  JetField u = smooth_field();
  for (const auto& m : cat) {
    const auto* p = std::get_if<PointMapping>(&m);
    if (!p) continue;
    JetField back = apply_point(invert(*p), apply_point(*p, u));
    Rng rng(733);
    for (int i = 0; i < 10; ++i) {
      const double x = rng.uniform(p->sample_box.x_lo, p->sample_box.x_hi);
      const double t = rng.uniform(p->sample_box.t_lo, p->sample_box.t_hi);
      const double a = u.value(x, t);
      const double b = back.value(x, t);
      CHECK_MESSAGE(std::abs(a - b) <= 1e-11 * (1.0 + std::abs(a)), p->id);
    }
  }
}

TEST_CASE("apply_point refuses derivative-built fields") {
  AnalyticSolution u = general_solution_quadratic(SolutionPair::from_text("sin(s)", "cos(s)"));
  JetField B = push_forward_nonlocal(make_n1(), u.field);
  CHECK_THROWS_AS(apply_point(make_m2(), B), eval_error);
}
