// Truncated Taylor (jet) arithmetic: univariate and bivariate derivatives up
// to order 3, closed under +,-,*,/ and composition with smooth univariate
// functions. This is the differentiation substrate for all residual checks:
// evaluating a formula on jet-seeded coordinates yields its exact partial
// derivatives at the point, to rounding.
//
// Convention: plain derivatives are stored (f, f', f'', f'''), not Taylor
// coefficients. Third-order entries may be NaN when a field is built by an
// operation that consumes one derivative order (see d_dt / JetField docs);
// truncated arithmetic never feeds higher-order entries into lower ones, so
// the poisoning stays confined to order 3.

#ifndef VARWAVE_JET_HPP
#define VARWAVE_JET_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace varwave {

// Evaluation failure of a formula at a point (log of non-positive value,
// division by zero, ...). `where` names the offending operation.
class eval_error : public std::runtime_error {
public:
  explicit eval_error(const std::string& what) : std::runtime_error(what) {}
};

// Univariate jet: value and first three derivatives at a point.
struct Jet1 {
  double f = 0, d1 = 0, d2 = 0, d3 = 0;

  static Jet1 variable(double v) { return {v, 1.0, 0.0, 0.0}; }
  static Jet1 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
};

Jet1 operator+(const Jet1& a, const Jet1& b);
Jet1 operator-(const Jet1& a, const Jet1& b);
Jet1 operator-(const Jet1& a);
Jet1 operator*(const Jet1& a, const Jet1& b);
Jet1 operator/(const Jet1& a, const Jet1& b);
Jet1 operator*(double s, const Jet1& a);
Jet1 operator+(const Jet1& a, double s);
Jet1 operator-(const Jet1& a, double s);

// Univariate chain rule: returns outer∘inner where `outer` holds the outer
// function's derivatives at inner.f.
Jet1 chain(const Jet1& outer, const Jet1& inner);

// Bivariate jet: partial derivatives at a point up to total order 3.
// Mixed partials are stored once (fxt means d2f/dxdt).
struct Jet2 {
  double f = 0;
  double fx = 0, ft = 0;
  double fxx = 0, fxt = 0, ftt = 0;
  double fxxx = 0, fxxt = 0, fxtt = 0, fttt = 0;

  static Jet2 var_x(double x0) {
    Jet2 j;
    j.f = x0;
    j.fx = 1.0;
    return j;
  }
  static Jet2 var_t(double t0) {
    Jet2 j;
    j.f = t0;
    j.ft = 1.0;
    return j;
  }
  static Jet2 constant(double c) {
    Jet2 j;
    j.f = c;
    return j;
  }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator*(double s, const Jet2& a);
Jet2 operator+(const Jet2& a, double s);
Jet2 operator-(const Jet2& a, double s);

// Bivariate chain rule (Faa di Bruno to total order 3): outer∘theta where
// `outer` holds the outer function's univariate derivatives at theta.f.
Jet2 compose_univariate(const Jet1& outer, const Jet2& theta);

// Derivative tuples of the supported elementary functions at v, used by both
// chain rules. Domain violations throw eval_error.
Jet1 sin_derivs(double v);
Jet1 cos_derivs(double v);
Jet1 exp_derivs(double v);
Jet1 log_derivs(double v);
Jet1 sqrt_derivs(double v);
Jet1 tanh_derivs(double v);
Jet1 atan_derivs(double v);
Jet1 tan_derivs(double v);
Jet1 recip_derivs(double v);
Jet1 pow_derivs(double v, double p);  // v > 0

Jet1 sin(const Jet1& a);
Jet1 cos(const Jet1& a);
Jet1 exp(const Jet1& a);
Jet1 log(const Jet1& a);
Jet1 sqrt(const Jet1& a);
Jet1 tanh(const Jet1& a);
Jet1 atan(const Jet1& a);
Jet1 tan(const Jet1& a);
Jet1 pow(const Jet1& a, double p);
Jet1 powi(const Jet1& a, long n);  // repeated multiplication, any sign of base

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 tanh(const Jet2& a);
Jet2 atan(const Jet2& a);
Jet2 tan(const Jet2& a);
Jet2 pow(const Jet2& a, double p);
Jet2 powi(const Jet2& a, long n);

// Partial derivative in t as a field: consumes one order. The result's
// third-order entries are unknowable from an order-3 input and are NaN.
Jet2 d_dt(const Jet2& w);

// Substitute t = tau(T) into a jet taken in (x,t): returns the jet of
// w(x, tau(T)) in (x,T). `tau` is the univariate jet of the substitution
// at T0. NaN third-order entries of w propagate to order 3 only.
Jet2 substitute_t(const Jet2& w, const Jet1& tau);

}  // namespace varwave

#endif
