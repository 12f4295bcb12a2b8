#include "varwave/jet.hpp"

#include <cmath>
#include <limits>

namespace varwave {

Jet1 operator+(const Jet1& a, const Jet1& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

Jet1 operator-(const Jet1& a, const Jet1& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

Jet1 operator-(const Jet1& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

Jet1 operator*(const Jet1& a, const Jet1& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}

Jet1 operator/(const Jet1& a, const Jet1& b) {
  if (b.f == 0.0) throw eval_error("division by zero");
  return a * chain(recip_derivs(b.f), b);
}

Jet1 operator*(double s, const Jet1& a) { return {s * a.f, s * a.d1, s * a.d2, s * a.d3}; }
Jet1 operator+(const Jet1& a, double s) { return {a.f + s, a.d1, a.d2, a.d3}; }
Jet1 operator-(const Jet1& a, double s) { return {a.f - s, a.d1, a.d2, a.d3}; }

Jet1 chain(const Jet1& outer, const Jet1& g) {
  Jet1 r;
  r.f = outer.f;
  r.d1 = outer.d1 * g.d1;
  r.d2 = outer.d2 * g.d1 * g.d1 + outer.d1 * g.d2;
  r.d3 = outer.d3 * g.d1 * g.d1 * g.d1 + 3.0 * outer.d2 * g.d1 * g.d2 + outer.d1 * g.d3;
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.f = a.f + b.f;
  r.fx = a.fx + b.fx;
  r.ft = a.ft + b.ft;
  r.fxx = a.fxx + b.fxx;
  r.fxt = a.fxt + b.fxt;
  r.ftt = a.ftt + b.ftt;
  r.fxxx = a.fxxx + b.fxxx;
  r.fxxt = a.fxxt + b.fxxt;
  r.fxtt = a.fxtt + b.fxtt;
  r.fttt = a.fttt + b.fttt;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

Jet2 operator-(const Jet2& a) {
  Jet2 r;
  r.f = -a.f;
  r.fx = -a.fx;
  r.ft = -a.ft;
  r.fxx = -a.fxx;
  r.fxt = -a.fxt;
  r.ftt = -a.ftt;
  r.fxxx = -a.fxxx;
  r.fxxt = -a.fxxt;
  r.fxtt = -a.fxtt;
  r.fttt = -a.fttt;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.f = a.f * b.f;
  r.fx = a.fx * b.f + a.f * b.fx;
  r.ft = a.ft * b.f + a.f * b.ft;
  r.fxx = a.fxx * b.f + 2.0 * a.fx * b.fx + a.f * b.fxx;
  r.fxt = a.fxt * b.f + a.fx * b.ft + a.ft * b.fx + a.f * b.fxt;
  r.ftt = a.ftt * b.f + 2.0 * a.ft * b.ft + a.f * b.ftt;
  r.fxxx = a.fxxx * b.f + 3.0 * a.fxx * b.fx + 3.0 * a.fx * b.fxx + a.f * b.fxxx;
  r.fxxt = a.fxxt * b.f + a.fxx * b.ft + 2.0 * a.fxt * b.fx + 2.0 * a.fx * b.fxt +
           a.ft * b.fxx + a.f * b.fxxt;
  r.fxtt = a.fxtt * b.f + 2.0 * a.fxt * b.ft + a.fx * b.ftt + a.ftt * b.fx +
           2.0 * a.ft * b.fxt + a.f * b.fxtt;
  r.fttt = a.fttt * b.f + 3.0 * a.ftt * b.ft + 3.0 * a.ft * b.ftt + a.f * b.fttt;
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.f == 0.0) throw eval_error("division by zero");
  return a * compose_univariate(recip_derivs(b.f), b);
}

Jet2 operator*(double s, const Jet2& a) {
  Jet2 r = a;
  r.f *= s;
  r.fx *= s;
  r.ft *= s;
  r.fxx *= s;
  r.fxt *= s;
  r.ftt *= s;
  r.fxxx *= s;
  r.fxxt *= s;
  r.fxtt *= s;
  r.fttt *= s;
  return r;
}

Jet2 operator+(const Jet2& a, double s) {
  Jet2 r = a;
  r.f += s;
  return r;
}

Jet2 operator-(const Jet2& a, double s) {
  Jet2 r = a;
  r.f -= s;
  return r;
}

Jet2 compose_univariate(const Jet1& o, const Jet2& th) {
  Jet2 r;
  r.f = o.f;
  r.fx = o.d1 * th.fx;
  r.ft = o.d1 * th.ft;
  r.fxx = o.d2 * th.fx * th.fx + o.d1 * th.fxx;
  r.fxt = o.d2 * th.fx * th.ft + o.d1 * th.fxt;
  r.ftt = o.d2 * th.ft * th.ft + o.d1 * th.ftt;
  r.fxxx = o.d3 * th.fx * th.fx * th.fx + 3.0 * o.d2 * th.fx * th.fxx + o.d1 * th.fxxx;
  r.fxxt = o.d3 * th.fx * th.fx * th.ft + o.d2 * (2.0 * th.fx * th.fxt + th.ft * th.fxx) +
           o.d1 * th.fxxt;
  r.fxtt = o.d3 * th.fx * th.ft * th.ft + o.d2 * (2.0 * th.ft * th.fxt + th.fx * th.ftt) +
           o.d1 * th.fxtt;
  r.fttt = o.d3 * th.ft * th.ft * th.ft + 3.0 * o.d2 * th.ft * th.ftt + o.d1 * th.fttt;
  return r;
}

Jet1 sin_derivs(double v) {
  return {std::sin(v), std::cos(v), -std::sin(v), -std::cos(v)};
}

Jet1 cos_derivs(double v) {
  return {std::cos(v), -std::sin(v), -std::cos(v), std::sin(v)};
}

Jet1 exp_derivs(double v) {
  const double e = std::exp(v);
  return {e, e, e, e};
}

Jet1 log_derivs(double v) {
  if (v <= 0.0) throw eval_error("log of non-positive value " + std::to_string(v));
  const double iv = 1.0 / v;
  return {std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv};
}

Jet1 sqrt_derivs(double v) {
  if (v <= 0.0) throw eval_error("sqrt of non-positive value " + std::to_string(v));
  const double s = std::sqrt(v);
  return {s, 0.5 / s, -0.25 / (v * s), 0.375 / (v * v * s)};
}

Jet1 tanh_derivs(double v) {
  const double y = std::tanh(v);
  const double d1 = 1.0 - y * y;
  const double d2 = -2.0 * y * d1;
  const double d3 = -2.0 * (d1 * d1 + y * d2);
  return {y, d1, d2, d3};
}

Jet1 atan_derivs(double v) {
  const double w = 1.0 + v * v;
  return {std::atan(v), 1.0 / w, -2.0 * v / (w * w), (6.0 * v * v - 2.0) / (w * w * w)};
}

Jet1 tan_derivs(double v) {
  const double y = std::tan(v);
  const double d1 = 1.0 + y * y;
  const double d2 = 2.0 * y * d1;
  const double d3 = 2.0 * (d1 * d1 + y * d2);
  return {y, d1, d2, d3};
}

Jet1 recip_derivs(double v) {
  if (v == 0.0) throw eval_error("division by zero");
  const double iv = 1.0 / v;
  const double iv2 = iv * iv;
  return {iv, -iv2, 2.0 * iv2 * iv, -6.0 * iv2 * iv2};
}

Jet1 pow_derivs(double v, double p) {
  if (v <= 0.0)
    throw eval_error("non-integer power of non-positive base " + std::to_string(v));
  const double f = std::pow(v, p);
  return {f, p * std::pow(v, p - 1.0), p * (p - 1.0) * std::pow(v, p - 2.0),
          p * (p - 1.0) * (p - 2.0) * std::pow(v, p - 3.0)};
}

Jet1 sin(const Jet1& a) { return chain(sin_derivs(a.f), a); }
Jet1 cos(const Jet1& a) { return chain(cos_derivs(a.f), a); }
Jet1 exp(const Jet1& a) { return chain(exp_derivs(a.f), a); }
Jet1 log(const Jet1& a) { return chain(log_derivs(a.f), a); }
Jet1 sqrt(const Jet1& a) { return chain(sqrt_derivs(a.f), a); }
Jet1 tanh(const Jet1& a) { return chain(tanh_derivs(a.f), a); }
Jet1 atan(const Jet1& a) { return chain(atan_derivs(a.f), a); }
Jet1 tan(const Jet1& a) { return chain(tan_derivs(a.f), a); }
Jet1 pow(const Jet1& a, double p) { return chain(pow_derivs(a.f, p), a); }

Jet1 powi(const Jet1& a, long n) {
  if (n < 0) {
    Jet1 inv = chain(recip_derivs(a.f), a);
    Jet1 r = Jet1::constant(1.0);
    for (long i = 0; i < -n; ++i) r = r * inv;
    return r;
  }
  Jet1 r = Jet1::constant(1.0);
  for (long i = 0; i < n; ++i) r = r * a;
  return r;
}

Jet2 sin(const Jet2& a) { return compose_univariate(sin_derivs(a.f), a); }
Jet2 cos(const Jet2& a) { return compose_univariate(cos_derivs(a.f), a); }
Jet2 exp(const Jet2& a) { return compose_univariate(exp_derivs(a.f), a); }
Jet2 log(const Jet2& a) { return compose_univariate(log_derivs(a.f), a); }
Jet2 sqrt(const Jet2& a) { return compose_univariate(sqrt_derivs(a.f), a); }
Jet2 tanh(const Jet2& a) { return compose_univariate(tanh_derivs(a.f), a); }
Jet2 atan(const Jet2& a) { return compose_univariate(atan_derivs(a.f), a); }
Jet2 tan(const Jet2& a) { return compose_univariate(tan_derivs(a.f), a); }
Jet2 pow(const Jet2& a, double p) { return compose_univariate(pow_derivs(a.f, p), a); }

Jet2 powi(const Jet2& a, long n) {
  if (n < 0) {
    Jet2 inv = compose_univariate(recip_derivs(a.f), a);
    Jet2 r = Jet2::constant(1.0);
    for (long i = 0; i < -n; ++i) r = r * inv;
    return r;
  }
  Jet2 r = Jet2::constant(1.0);
  for (long i = 0; i < n; ++i) r = r * a;
  return r;
}

Jet2 d_dt(const Jet2& w) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  Jet2 r;
  r.f = w.ft;
  r.fx = w.fxt;
  r.ft = w.ftt;
  r.fxx = w.fxxt;
  r.fxt = w.fxtt;
  r.ftt = w.fttt;
  r.fxxx = nan;
  r.fxxt = nan;
  r.fxtt = nan;
  r.fttt = nan;
  return r;
}

Jet2 substitute_t(const Jet2& w, const Jet1& tau) {
  const double t1 = tau.d1, t2 = tau.d2, t3 = tau.d3;
  Jet2 r;
  r.f = w.f;
  r.fx = w.fx;
  r.ft = w.ft * t1;
  r.fxx = w.fxx;
  r.fxt = w.fxt * t1;
  r.ftt = w.ftt * t1 * t1 + w.ft * t2;
  r.fxxx = w.fxxx;
  r.fxxt = w.fxxt * t1;
  r.fxtt = w.fxtt * t1 * t1 + w.fxt * t2;
  r.fttt = w.fttt * t1 * t1 * t1 + 3.0 * w.ftt * t1 * t2 + w.ft * t3;
  return r;
}

}  // namespace varwave
