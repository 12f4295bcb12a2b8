// A jet-evaluable bivariate field: the common currency between solutions,
// mappings, and the residual operator.
//
// `eval` maps coordinate seeds to the field's jet. Closed-form fields are
// reseedable: handing them the jets of other coordinate functions composes
// correctly (this is how point mappings pull solutions through coordinate
// changes). Fields built by taking a derivative of another field are only
// valid at identity seeds and carry reseedable=false; composing those is an
// error, evaluating at a point is fine.

#ifndef VARWAVE_FIELD_HPP
#define VARWAVE_FIELD_HPP

#include <functional>

#include "varwave/jet.hpp"

namespace varwave {

struct JetField {
  std::function<Jet2(const Jet2&, const Jet2&)> eval;
  bool reseedable = true;
  // Third-order jet entries are exact when true; NaN otherwise (fields that
  // internally differentiate an order-3 jet lose one order).
  bool third_order_exact = true;

  // Jet at a point (identity seeds). Always allowed.
  Jet2 at(double x, double t) const { return eval(Jet2::var_x(x), Jet2::var_t(t)); }

  double value(double x, double t) const { return at(x, t).f; }

  // Composition entry point: arbitrary seeds.
  Jet2 operator()(const Jet2& a, const Jet2& b) const {
    if (!reseedable)
      throw eval_error("field was built by differentiation and cannot be re-seeded");
    return eval(a, b);
  }
};

inline JetField operator+(const JetField& a, const JetField& b) {
  JetField r;
  r.reseedable = a.reseedable && b.reseedable;
  r.third_order_exact = a.third_order_exact && b.third_order_exact;
  auto ea = a.eval, eb = b.eval;
  r.eval = [ea, eb](const Jet2& xs, const Jet2& ts) { return ea(xs, ts) + eb(xs, ts); };
  return r;
}

inline JetField operator*(double s, const JetField& a) {
  JetField r = a;
  auto ea = a.eval;
  r.eval = [s, ea](const Jet2& xs, const Jet2& ts) { return s * ea(xs, ts); };
  return r;
}

}  // namespace varwave

#endif
