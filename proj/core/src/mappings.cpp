#include "varwave/mappings.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace varwave {

namespace {

constexpr double kThird = 1.0 / 3.0;

// The derivative-form constants of the integral relations are forced once
// the t(T) substitutions and β-weights are fixed. Chain rule for N1
// (β = γ₂ t B, t = 3T^(-1/3), dt/dT = -T^(-4/3)):
//   d/dT(T^(1/3) u) = (1/3)T^(-2/3) u - T^(-1) u_t
//                   = -(t^4/27)(u/t)_t = -(t^5/27) B = -9 T^(-5/3) B.
// For N2 (β = γ₁ t^-2 B, t = 3T^(1/3), dt/dT = T^(-2/3)):
//   d/dT(T^(-1/3) u) = -(1/3)T^(-4/3) u + T^(-1) u_t
//                    = (27/t^2)(u/t)_t = (27/t^4) B = (1/3) T^(-4/3) B.
// Both are validated against a numeric fit in the verify suite.
constexpr double kKappaN1 = -9.0;
constexpr double kKappaN2 = 1.0 / 3.0;

Jet2 recip(const Jet2& a) { return compose_univariate(recip_derivs(a.f), a); }

// log|w| for w of constant sign near the point.
Jet2 log_abs(const Jet2& w) {
  if (w.f > 0) return log(w);
  if (w.f < 0) return log(-w);
  throw eval_error("log|.| at zero argument");
}

}  // namespace

std::pair<double, double> CompositeMapping::coords(double x, double T) const {
  const double t = inner.t_of_T(Jet1::variable(T)).f;
  auto [xi, eta] = outer.forward(Jet2::var_x(x), Jet2::var_t(t));
  return {xi.f, eta.f};
}

PointMapping make_identity() {
  PointMapping m;
  m.id = "identity";
  m.forward = [](const Jet2& a, const Jet2& b) { return CoordJets{a, b}; };
  m.inverse = m.forward;
  m.multiplier = [](const Jet2&, const Jet2&) { return Jet2::constant(1.0); };
  m.sample_box = Region::box(-2, 2, -2, 2);
  m.forward_text = "X=x; T=t";
  m.inverse_text = "x=X; t=T";
  m.multiplier_text = "sigma=u";
  m.source_text = "c(x,t)";
  m.target_text = "c(x,t)";
  return m;
}

PointMapping make_m1() {
  PointMapping m;
  m.id = "M1";
  m.forward = [](const Jet2& x, const Jet2& t) { return CoordJets{-recip(x), t}; };
  m.inverse = m.forward;  // x -> -1/x is an involution
  m.multiplier = [](const Jet2& x, const Jet2&) { return recip(x); };
  m.old_region = Region::box(0, Region::kInf, -Region::kInf, Region::kInf);
  m.new_region = Region::box(-Region::kInf, 0, -Region::kInf, Region::kInf);
  m.sample_box = Region::box(0.4, 3.0, -2.0, 2.0);
  m.forward_text = "X=-1/x; T=t";
  m.inverse_text = "x=-1/X; t=T";
  m.multiplier_text = "sigma=u/x";
  m.source_text = "c(x)";
  m.target_text = "x^2*c(-1/x)";
  return m;
}

PointMapping make_m2() {
  PointMapping m;
  m.id = "M2";
  m.forward = [](const Jet2& x, const Jet2& t) { return CoordJets{x, -recip(t)}; };
  m.inverse = m.forward;
  m.multiplier = [](const Jet2&, const Jet2& t) { return recip(t); };
  m.old_region = Region::box(-Region::kInf, Region::kInf, 0, Region::kInf);
  m.new_region = Region::box(-Region::kInf, Region::kInf, -Region::kInf, 0);
  m.sample_box = Region::box(-2.0, 2.0, 0.4, 3.0);
  m.forward_text = "X=x; T=-1/t";
  m.inverse_text = "x=X; t=-1/T";
  m.multiplier_text = "sigma=u/t";
  m.source_text = "c(x)";
  m.target_text = "t^-2*c(x)";
  return m;
}

PointMapping make_m3() {
  PointMapping m;
  m.id = "M3";
  m.forward = [](const Jet2& x, const Jet2& t) { return CoordJets{-recip(x), -recip(t)}; };
  m.inverse = m.forward;
  m.multiplier = [](const Jet2& x, const Jet2& t) { return recip(x * t); };
  m.old_region = Region::positive_quadrant();
  m.new_region = Region::box(-Region::kInf, 0, -Region::kInf, 0);
  m.sample_box = Region::box(0.4, 3.0, 0.4, 3.0);
  m.forward_text = "X=-1/x; T=-1/t";
  m.inverse_text = "x=-1/X; t=-1/T";
  m.multiplier_text = "sigma=u/(x*t)";
  m.source_text = "c(x)";
  m.target_text = "x^2*t^-2*c(-1/x)";
  return m;
}

PointMapping make_q() {
  PointMapping m;
  m.id = "Q";
  m.forward = [](const Jet2& x, const Jet2& t) {
    Jet2 ix = recip(x);
    return CoordJets{ix + t, ix - t};
  };
  m.inverse = [](const Jet2& xi, const Jet2& eta) {
    Jet2 x = 2.0 * recip(xi + eta);
    Jet2 t = 0.5 * (xi - eta);
    return CoordJets{x, t};
  };
  m.multiplier = [](const Jet2& x, const Jet2&) { return recip(x); };
  m.old_region = Region::x_positive();
  m.new_region = Region::all();  // image is the half-plane xi+eta > 0
  m.sample_box = Region::box(0.4, 3.0, -2.0, 2.0);
  m.forward_text = "xi=1/x+t; eta=1/x-t";
  m.inverse_text = "x=2/(xi+eta); t=(xi-eta)/2";
  m.multiplier_text = "V=u/x";
  m.source_text = "x^2";
  m.target_text = "constant (V_xieta=0)";
  m.source_speed = WaveSpeed::quadratic_x();
  m.target_characteristic = true;
  return m;
}

PointMapping make_d0() {
  PointMapping m;
  m.id = "D0";
  m.forward = [](const Jet2& x, const Jet2& t) {
    Jet2 ix = recip(x), it = recip(t);
    return CoordJets{ix + it, ix - it};
  };
  m.inverse = [](const Jet2& xi, const Jet2& eta) {
    Jet2 x = 2.0 * recip(xi + eta);
    Jet2 t = 2.0 * recip(xi - eta);
    return CoordJets{x, t};
  };
  m.multiplier = [](const Jet2& x, const Jet2& t) { return recip(x * t); };
  m.old_region = Region::positive_quadrant();
  m.new_region = Region::all();
  m.sample_box = Region::box(0.4, 3.0, 0.4, 3.0);
  m.forward_text = "xi=1/x+1/t; eta=1/x-1/t";
  m.inverse_text = "x=2/(xi+eta); t=2/(xi-eta)";
  m.multiplier_text = "V=u/(x*t)";
  m.source_text = "(x^2)/(t^2)";
  m.target_text = "constant (V_xieta=0)";
  m.source_speed = WaveSpeed::delta_family(0.0);
  m.target_characteristic = true;
  return m;
}

PointMapping make_dpos(double rho) {
  PointMapping m;
  m.id = "DPOS";
  const double r = rho;
  // L(z) = log|(z-ρ)/(z+ρ)|; on the principal component z>ρ, L < 0.
  auto L = [r](const Jet2& z) { return log_abs((z - r) / (z + r)); };
  m.forward = [L, r](const Jet2& x, const Jet2& t) {
    Jet2 lx = L(x), lt = L(t);
    return CoordJets{0.5 * r * (lx - lt), 0.5 * r * (lx + lt)};
  };
  m.inverse = [r](const Jet2& xi, const Jet2& eta) {
    // invert L on z>ρ: z = ρ(1+e^L)/(1-e^L) with L<0
    auto unL = [r](const Jet2& l) {
      Jet2 e = exp(l);
      return r * (e + 1.0) / (-e + 1.0);
    };
    Jet2 lx = (xi + eta) / Jet2::constant(r);
    Jet2 lt = (eta - xi) / Jet2::constant(r);
    return CoordJets{unL(lx), unL(lt)};
  };
  m.multiplier = [r](const Jet2& x, const Jet2& t) {
    return recip(sqrt((x * x - r * r) * (t * t - r * r)));
  };
  m.old_region = Region::box(r, Region::kInf, r, Region::kInf);
  m.new_region = Region::all();
  m.sample_box = Region::box(r + 0.3, r + 3.0, r + 0.3, r + 3.0);
  m.forward_text = "xi=(rho/2)(log|(x-rho)/(x+rho)|-log|(t-rho)/(t+rho)|); eta=(rho/2)(...+...)";
  m.inverse_text = "x=rho(1+e^{(xi+eta)/rho})/(1-e^{(xi+eta)/rho}); t analogous with (eta-xi)";
  m.multiplier_text = "V=u/sqrt((x^2-rho^2)(t^2-rho^2))";
  m.source_text = "(x^2-rho^2)/(t^2-rho^2)";
  m.target_text = "constant (V_xieta=0)";
  m.source_speed = WaveSpeed::delta_family(rho * rho);
  m.target_characteristic = true;
  return m;
}

PointMapping make_dneg(double rho) {
  PointMapping m;
  m.id = "DNEG";
  const double r = rho;
  m.forward = [r](const Jet2& x, const Jet2& t) {
    Jet2 ax = r * atan(x / Jet2::constant(r));
    Jet2 at = r * atan(t / Jet2::constant(r));
    return CoordJets{ax - at, ax + at};
  };
  m.inverse = [r](const Jet2& xi, const Jet2& eta) {
    Jet2 x = r * tan((xi + eta) / Jet2::constant(2.0 * r));
    Jet2 t = r * tan((eta - xi) / Jet2::constant(2.0 * r));
    return CoordJets{x, t};
  };
  m.multiplier = [r](const Jet2& x, const Jet2& t) {
    return recip(sqrt((x * x + r * r) * (t * t + r * r)));
  };
  m.old_region = Region::all();
  m.new_region = Region::all();
  m.sample_box = Region::box(-2.0, 2.0, -2.0, 2.0);
  m.forward_text = "xi=rho*atan(x/rho)-rho*atan(t/rho); eta=rho*atan(x/rho)+rho*atan(t/rho)";
  m.inverse_text = "x=rho*tan((xi+eta)/(2rho)); t=rho*tan((eta-xi)/(2rho))";
  m.multiplier_text = "V=u/sqrt((x^2+rho^2)(t^2+rho^2))";
  m.source_text = "(x^2+rho^2)/(t^2+rho^2)";
  m.target_text = "constant (V_xieta=0)";
  m.source_speed = WaveSpeed::delta_family(-rho * rho);
  m.target_characteristic = true;
  return m;
}

NonlocalMapping make_n1() {
  NonlocalMapping n;
  n.id = "N1";
  n.gamma1 = 0.0;
  n.gamma2 = 1.0;
  n.t_of_T = [](const Jet1& T) { return 3.0 * pow(T, -kThird); };
  n.T_of_t = [](const Jet1& t) { return 27.0 * powi(t, -3); };
  n.relation_kappa = kKappaN1;
  n.relation_weight_power = kThird;
  n.relation_rhs_power = -5.0 * kThird;
  n.speed_power = -4.0 * kThird;
  n.old_region = Region::box(-Region::kInf, Region::kInf, 0, Region::kInf);
  n.new_region = n.old_region;
  n.sample_box = Region::box(0.5, 2.5, 1.0, 27.0);
  n.t_of_T_text = "t=3*T^(-1/3); T=27*t^-3";
  n.relation_text = "d/dT(T^(1/3)*u) = -9*T^(-5/3)*B";
  n.source_text = "c(x)";
  n.target_text = "t^(-4/3)*c(x)";
  return n;
}

NonlocalMapping make_n2() {
  NonlocalMapping n;
  n.id = "N2";
  n.gamma1 = 1.0;
  n.gamma2 = 0.0;
  n.t_of_T = [](const Jet1& T) { return 3.0 * pow(T, kThird); };
  n.T_of_t = [](const Jet1& t) { return (1.0 / 27.0) * powi(t, 3); };
  n.relation_kappa = kKappaN2;
  n.relation_weight_power = -kThird;
  n.relation_rhs_power = -4.0 * kThird;
  n.speed_power = -2.0 * kThird;
  n.old_region = Region::box(-Region::kInf, Region::kInf, 0, Region::kInf);
  n.new_region = n.old_region;
  n.sample_box = Region::box(0.5, 2.5, 0.05, 2.0);
  n.t_of_T_text = "t=3*T^(1/3); T=t^3/27";
  n.relation_text = "d/dT(T^(-1/3)*u) = (1/3)*T^(-4/3)*B";
  n.source_text = "c(x)";
  n.target_text = "t^(-2/3)*c(x)";
  return n;
}

std::vector<Mapping> catalog(double rho) {
  std::vector<Mapping> cat;
  cat.push_back(make_m1());
  cat.push_back(make_m2());
  cat.push_back(make_m3());
  cat.push_back(make_q());
  cat.push_back(make_d0());
  cat.push_back(make_dpos(rho));
  cat.push_back(make_dneg(rho));
  cat.push_back(make_n1());
  cat.push_back(make_n2());
  CompositeMapping c1 = compose(make_q(), make_n1());
  c1.id = "C1";
  cat.push_back(c1);
  CompositeMapping c2 = compose(make_q(), make_n2());
  c2.id = "C2";
  cat.push_back(c2);
  return cat;
}

const std::string& mapping_id(const Mapping& m) {
  return std::visit([](const auto& v) -> const std::string& { return v.id; }, m);
}

const Mapping& find_mapping(const std::vector<Mapping>& cat, const std::string& id) {
  for (const auto& m : cat)
    if (mapping_id(m) == id) return m;
  throw std::invalid_argument("unknown mapping id `" + id + "`");
}

std::string catalog_json(const std::vector<Mapping>& cat) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& m : cat) {
    nlohmann::ordered_json e;
    if (const auto* p = std::get_if<PointMapping>(&m)) {
      e["id"] = p->id;
      e["kind"] = "invertible";
      e["coordinates"] = p->forward_text;
      e["inverse"] = p->inverse_text;
      e["dependent"] = p->multiplier_text;
      e["source_speed"] = p->source_text;
      e["target_speed"] = p->target_text;
      e["validity"] = p->old_region.to_string();
    } else if (const auto* n = std::get_if<NonlocalMapping>(&m)) {
      e["id"] = n->id;
      e["kind"] = "non-invertible";
      e["substitution"] = n->t_of_T_text;
      e["beta_weight"] = {{"gamma1", n->gamma1}, {"gamma2", n->gamma2}};
      e["integral_relation"] = n->relation_text;
      e["source_speed"] = n->source_text;
      e["target_speed"] = n->target_text;
      e["validity"] = n->old_region.to_string();
    } else if (const auto* c = std::get_if<CompositeMapping>(&m)) {
      e["id"] = c->id;
      e["kind"] = "non-invertible";
      e["composition"] = c->outer.id + " after " + c->inner.id;
      e["substitution"] = c->inner.t_of_T_text;
      e["source_speed"] = "constant (V_xieta=0)";
      e["target_speed"] = c->inner.speed_power < -1.0 ? "t^(-4/3)*x^2" : "t^(-2/3)*x^2";
      e["validity"] = c->inner.new_region.to_string();
    }
    out.push_back(e);
  }
  return out.dump(2);
}

JetField apply_point(const PointMapping& m, const JetField& u) {
  if (!u.reseedable)
    throw eval_error("apply_point requires a re-seedable field (got a derivative-built one)");
  JetField r;
  r.reseedable = true;
  r.third_order_exact = u.third_order_exact;
  auto inverse = m.inverse;
  auto multiplier = m.multiplier;
  Region old_region = m.old_region;
  std::string id = m.id;
  r.eval = [inverse, multiplier, old_region, id, u](const Jet2& Xs, const Jet2& Ts) {
    auto [xo, to] = inverse(Xs, Ts);
    if (!old_region.contains(xo.f, to.f))
      throw region_error("mapping " + id + ": pre-image (" + std::to_string(xo.f) + ", " +
                         std::to_string(to.f) + ") outside validity region");
    return multiplier(xo, to) * u(xo, to);
  };
  return r;
}

PointMapping invert(const PointMapping& m) {
  PointMapping r;
  r.id = m.id == "identity" ? m.id : "inv(" + m.id + ")";
  r.forward = m.inverse;
  r.inverse = m.forward;
  auto inverse = m.inverse;
  auto multiplier = m.multiplier;
  r.multiplier = [inverse, multiplier](const Jet2& A, const Jet2& B) {
    auto [xo, to] = inverse(A, B);
    return recip(multiplier(xo, to));
  };
  r.old_region = m.new_region;
  r.new_region = m.old_region;
  // Sample the image of the old box through the forward map is not a box in
  // general; keep the old box as the reference for roundtrip checks.
  r.sample_box = m.sample_box;
  r.forward_text = m.inverse_text;
  r.inverse_text = m.forward_text;
  r.multiplier_text = "inverse of [" + m.multiplier_text + "]";
  r.source_text = m.target_text;
  r.target_text = m.source_text;
  r.target_characteristic = false;
  return r;
}

Mapping invert(const Mapping& m) {
  if (const auto* p = std::get_if<PointMapping>(&m)) return invert(*p);
  throw not_invertible(mapping_id(m));
}

PointMapping compose(const PointMapping& outer, const PointMapping& inner) {
  PointMapping r;
  r.id = outer.id + "*" + inner.id;
  auto of = outer.forward, inf = inner.forward;
  auto oi = outer.inverse, ini = inner.inverse;
  r.forward = [of, inf](const Jet2& a, const Jet2& b) {
    auto [m1, m2] = inf(a, b);
    return of(m1, m2);
  };
  r.inverse = [oi, ini](const Jet2& a, const Jet2& b) {
    auto [m1, m2] = oi(a, b);
    return ini(m1, m2);
  };
  auto om = outer.multiplier, im = inner.multiplier;
  r.multiplier = [om, im, inf](const Jet2& a, const Jet2& b) {
    auto [m1, m2] = inf(a, b);
    return im(a, b) * om(m1, m2);
  };
  r.old_region = inner.old_region;
  r.new_region = outer.new_region;
  r.sample_box = inner.sample_box;
  r.forward_text = outer.forward_text + " after " + inner.forward_text;
  r.inverse_text = inner.inverse_text + " after " + outer.inverse_text;
  r.multiplier_text = outer.multiplier_text + " after " + inner.multiplier_text;
  r.source_text = inner.source_text;
  r.target_text = outer.target_text;
  r.source_speed = inner.source_speed;
  r.target_characteristic = outer.target_characteristic;
  return r;
}

CompositeMapping compose(const PointMapping& outer, const NonlocalMapping& inner) {
  CompositeMapping c;
  c.id = outer.id + "*" + inner.id;
  c.outer = outer;
  c.inner = inner;
  return c;
}

JetField push_forward_nonlocal(const NonlocalMapping& n, const JetField& u) {
  if (!u.third_order_exact)
    throw eval_error("push_forward_nonlocal needs order-3 jets of the source solution");
  JetField B;
  B.reseedable = false;
  B.third_order_exact = false;
  const double g1 = n.gamma1, g2 = n.gamma2;
  auto t_of_T = n.t_of_T;
  Region old_region = n.old_region;
  std::string id = n.id;
  B.eval = [g1, g2, t_of_T, old_region, id, u](const Jet2& xs, const Jet2& Ts) {
    Jet1 tau = t_of_T(Jet1::variable(Ts.f));
    if (!old_region.contains(xs.f, tau.f))
      throw region_error("mapping " + id + ": t(T)=" + std::to_string(tau.f) +
                         " outside source validity region");
    Jet2 ujet = u.at(xs.f, tau.f);
    Jet2 tj = Jet2::var_t(tau.f);
    Jet2 beta = d_dt(ujet / tj);               // β = (u/t)_t, order 2
    Jet2 weight = g1 * powi(tj, -2) + g2 * tj; // γ₁ t^-2 + γ₂ t
    return substitute_t(beta / weight, tau);
  };
  return B;
}

JetField push_forward(const CompositeMapping& c, const JetField& V) {
  return push_forward_nonlocal(c.inner, apply_point(invert(c.outer), V));
}

std::pair<double, double> integral_relation_terms(const NonlocalMapping& n, const JetField& u,
                                                  const JetField& B, double x, double T) {
  Jet1 tau = n.t_of_T(Jet1::variable(T));
  Jet2 Ts = Jet2::var_t(T);
  Jet2 tjet = compose_univariate(tau, Ts);
  Jet2 ujet = u(Jet2::var_x(x), tjet);
  Jet2 W = pow(Ts, n.relation_weight_power) * ujet;
  const double lhs = W.ft;  // d/dT of T^w u(x, t(T))
  const double rhs = std::pow(T, n.relation_rhs_power) * B.at(x, T).f;
  return {lhs, rhs};
}

double check_integral_relation(const NonlocalMapping& n, const JetField& u, const JetField& B,
                               double x, double T, std::optional<double> kappa_override) {
  const double kappa = kappa_override.value_or(n.relation_kappa);
  auto [lhs, rhs] = integral_relation_terms(n, u, B, x, T);
  return std::abs(lhs - kappa * rhs);
}

}  // namespace varwave
