#include "varwave/speeds.hpp"

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "varwave/io.hpp"

namespace varwave {

namespace {

Expression quadratic_base_expr() { return parse("x^2", {"x"}); }

constexpr double kThird = 1.0 / 3.0;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

WaveSpeed WaveSpeed::quadratic_x(Region r) {
  WaveSpeed s;
  s.family_ = SpeedFamily::QuadraticX;
  s.expr_ = quadratic_base_expr();
  s.region_ = r;
  return s;
}

WaveSpeed WaveSpeed::delta_family(double delta) {
  Region r;
  if (delta > 0) {
    const double rho = std::sqrt(delta);
    r = Region::box(rho, Region::kInf, rho, Region::kInf);
  } else if (delta == 0) {
    r = Region::positive_quadrant();
  } else {
    r = Region::all();
  }
  return delta_family(delta, r);
}

WaveSpeed WaveSpeed::delta_family(double delta, Region component) {
  WaveSpeed s;
  s.family_ = SpeedFamily::Delta;
  s.delta_ = delta;
  s.region_ = component;
  return s;
}

WaveSpeed WaveSpeed::time_power(double p, Expression base_cx) {
  return time_power(p, std::move(base_cx), Region::box(0.0, Region::kInf, 0.0, Region::kInf));
}

WaveSpeed WaveSpeed::time_power(double p, Expression base_cx, Region r) {
  if (!near(p, -4.0 * kThird, 1e-12) && !near(p, -2.0 * kThird, 1e-12))
    throw std::invalid_argument("time_power exponent must be -4/3 or -2/3");
  WaveSpeed s;
  s.family_ = SpeedFamily::TimePower;
  s.power_ = p;
  s.expr_ = std::move(base_cx);
  s.region_ = r;
  return s;
}

WaveSpeed WaveSpeed::profile(Expression cx, Region r) {
  WaveSpeed s;
  s.family_ = SpeedFamily::Profile;
  s.expr_ = std::move(cx);
  s.region_ = r;
  return s;
}

WaveSpeed WaveSpeed::profile_text(const std::string& cx, Region r) {
  return profile(parse(cx, {"x"}), r);
}

WaveSpeed WaveSpeed::general(Expression cxt, Region r) {
  WaveSpeed s;
  s.family_ = SpeedFamily::General;
  s.expr_ = std::move(cxt);
  s.region_ = r;
  return s;
}

bool WaveSpeed::x_only() const {
  switch (family_) {
    case SpeedFamily::QuadraticX:
    case SpeedFamily::Profile: return true;
    case SpeedFamily::General: return !expr_.uses("t");
    default: return false;
  }
}

Jet2 WaveSpeed::evaluate(const Jet2& x_seed, const Jet2& t_seed) const {
  if (!region_.contains(x_seed.f, t_seed.f))
    throw region_error("speed " + family_name() + " evaluated outside validity region " +
                       region_.to_string() + " at (" + format_double(x_seed.f) + ", " +
                       format_double(t_seed.f) + ")");
  switch (family_) {
    case SpeedFamily::QuadraticX:
      return x_seed * x_seed;
    case SpeedFamily::Delta: {
      Jet2 num = x_seed * x_seed - delta_;
      Jet2 den = t_seed * t_seed - delta_;
      return num / den;
    }
    case SpeedFamily::TimePower:
      return pow(t_seed, power_) * eval_jet2(expr_, x_seed, t_seed);
    case SpeedFamily::Profile:
    case SpeedFamily::General:
      return eval_jet2(expr_, x_seed, t_seed);
  }
  throw eval_error("unknown speed family");
}

std::string WaveSpeed::formula() const {
  switch (family_) {
    case SpeedFamily::QuadraticX: return "x^2";
    case SpeedFamily::Delta:
      return "(x^2-" + format_double(delta_) + ")/(t^2-" + format_double(delta_) + ")";
    case SpeedFamily::TimePower:
      return "t^(" + format_double(power_) + ")*(" + render(expr_) + ")";
    case SpeedFamily::Profile:
    case SpeedFamily::General: return render(expr_);
  }
  return "?";
}

std::string WaveSpeed::family_name() const {
  switch (family_) {
    case SpeedFamily::QuadraticX: return "quadratic-x";
    case SpeedFamily::Delta: return "delta";
    case SpeedFamily::TimePower: return "time-power";
    case SpeedFamily::Profile: return "profile";
    case SpeedFamily::General: return "general";
  }
  return "?";
}

std::string WaveSpeed::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family_name();
  switch (family_) {
    case SpeedFamily::Delta: j["delta"] = delta_; break;
    case SpeedFamily::TimePower:
      j["p"] = power_;
      j["base"] = render(expr_);
      break;
    case SpeedFamily::Profile:
    case SpeedFamily::General: j["c"] = render(expr_); break;
    default: break;
  }
  auto bound = [](double v) -> nlohmann::ordered_json {
    if (std::isinf(v)) return nullptr;
    return v;
  };
  j["validity"] = {{"x", {bound(region_.x_lo), bound(region_.x_hi)}},
                   {"t", {bound(region_.t_lo), bound(region_.t_hi)}}};
  return j.dump();
}

std::string Region::to_string() const {
  auto b = [](double v) {
    if (v == -kInf) return std::string("-inf");
    if (v == kInf) return std::string("inf");
    return format_double(v);
  };
  return "x in (" + b(x_lo) + ", " + b(x_hi) + "), t in (" + b(t_lo) + ", " + b(t_hi) + ")";
}

std::optional<double> classify_delta(const Expression& cxt) {
  // Fixed generic sample grid; reproducible and away from the axes.
  static const std::vector<double> xs = {-3.1, -1.7, -0.4, 0.4, 1.7, 3.1, 5.3};
  static const std::vector<double> ts = {-2.9, -1.3, -0.6, 0.6, 1.3, 2.9, 4.7};

  struct Sample {
    double x, t, c;
  };
  std::vector<Sample> ok;
  std::vector<std::pair<double, double>> failed;
  for (double x : xs)
    for (double t : ts) {
      try {
        double c = eval_jet2(cxt, Jet2::var_x(x), Jet2::var_t(t)).f;
        if (!std::isfinite(c)) {
          failed.push_back({x, t});
          continue;
        }
        ok.push_back({x, t, c});
      } catch (const eval_error&) {
        failed.push_back({x, t});
      }
    }
  if (ok.size() < 8) return std::nullopt;

  // Fit Δ from the sample where c(t^2-Δ) = x^2-Δ is best conditioned:
  // Δ = (x^2 - c t^2)/(1 - c).
  const Sample* fit = nullptr;
  double best = 0;
  for (const auto& s : ok) {
    double b = std::abs(1.0 - s.c);
    if (b > best) {
      best = b;
      fit = &s;
    }
  }
  if (!fit || best < 1e-9) return std::nullopt;
  const double delta = (fit->x * fit->x - fit->c * fit->t * fit->t) / (1.0 - fit->c);

  // Singular lines of the fitted family: t = ±ρ for Δ=ρ^2>0 (and t=0 for
  // Δ=0, which the grid avoids). Points within 1e-3 of a singular line are
  // excluded; evaluation failures anywhere else disqualify the candidate.
  auto near_singular = [&](double t) {
    if (delta > 0) {
      const double rho = std::sqrt(delta);
      return std::abs(t - rho) < 1e-3 || std::abs(t + rho) < 1e-3;
    }
    if (delta == 0) return std::abs(t) < 1e-3;
    return false;
  };
  for (auto [x, t] : failed)
    if (!near_singular(t)) return std::nullopt;

  for (const auto& s : ok) {
    if (near_singular(s.t)) continue;
    const double lhs = s.c * (s.t * s.t - delta);
    const double rhs = s.x * s.x - delta;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (std::abs(lhs - rhs) > 1e-9 * scale) return std::nullopt;
  }
  return delta;
}

WaveSpeed transformed_speed(const WaveSpeed& speed, const std::string& mapping_id) {
  if (!speed.x_only())
    throw std::invalid_argument("mapping " + mapping_id + " requires an x-only wave speed");

  const Expression base = speed.family() == SpeedFamily::QuadraticX
                              ? quadratic_base_expr()
                              : speed.expression();
  const Region& r = speed.validity();

  // Image of an interval avoiding 0 under z -> -1/z (monotone increasing).
  auto flip_reciprocal = [](double lo, double hi) {
    auto img = [](double v) {
      if (v == 0.0) return -Region::kInf;
      if (std::isinf(v)) return v > 0 ? -0.0 : 0.0;
      return -1.0 / v;
    };
    double a = img(lo), b = img(hi);
    if (lo < 0.0 && hi > 0.0)
      throw std::invalid_argument("speed validity region straddles x=0; pick one component");
    return std::pair{a, b};
  };

  auto minus_inv_x = make_neg(make_binary(BinaryOp::Div, make_number(1), make_var("x")));

  if (mapping_id == "M1") {
    // X^2 * c(-1/X)
    Expression cx = substitute(base, "x", minus_inv_x);
    ExprPtr tree = make_binary(BinaryOp::Mul,
                               make_binary(BinaryOp::Pow, make_var("x"), make_number(2)),
                               cx.root());
    auto [lo, hi] = flip_reciprocal(r.x_lo, r.x_hi);
    return WaveSpeed::profile(Expression(tree, {"x"}), Region::box(lo, hi, r.t_lo, r.t_hi));
  }
  if (mapping_id == "M2") {
    // t^-2 * c(x)
    ExprPtr tree = make_binary(
        BinaryOp::Mul,
        make_binary(BinaryOp::Pow, make_var("t"), make_neg(make_number(2))), base.root());
    auto [lo, hi] = flip_reciprocal(r.t_lo == -Region::kInf ? 0.0 : r.t_lo, r.t_hi);
    return WaveSpeed::general(Expression(tree, {"x", "t"}), Region::box(r.x_lo, r.x_hi, lo, hi));
  }
  if (mapping_id == "M3") {
    // x^2 t^-2 * c(-1/x)
    Expression cx = substitute(base, "x", minus_inv_x);
    ExprPtr xt = make_binary(BinaryOp::Mul,
                             make_binary(BinaryOp::Pow, make_var("x"), make_number(2)),
                             make_binary(BinaryOp::Pow, make_var("t"), make_neg(make_number(2))));
    ExprPtr tree = make_binary(BinaryOp::Mul, xt, cx.root());
    auto [xlo, xhi] = flip_reciprocal(r.x_lo, r.x_hi);
    auto [tlo, thi] = flip_reciprocal(r.t_lo == -Region::kInf ? 0.0 : r.t_lo, r.t_hi);
    return WaveSpeed::general(Expression(tree, {"x", "t"}), Region::box(xlo, xhi, tlo, thi));
  }
  if (mapping_id == "N1")
    return WaveSpeed::time_power(-4.0 * kThird, base,
                                 Region::box(r.x_lo, r.x_hi, 0.0, Region::kInf));
  if (mapping_id == "N2")
    return WaveSpeed::time_power(-2.0 * kThird, base,
                                 Region::box(r.x_lo, r.x_hi, 0.0, Region::kInf));

  throw std::invalid_argument("mapping " + mapping_id + " has no transformed-speed rule");
}

}  // namespace varwave
