// The catalog of equivalence mappings between linear wave equations:
//
//   M1   x = -1/X, t = t,        u = -(1/X) σ      c(x)  ->  x^2 c(-1/x)
//   M2   x = x,    t = -1/T,     u = -(1/T) σ      c(x)  ->  t^-2 c(x)
//   M3   x = -1/X, t = -1/T,     u = (1/(XT)) σ    c(x)  ->  x^2 t^-2 c(-1/x)
//   Q    ξ = 1/x+t, η = 1/x-t,   V = u/x           x^2   ->  V_ξη = 0
//   D0   ξ = 1/x+1/t, η = 1/x-1/t, V = u/(xt)      Δ=0   ->  V_ξη = 0
//   DPOS/DNEG  the Δ=±ρ^2 characteristic maps       Δ≠0   ->  V_ξη = 0
//   N1   t = 3T^(-1/3), β-weight γ₂t   (non-invertible)  c(x) -> t^(-4/3) c(x)
//   N2   t = 3T^(1/3),  β-weight γ₁t^-2 (non-invertible) c(x) -> t^(-2/3) c(x)
//   C1 = Q ∘ N1, C2 = Q ∘ N2      (non-invertible, to constant speed)
//
// Point mappings are executable coordinate changes plus a multiplier on the
// dependent variable; non-invertible mappings carry the t(T) substitution,
// the β-weight, and the derivative-form integral relation.

#ifndef VARWAVE_MAPPINGS_HPP
#define VARWAVE_MAPPINGS_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "varwave/field.hpp"
#include "varwave/speeds.hpp"

namespace varwave {

class not_invertible : public std::runtime_error {
public:
  explicit not_invertible(const std::string& id)
      : std::runtime_error("mapping " + id + " is non-invertible") {}
};

using CoordJets = std::pair<Jet2, Jet2>;
using CoordMap = std::function<CoordJets(const Jet2&, const Jet2&)>;
using MultiplierFn = std::function<Jet2(const Jet2&, const Jet2&)>;

struct PointMapping {
  std::string id;
  CoordMap forward;        // old coords -> new coords
  CoordMap inverse;        // new coords -> old coords
  MultiplierFn multiplier; // μ(old); new dependent variable = μ * u
  Region old_region;       // validity in old coordinates
  Region new_region;       // image, in new coordinates
  Region sample_box;       // bounded sub-box of old_region for randomized checks

  // Concrete source speed when the mapping pins one (Q, D0, DPOS, DNEG);
  // M1/M2/M3 apply to any x-only profile and leave this empty.
  std::optional<WaveSpeed> source_speed;
  bool target_characteristic = false;  // target is V_ξη = 0

  std::string forward_text, inverse_text, multiplier_text, source_text, target_text;

  std::pair<double, double> map_point(double x, double t) const {
    auto [a, b] = forward(Jet2::var_x(x), Jet2::var_t(t));
    return {a.f, b.f};
  }
  std::pair<double, double> unmap_point(double X, double T) const {
    auto [a, b] = inverse(Jet2::var_x(X), Jet2::var_t(T));
    return {a.f, b.f};
  }
};

struct NonlocalMapping {
  std::string id;
  double gamma1 = 0, gamma2 = 0;  // β = (γ₁ t^-2 + γ₂ t) B, not both zero
  std::function<Jet1(const Jet1&)> t_of_T;
  std::function<Jet1(const Jet1&)> T_of_t;
  // Derivative form of the integral relation:
  //   d/dT ( T^relation_weight_power * u(x, t(T)) ) = κ * T^relation_rhs_power * B(x,T)
  double relation_kappa = 0;
  double relation_weight_power = 0;
  double relation_rhs_power = 0;
  double speed_power = 0;  // transformed speed is t^speed_power * c(x)
  Region old_region;       // t > 0
  Region new_region;       // T > 0
  Region sample_box;
  std::string t_of_T_text, relation_text, source_text, target_text;
};

// Composite of an invertible characteristic map after a non-invertible one
// (C1 = Q ∘ N1, C2 = Q ∘ N2): relates the constant-speed equation V_ξη = 0
// nonlocally to the t^p x^2 wave equations.
struct CompositeMapping {
  std::string id;
  PointMapping outer;    // Q
  NonlocalMapping inner; // N1 or N2

  // (x,T) -> (ξ,η) through t = t(T).
  std::pair<double, double> coords(double x, double T) const;
};

using Mapping = std::variant<PointMapping, NonlocalMapping, CompositeMapping>;

const std::string& mapping_id(const Mapping& m);

// The full catalog: M1 M2 M3 Q D0 DPOS DNEG N1 N2 C1 C2. The Δ≠0 entries are
// instantiated at Δ = ±rho^2.
std::vector<Mapping> catalog(double rho = 1.0);
const Mapping& find_mapping(const std::vector<Mapping>& cat, const std::string& id);
std::string catalog_json(const std::vector<Mapping>& cat);

// Named constructors (used directly by tests and the verify module).
PointMapping make_identity();
PointMapping make_m1();
PointMapping make_m2();
PointMapping make_m3();
PointMapping make_q();
PointMapping make_d0();
PointMapping make_dpos(double rho);
PointMapping make_dneg(double rho);
NonlocalMapping make_n1();
NonlocalMapping make_n2();

// σ over new coordinates: σ(X,T) = μ(old(X,T)) * u(old(X,T)). Requires u
// reseedable; the result is reseedable.
JetField apply_point(const PointMapping& m, const JetField& u);

PointMapping invert(const PointMapping& m);
Mapping invert(const Mapping& m);  // throws not_invertible on N1/N2/C1/C2

PointMapping compose(const PointMapping& outer, const PointMapping& inner);
CompositeMapping compose(const PointMapping& outer, const NonlocalMapping& inner);

// B(x,T) = (u/t)_t / (γ₁ t^-2 + γ₂ t) at t = t(T), for u a solution of the
// source wave equation on t > 0. The result is valid to jet order 2 and is
// not reseedable (one derivative order is consumed).
JetField push_forward_nonlocal(const NonlocalMapping& n, const JetField& u);

// Composite push-forward: V (solution of V_ξη=0) -> B via invert(outer), inner.
JetField push_forward(const CompositeMapping& c, const JetField& V);

// Signed terms of the derivative-form relation at a point:
// first = d/dT(T^w u(x,t(T))), second = T^q B(x,T). The relation states
// first = κ * second.
std::pair<double, double> integral_relation_terms(const NonlocalMapping& n, const JetField& u,
                                                  const JetField& B, double x, double T);

// | d/dT(T^w u(x,t(T))) - κ T^q B(x,T) | at the point, with κ overridable for
// defect-injection tests.
double check_integral_relation(const NonlocalMapping& n, const JetField& u, const JetField& B,
                               double x, double T,
                               std::optional<double> kappa_override = std::nullopt);

}  // namespace varwave

#endif
