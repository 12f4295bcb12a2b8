// Closed-form general solutions built from user-supplied F and G:
//
//   const15   V(ξ,η) = F(ξ) + G(η)                       V_ξη = 0
//   quad17    u = x (F(1/x+t) + G(1/x-t))                 u_tt/x^4 = u_xx
//   delta     pullback of F(ξ)+G(η) through the Δ-map     c = (x^2-Δ)/(t^2-Δ)
//   n1gen     B = xT (F+G + 3T^(-1/3)(G'-F'))             B_TT/(T^(-8/3)x^4) = B_xx
//   n2gen     B = x  (F+G + 3T^(1/3)(G'-F'))              B_TT/(T^(-4/3)x^4) = B_xx
//
// F' and G' come from the same order-3 jet evaluation of the F/G expressions,
// so the n1gen/n2gen fields are exact to jet order 2 (their second
// derivatives consume F''').

#ifndef VARWAVE_SOLUTIONS_HPP
#define VARWAVE_SOLUTIONS_HPP

#include <optional>
#include <string>

#include "varwave/field.hpp"
#include "varwave/speeds.hpp"

namespace varwave {

struct SolutionPair {
  Expression F, G;  // each in the single variable s

  static SolutionPair from_text(const std::string& f_src, const std::string& g_src) {
    return {parse(f_src, {"s"}), parse(g_src, {"s"})};
  }
};

enum class Family { Const15, Quad17, Delta, N1Gen, N2Gen };

struct AnalyticSolution {
  Family family;
  std::string name;    // const15, quad17, delta, n1gen, n2gen
  SolutionPair fg;
  double delta = 0;    // Delta family only
  JetField field;
  Equation equation;   // the PDE this solves
  Region region;       // where evaluation is defined
};

AnalyticSolution dalembert(const SolutionPair& fg);
AnalyticSolution general_solution_quadratic(const SolutionPair& fg);
AnalyticSolution general_solution_delta(const SolutionPair& fg, double delta,
                                        std::optional<Region> component = std::nullopt);
AnalyticSolution general_solution_n1(const SolutionPair& fg);
AnalyticSolution general_solution_n2(const SolutionPair& fg);

// u = F(x+t) + G(x-t): the constant-speed solution in physical coordinates,
// the source solution for the c(x)-generic mapping checks.
AnalyticSolution dalembert_physical(const SolutionPair& fg);

// Closed-form solution of the wave equation with the given speed, when one
// exists in the catalog (x^2, Δ-family, constant 1, t^p x^2).
std::optional<AnalyticSolution> solution_for_speed(const WaveSpeed& speed, const SolutionPair& fg);

// F composed onto a jet coordinate: F's order-3 derivatives at theta.f chained
// through theta. apply_fprime shifts once (order-2 exact).
Jet2 apply_f(const Expression& F, const Jet2& theta);
Jet2 apply_fprime(const Expression& F, const Jet2& theta);

}  // namespace varwave

#endif
