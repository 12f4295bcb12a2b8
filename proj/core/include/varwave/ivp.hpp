// Exact IVP solver for u_tt = x^4 u_xx: invert the characteristic map
// ξ = 1/x+t, η = 1/x-t to recover F and G from initial data u(x,t0) = phi,
// u_t(x,t0) = psi on [a,b] with a > 0. With s = 1/x,
//   P(s) = F(s+t0) + G(s-t0) = s phi(1/s)
//   D(s) = F(s+t0) - G(s-t0) = ∫ r psi(1/r) dr   (constant gauge-fixed to 0)
// and F, G come out by half-sum / half-difference as cubic splines.

#ifndef VARWAVE_IVP_HPP
#define VARWAVE_IVP_HPP

#include <functional>
#include <string>
#include <vector>

#include "varwave/expr.hpp"

namespace varwave {

class determinacy_error : public std::runtime_error {
public:
  explicit determinacy_error(const std::string& what) : std::runtime_error(what) {}
};

// Natural cubic spline on strictly increasing knots.
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> knots, std::vector<double> values);

  double operator()(double s) const;  // clamped to the knot range by caller
  double lo() const { return knots_.front(); }
  double hi() const { return knots_.back(); }

private:
  std::vector<double> knots_, values_, second_;
};

struct InitialData {
  std::vector<double> x;    // strictly increasing, inside (0, inf)
  std::vector<double> phi;  // u(x, t0)
  std::vector<double> psi;  // u_t(x, t0)
  double t0 = 0;

  // Sample expression-valued data onto a uniform grid on [a,b].
  static InitialData from_expressions(const Expression& phi, const Expression& psi, double a,
                                      double b, double t0, int n = 512);
  static InitialData from_samples(std::vector<double> x, std::vector<double> phi,
                                  std::vector<double> psi, double t0);
};

class CharacteristicSolution {
public:
  CharacteristicSolution(CubicSpline F, CubicSpline G, double s_lo, double s_hi, double t0);

  // u(x,t); throws determinacy_error outside the domain of determinacy.
  double operator()(double x, double t) const;
  bool in_domain(double x, double t) const;

  // recovered characteristic interval [1/b, 1/a]
  double s_lo() const { return s_lo_; }
  double s_hi() const { return s_hi_; }
  double t0() const { return t0_; }
  const CubicSpline& F() const { return F_; }
  const CubicSpline& G() const { return G_; }

private:
  CubicSpline F_, G_;
  double s_lo_, s_hi_, t0_;
};

CharacteristicSolution solve_ivp_quadratic(const InitialData& data);

// Composite-trapezoid cumulative integral of samples (y_i at knots s_i);
// result[0] = 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& s,
                                         const std::vector<double>& y);

}  // namespace varwave

#endif
