#include "varwave/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varwave {

CubicSpline::CubicSpline(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  if (n < 3 || values_.size() != n)
    throw std::invalid_argument("spline needs >= 3 matching knots/values");
  for (std::size_t i = 1; i < n; ++i)
    if (!(knots_[i] > knots_[i - 1]))
      throw std::invalid_argument("spline knots must be strictly increasing");

  // Natural spline: tridiagonal solve for second derivatives.
  second_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = knots_[i] - knots_[i - 1];
    const double hr = knots_[i + 1] - knots_[i];
    sub[i] = hl / 6.0;
    diag[i] = (hl + hr) / 3.0;
    sup[i] = hr / 6.0;
    rhs[i] = (values_[i + 1] - values_[i]) / hr - (values_[i] - values_[i - 1]) / hl;
  }
  // Thomas algorithm on the interior unknowns (second_[0] = second_[n-1] = 0).
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    const double upper = (i + 2 < n) ? sup[i] * second_[i + 1] : 0.0;
    second_[i] = (rhs[i] - upper) / diag[i];
    if (i == 1) break;
  }
}

double CubicSpline::operator()(double s) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  std::size_t j = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (j + 1 >= knots_.size()) j = knots_.size() - 2;
  const double h = knots_[j + 1] - knots_[j];
  const double A = (knots_[j + 1] - s) / h;
  const double B = (s - knots_[j]) / h;
  return A * values_[j] + B * values_[j + 1] +
         ((A * A * A - A) * second_[j] + (B * B * B - B) * second_[j + 1]) * h * h / 6.0;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& s,
                                         const std::vector<double>& y) {
  if (s.size() != y.size()) throw std::invalid_argument("mismatched sample arrays");
  std::vector<double> out(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (y[i] + y[i - 1]) * (s[i] - s[i - 1]);
  return out;
}

InitialData InitialData::from_expressions(const Expression& phi, const Expression& psi,
                                          double a, double b, double t0, int n) {
  if (!(a > 0 && b > a)) throw std::invalid_argument("need 0 < a < b");
  if (n < 8) throw std::invalid_argument("need at least 8 sample points");
  InitialData d;
  d.t0 = t0;
  d.x.resize(n);
  d.phi.resize(n);
  d.psi.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * i / (n - 1);
    d.x[i] = x;
    d.phi[i] = eval_jet1(phi, Jet1::variable(x)).f;
    d.psi[i] = eval_jet1(psi, Jet1::variable(x)).f;
  }
  return d;
}

InitialData InitialData::from_samples(std::vector<double> x, std::vector<double> phi,
                                      std::vector<double> psi, double t0) {
  InitialData d;
  d.x = std::move(x);
  d.phi = std::move(phi);
  d.psi = std::move(psi);
  d.t0 = t0;
  if (d.x.size() != d.phi.size() || d.x.size() != d.psi.size())
    throw std::invalid_argument("phi/psi must be sampled on the same grid as x");
  if (d.x.size() < 8) throw std::invalid_argument("need at least 8 sample points");
  if (!(d.x.front() > 0)) throw std::invalid_argument("data interval must satisfy a > 0");
  for (std::size_t i = 1; i < d.x.size(); ++i)
    if (!(d.x[i] > d.x[i - 1]))
      throw std::invalid_argument("sample grid must be strictly increasing");
  for (std::size_t i = 0; i < d.x.size(); ++i)
    if (!std::isfinite(d.phi[i]) || !std::isfinite(d.psi[i]))
      throw std::invalid_argument("initial data must be finite");
  return d;
}

CharacteristicSolution::CharacteristicSolution(CubicSpline F, CubicSpline G, double s_lo,
                                               double s_hi, double t0)
    : F_(std::move(F)), G_(std::move(G)), s_lo_(s_lo), s_hi_(s_hi), t0_(t0) {}

bool CharacteristicSolution::in_domain(double x, double t) const {
  if (!(x > 0)) return false;
  const double s = 1.0 / x;
  const double dtau = t - t0_;
  return s + dtau >= s_lo_ && s + dtau <= s_hi_ && s - dtau >= s_lo_ && s - dtau <= s_hi_;
}

double CharacteristicSolution::operator()(double x, double t) const {
  if (!in_domain(x, t))
    throw determinacy_error("(" + std::to_string(x) + ", " + std::to_string(t) +
                            ") outside the domain of determinacy");
  const double s = 1.0 / x;
  return x * (F_(s + t) + G_(s - t));
}

CharacteristicSolution solve_ivp_quadratic(const InitialData& data) {
  const std::size_t n = data.x.size();
  // ascending s-grid: s = 1/x reverses the x ordering
  std::vector<double> s(n), P(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = n - 1 - i;
    s[i] = 1.0 / data.x[k];
    P[i] = s[i] * data.phi[k];  // P(s) = s*phi(1/s)
    q[i] = s[i] * data.psi[k];  // D'(s) = s*psi(1/s)
  }
  std::vector<double> D = cumulative_trapezoid(s, q);

  std::vector<double> fknots(n), fvals(n), gknots(n), gvals(n);
  for (std::size_t i = 0; i < n; ++i) {
    fknots[i] = s[i] + data.t0;
    fvals[i] = 0.5 * (P[i] + D[i]);
    gknots[i] = s[i] - data.t0;
    gvals[i] = 0.5 * (P[i] - D[i]);
  }
  CubicSpline F(std::move(fknots), std::move(fvals));
  CubicSpline G(std::move(gknots), std::move(gvals));
  return CharacteristicSolution(std::move(F), std::move(G), s.front(), s.back(), data.t0);
}

}  // namespace varwave
