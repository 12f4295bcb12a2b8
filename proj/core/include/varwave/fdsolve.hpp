// Independent finite-difference oracle: explicit three-level leapfrog for
// u_tt = c^2(x,t) u_xx with Dirichlet boundary values taken from an exact
// solution trace (method of manufactured solutions). Its only job is
// cross-validating the closed-form solutions, so convergence order is the
// product, not speed.

#ifndef VARWAVE_FDSOLVE_HPP
#define VARWAVE_FDSOLVE_HPP

#include <functional>
#include <string>
#include <vector>

#include "varwave/speeds.hpp"

namespace varwave {

class instability_error : public std::runtime_error {
public:
  instability_error(const std::string& what, int level)
      : std::runtime_error(what), level_(level) {}
  int level() const { return level_; }

private:
  int level_;
};

struct Grid1D {
  double a = 0, b = 1;
  int n = 8;  // cell count; n+1 nodes

  double h() const { return (b - a) / n; }
  double node(int i) const { return a + i * h(); }

  static Grid1D make(double a, double b, int n);
};

struct Field2D {
  Grid1D grid;
  double t0 = 0;
  double dt = 0;
  double cfl = 0;
  std::string speed_family;
  // levels[j][i] = u(x_i, t0 + j*dt)
  std::vector<std::vector<double>> levels;

  double time(int j) const { return t0 + j * dt; }
  const std::vector<double>& final_level() const { return levels.back(); }
  double final_time() const { return time(static_cast<int>(levels.size()) - 1); }
};

using ScalarFn = std::function<double(double)>;
using TraceFn = std::function<double(double, double)>;

// phi = u(x,t0), psi = u_t(x,t0); `boundary` supplies u at x=a and x=b for
// all times. dt is cfl*h / max c over the space-time box (dense 64x64
// sampling), then rounded down so an integer number of steps lands on t_end.
Field2D leapfrog_solve(const WaveSpeed& speed, const ScalarFn& phi, const ScalarFn& psi,
                       const TraceFn& boundary, const Grid1D& grid, double t0, double t_end,
                       double cfl);

struct ErrorPair {
  double h;
  double max_error;
  double l2_error = 0;
};

// Least-squares slope of log(max_error) vs log(h); needs >= 3 entries with h
// halving between consecutive entries.
double convergence_order(const std::vector<ErrorPair>& errors);

// max_i |field(x_i, t_final) - exact(x_i, t_final)| and the h-weighted l2 norm.
ErrorPair field_error(const Field2D& field, const TraceFn& exact);

}  // namespace varwave

#endif
