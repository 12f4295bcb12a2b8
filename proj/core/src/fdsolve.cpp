#include "varwave/fdsolve.hpp"

#include <cmath>
#include <stdexcept>

namespace varwave {

Grid1D Grid1D::make(double a, double b, int n) {
  if (!(b > a)) throw std::invalid_argument("grid interval needs a < b");
  if (n < 8) throw std::invalid_argument("grid needs at least 8 cells");
  return {a, b, n};
}

Field2D leapfrog_solve(const WaveSpeed& speed, const ScalarFn& phi, const ScalarFn& psi,
                       const TraceFn& boundary, const Grid1D& grid, double t0, double t_end,
                       double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must be in (0,1]");
  if (!(t_end > t0)) throw std::invalid_argument("t_end must exceed t0");

  // Conservative global CFL bound: dense-sample c over the space-time box,
  // staying strictly inside it.
  double c_max = 0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const double x = grid.a + (grid.b - grid.a) * (i + 0.5) / 64.0;
      const double t = t0 + (t_end - t0) * (j + 0.5) / 64.0;
      c_max = std::max(c_max, std::abs(speed.value(x, t)));
    }
  if (!(c_max > 0)) throw std::invalid_argument("speed vanishes on the box");

  const double h = grid.h();
  const double dt0 = cfl * h / c_max;
  const int steps = static_cast<int>(std::ceil((t_end - t0) / dt0));
  const double dt = (t_end - t0) / steps;

  Field2D f;
  f.grid = grid;
  f.t0 = t0;
  f.dt = dt;
  f.cfl = cfl;
  f.speed_family = speed.family_name();
  f.levels.reserve(steps + 1);

  const int m = grid.n;
  std::vector<double> u0(m + 1), u1(m + 1);
  for (int i = 0; i <= m; ++i) u0[i] = phi(grid.node(i));

  // First step by Taylor expansion; phi_xx by central differences.
  u1[0] = boundary(grid.a, t0 + dt);
  u1[m] = boundary(grid.b, t0 + dt);
  for (int i = 1; i < m; ++i) {
    const double x = grid.node(i);
    const double c = speed.value(x, t0);
    const double phixx = (u0[i + 1] - 2.0 * u0[i] + u0[i - 1]) / (h * h);
    u1[i] = u0[i] + dt * psi(x) + 0.5 * dt * dt * c * c * phixx;
  }
  f.levels.push_back(u0);
  f.levels.push_back(u1);

  std::vector<double> next(m + 1);
  for (int jstep = 1; jstep < steps; ++jstep) {
    const double tn = t0 + jstep * dt;
    const auto& un = f.levels[jstep];
    const auto& um = f.levels[jstep - 1];
    next[0] = boundary(grid.a, tn + dt);
    next[m] = boundary(grid.b, tn + dt);
    for (int i = 1; i < m; ++i) {
      const double c = speed.value(grid.node(i), tn);
      const double lam = dt * c / h;
      next[i] = 2.0 * un[i] - um[i] + lam * lam * (un[i + 1] - 2.0 * un[i] + un[i - 1]);
    }
    for (int i = 0; i <= m; ++i)
      if (!std::isfinite(next[i]))
        throw instability_error("leapfrog produced non-finite values at level " +
                                    std::to_string(jstep + 1),
                                jstep + 1);
    f.levels.push_back(next);
  }
  return f;
}

ErrorPair field_error(const Field2D& field, const TraceFn& exact) {
  const auto& u = field.final_level();
  const double tf = field.final_time();
  double emax = 0, esq = 0;
  for (int i = 0; i < static_cast<int>(u.size()); ++i) {
    const double e = std::abs(u[i] - exact(field.grid.node(i), tf));
    emax = std::max(emax, e);
    esq += e * e;
  }
  return {field.grid.h(), emax, std::sqrt(field.grid.h() * esq)};
}

double convergence_order(const std::vector<ErrorPair>& errors) {
  if (errors.size() < 3)
    throw std::invalid_argument("convergence_order needs at least 3 (h, error) pairs");
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const double ratio = errors[k - 1].h / errors[k].h;
    if (std::abs(ratio - 2.0) > 1e-9)
      throw std::invalid_argument("h must halve between consecutive entries");
  }
  // least-squares slope of log(err) vs log(h)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(errors.size());
  for (const auto& e : errors) {
    const double lx = std::log(e.h), ly = std::log(e.max_error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace varwave
