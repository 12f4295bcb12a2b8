#ifndef VARWAVE_GRIDSPEC_HPP
#define VARWAVE_GRIDSPEC_HPP

#include <string>
#include <vector>

namespace varwave {

// Rectangular evaluation grid, parsed from "x:a:b:n[:log],t:a:b:n[:log]".
// Nodes are inclusive of both endpoints; log spacing is geometric and
// requires 0 < a < b.
struct GridSpec {
  double x_lo = 0, x_hi = 1;
  int nx = 2;
  bool x_log = false;
  double t_lo = 0, t_hi = 1;
  int nt = 2;
  bool t_log = false;

  std::vector<double> x_nodes() const;
  std::vector<double> t_nodes() const;
  std::string to_string() const;

  static GridSpec parse(const std::string& spec);
  static GridSpec box(double xl, double xh, int nx, double tl, double th, int nt,
                      bool xlog = false, bool tlog = false);
};

}  // namespace varwave

#endif
