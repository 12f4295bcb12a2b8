// Conservative open-box validity regions. Every mapping and speed in the
// catalog is singular somewhere (x=0, t=0, x=±ρ, ...); evaluation is only
// defined on an open box chosen at construction, away from singular lines.

#ifndef VARWAVE_REGION_HPP
#define VARWAVE_REGION_HPP

#include <limits>
#include <string>

namespace varwave {

struct Region {
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double x_lo = -kInf, x_hi = kInf;
  double t_lo = -kInf, t_hi = kInf;

  bool contains(double x, double t) const {
    return x > x_lo && x < x_hi && t > t_lo && t < t_hi;
  }

  bool bounded() const {
    return x_lo > -kInf && x_hi < kInf && t_lo > -kInf && t_hi < kInf;
  }

  static Region all() { return {}; }
  static Region box(double xl, double xh, double tl, double th) { return {xl, xh, tl, th}; }
  static Region x_positive() { return {0.0, kInf, -kInf, kInf}; }
  static Region positive_quadrant() { return {0.0, kInf, 0.0, kInf}; }

  std::string to_string() const;
};

class region_error : public std::runtime_error {
public:
  region_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace varwave

#endif
