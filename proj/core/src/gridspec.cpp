#include "varwave/gridspec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "varwave/io.hpp"

namespace varwave {

namespace {

std::vector<double> nodes(double lo, double hi, int n, bool logspace) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 nodes per axis");
  std::vector<double> v(n);
  if (logspace) {
    if (!(lo > 0 && hi > lo))
      throw std::invalid_argument("log spacing requires 0 < lo < hi");
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i) v[i] = lo * std::exp(r * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

void parse_axis(const std::string& part, char expect, double& lo, double& hi, int& n,
                bool& logspace) {
  std::stringstream ss(part);
  std::string tok;
  std::vector<std::string> toks;
  while (std::getline(ss, tok, ':')) toks.push_back(tok);
  if (toks.size() < 4 || toks.size() > 5 || toks[0].size() != 1 || toks[0][0] != expect)
    throw std::invalid_argument("bad grid axis `" + part + "`, want `" +
                                std::string(1, expect) + ":lo:hi:n[:log]`");
  lo = std::stod(toks[1]);
  hi = std::stod(toks[2]);
  n = std::stoi(toks[3]);
  logspace = toks.size() == 5;
  if (logspace && toks[4] != "log")
    throw std::invalid_argument("bad grid axis suffix `" + toks[4] + "`, want `log`");
  if (!(hi > lo)) throw std::invalid_argument("grid axis must have lo < hi");
}

}  // namespace

std::vector<double> GridSpec::x_nodes() const { return nodes(x_lo, x_hi, nx, x_log); }
std::vector<double> GridSpec::t_nodes() const { return nodes(t_lo, t_hi, nt, t_log); }

std::string GridSpec::to_string() const {
  std::string s = "x:" + format_double(x_lo) + ":" + format_double(x_hi) + ":" +
                  std::to_string(nx) + (x_log ? ":log" : "");
  s += ",t:" + format_double(t_lo) + ":" + format_double(t_hi) + ":" + std::to_string(nt) +
       (t_log ? ":log" : "");
  return s;
}

GridSpec GridSpec::parse(const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("grid spec needs two axes: `x:a:b:n,t:a:b:n`");
  GridSpec g;
  parse_axis(spec.substr(0, comma), 'x', g.x_lo, g.x_hi, g.nx, g.x_log);
  parse_axis(spec.substr(comma + 1), 't', g.t_lo, g.t_hi, g.nt, g.t_log);
  return g;
}

GridSpec GridSpec::box(double xl, double xh, int nx, double tl, double th, int nt, bool xlog,
                       bool tlog) {
  GridSpec g;
  g.x_lo = xl;
  g.x_hi = xh;
  g.nx = nx;
  g.x_log = xlog;
  g.t_lo = tl;
  g.t_hi = th;
  g.nt = nt;
  g.t_log = tlog;
  if (!(xh > xl) || !(th > tl)) throw std::invalid_argument("grid box must have lo < hi");
  return g;
}

}  // namespace varwave
