#include "qlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace qlab::quad {

namespace {

constexpr unsigned kNodes = 20;
using GL = boost::math::quadrature::gauss<double, kNodes>;

void append_panel(Rule& rule, double a, double b) {
  const auto& absc = GL::abscissa();
  const auto& wts = GL::weights();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  // Boost stores the non-negative half of the symmetric rule.
  for (std::size_t k = 0; k < absc.size(); ++k) {
    if (absc[k] == 0.0) {
      rule.x.push_back(mid);
      rule.w.push_back(half * wts[k]);
      continue;
    }
    rule.x.push_back(mid - half * absc[k]);
    rule.w.push_back(half * wts[k]);
    rule.x.push_back(mid + half * absc[k]);
    rule.w.push_back(half * wts[k]);
  }
}

}  // namespace

Rule gauss_legendre(double a, double b, int panels) {
  Rule rule;
  rule.x.reserve(static_cast<std::size_t>(panels) * kNodes);
  rule.w.reserve(static_cast<std::size_t>(panels) * kNodes);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) append_panel(rule, a + p * h, (p + 1 == panels) ? b : a + (p + 1) * h);
  return rule;
}

Rule gauss_legendre(const std::vector<double>& breaks, int panels) {
  Rule rule;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (!(breaks[k + 1] > breaks[k])) continue;
    Rule piece = gauss_legendre(breaks[k], breaks[k + 1], panels);
    rule.x.insert(rule.x.end(), piece.x.begin(), piece.x.end());
    rule.w.insert(rule.w.end(), piece.w.begin(), piece.w.end());
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, const Rule& rule) {
  double s = 0.0;
  for (std::size_t k = 0; k < rule.x.size(); ++k) s += rule.w[k] * f(rule.x[k]);
  return s;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double* error_estimate) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  double err = 0.0, l1 = 0.0;
  double v = integrator.integrate(f, a, b, rel_tol, &err, &l1);
  if (error_estimate) *error_estimate = err;
  return v;
}

}  // namespace qlab::quad
