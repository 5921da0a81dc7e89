#pragma once

#include <functional>
#include <vector>

namespace qlab::quad {

// Composite Gauss-Legendre rule (20 nodes per panel) on [a, b] with `panels`
// equal panels.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

Rule gauss_legendre(double a, double b, int panels);

// Composite rule over consecutive breakpoints, `panels` panels per piece.
Rule gauss_legendre(const std::vector<double>& breaks, int panels);

double integrate(const std::function<double(double)>& f, const Rule& rule);

// Double-exponential rule on [a, b]; tolerates integrable endpoint
// singularities such as sqrt and 1/sqrt.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double* error_estimate = nullptr);

}  // namespace qlab::quad
