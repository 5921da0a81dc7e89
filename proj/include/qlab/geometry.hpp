#pragma once

#include <complex>
#include <string>

#include "qlab/qalg.hpp"

namespace qlab {

// Point of the upper half-plane.
struct UHPoint {
  double x = 0.0;
  double y = 1.0;

  UHPoint() = default;
  UHPoint(double re, double im);  // throws DomainError unless im > 0

  std::complex<double> as_complex() const { return {x, y}; }
  std::string to_string() const;
  friend bool operator==(const UHPoint&, const UHPoint&) = default;
};

// Parses "i", "2i", "0.5+1.25i", "-1e-3+2i". ConfigError for malformed text
// or a non-positive imaginary part.
UHPoint parse_uhpoint(const std::string& text);

// u(z,w) = |z - w|^2 / (4 Im z Im w); cosh rho = 1 + 2u.
double point_pair_invariant(const UHPoint& z, const UHPoint& w);
double hyperbolic_distance(const UHPoint& z, const UHPoint& w);

// Mobius action of a real 2x2 matrix with positive determinant.
UHPoint mobius(const RealMatrix2& g, const UHPoint& z);

// sigma_z = [[sqrt y, x/sqrt y], [0, 1/sqrt y]] maps i to z.
RealMatrix2 sigma(const UHPoint& z);
RealMatrix2 sigma_inverse(const UHPoint& z);
BigMatrix2 sigma(const UHPoint& z, int bits);
BigMatrix2 sigma_inverse(const UHPoint& z, int bits);

}  // namespace qlab
