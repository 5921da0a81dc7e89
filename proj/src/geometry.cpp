#include "qlab/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <cctype>

#include "qlab/error.hpp"

namespace qlab {

UHPoint::UHPoint(double re, double im) : x(re), y(im) {
  if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im))
    throw DomainError("point must lie in the upper half-plane (Im > 0)");
}

std::string UHPoint::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", x, y);
  return buf;
}

UHPoint parse_uhpoint(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto bad = [&]() { return ConfigError("cannot parse point '" + text + "'; expected e.g. 0.25+1.5i"); };
  if (s.empty() || s.back() != 'i') throw bad();
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  try {
    std::size_t used_re = 0, used_im = 0;
    double re = std::stod(re_part, &used_re);
    double im = std::stod(im_part, &used_im);
    if (used_re != re_part.size() || used_im != im_part.size()) throw bad();
    return UHPoint(re, im);
  } catch (const std::logic_error&) {
    throw bad();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("point '") + text + "': " + e.what());
  }
}

double point_pair_invariant(const UHPoint& z, const UHPoint& w) {
  const double dx = z.x - w.x, dy = z.y - w.y;
  return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

double hyperbolic_distance(const UHPoint& z, const UHPoint& w) {
  // rho = 2 asinh(sqrt(u)) is the cancellation-free form of acosh(1 + 2u).
  return 2.0 * std::asinh(std::sqrt(point_pair_invariant(z, w)));
}

UHPoint mobius(const RealMatrix2& g, const UHPoint& z) {
  if (!(g.det() > 0.0)) throw DomainError("mobius: matrix must have positive determinant");
  const std::complex<double> zz = z.as_complex();
  const std::complex<double> r = (g.a * zz + g.b) / (g.c * zz + g.d);
  return {r.real(), r.imag()};
}

RealMatrix2 sigma(const UHPoint& z) {
  const double s = std::sqrt(z.y);
  return {s, z.x / s, 0.0, 1.0 / s};
}

RealMatrix2 sigma_inverse(const UHPoint& z) {
  const double s = std::sqrt(z.y);
  return {1.0 / s, -z.x / s, 0.0, s};
}

BigMatrix2 sigma(const UHPoint& z, int bits) {
  const BigFloat s = sqrt(BigFloat(z.y, bits));
  return {s, BigFloat(z.x, bits) / s, BigFloat(bits), BigFloat(1.0, bits) / s};
}

BigMatrix2 sigma_inverse(const UHPoint& z, int bits) {
  const BigFloat s = sqrt(BigFloat(z.y, bits));
  return {BigFloat(1.0, bits) / s, -(BigFloat(z.x, bits) / s), BigFloat(bits), s};
}

}  // namespace qlab
