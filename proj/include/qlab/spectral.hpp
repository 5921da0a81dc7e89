#pragma once

// Radial kernels on the hyperbolic plane, their Selberg/Harish-Chandra
// transforms, hyperbolic convolution, and the spectral main and error terms
// of the lattice point count.
//
// Transform chain for a radial kernel k(u):
//   q(v) = int_v^inf k(u) (u - v)^{-1/2} du
//   g(r) = 2 q(sinh^2(r/2))
//   h(t) = int_R e^{irt} g(r) dr
// so that h(i/2) = 4 pi int_0^inf k(u) du = int_H k(u(z, w)) dmu(z).

#include <complex>
#include <memory>
#include <variant>
#include <vector>

#include "qlab/geometry.hpp"
#include "qlab/latcount.hpp"
#include "qlab/orders.hpp"

namespace qlab {

// unit_mass: k_delta is the normalized indicator of the disc of radius delta
// (u <= (cosh delta - 1)/2). half_mass: same height on u <= (cosh delta -
// 1)/4, which carries hyperbolic mass 1/2.
enum class MassConvention { unit_mass, half_mass };

struct HardDisc {
  double X;  // k = indicator of [0, (X-2)/4]
};

struct Mollifier {
  double delta;
  MassConvention mass = MassConvention::unit_mass;
};

// k_{+-} = indicator of the disc of radius R +- delta convolved with k_delta,
// R = acosh(X/2).
struct Smoothed {
  double X;
  double delta;
  int sign;  // +1 or -1
  MassConvention mass = MassConvention::unit_mass;
};

using KernelSpec = std::variant<HardDisc, Mollifier, Smoothed>;

// A compactly supported radial kernel in the variable u. Either a scaled
// indicator of [0, u0] or a table that is piecewise linear in u and zero past
// its last node.
class RadialKernel {
 public:
  static RadialKernel indicator(double u0, double height);
  static RadialKernel table(std::vector<double> u, std::vector<double> k);
  static RadialKernel zero() { return indicator(0.0, 0.0); }

  double operator()(double u) const;
  double support() const;         // largest u with k(u) != 0
  double support_radius() const;  // geodesic radius of the support
  double mass() const;            // 4 pi int k(u) du
  std::vector<double> breakpoints() const;

  // Abel transform q(v), exact for both representations.
  double abel(double v) const;
  // g(r) = 2 q(sinh^2(r/2)), evaluated without cancellation for indicators.
  double g(double r) const;

  bool is_indicator() const { return nodes_.empty(); }
  double height() const { return height_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

 private:
  double u0_ = 0.0;
  double radius_ = 0.0;
  double height_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

double disc_u(double radius);       // (cosh r - 1)/2
double disc_radius(double u);       // inverse of disc_u

// Closed-form kernels; Smoothed is tabulated through convolve_radial.
RadialKernel radial_kernel(const KernelSpec& spec, int table_points = 1201);

// Transform of one radial kernel, prepared once and evaluated for many t.
// Quadrature panels double until h at probe points (t = 0, i/2 and up to
// t_max) agrees to `rel_tol` of max |h|; NumericError otherwise.
class ShcEvaluator {
 public:
  explicit ShcEvaluator(const RadialKernel& k, double t_max = 50.0, double rel_tol = 1e-9);
  std::complex<double> operator()(std::complex<double> t) const;
  double achieved_tolerance() const { return achieved_; }
  int panels() const { return panels_; }

 private:
  std::vector<double> r_;
  std::vector<double> wg_;
  double achieved_ = 0.0;
  int panels_ = 0;
};

// h(t) for |Im t| <= 1/2. Smoothed kernels use h_disc(R +- delta) h_delta.
std::complex<double> shc_transform(const KernelSpec& kernel, std::complex<double> t);
std::complex<double> shc_transform(const RadialKernel& kernel, std::complex<double> t);

// Transforms of a KernelSpec, factored so that a t-scan pays the setup once.
class KernelTransform {
 public:
  explicit KernelTransform(const KernelSpec& kernel, double t_max = 50.0);
  std::complex<double> operator()(std::complex<double> t) const;

 private:
  std::vector<ShcEvaluator> factors_;
};

struct ShcRow {
  double t_re, t_im, h_re, h_im;
};
std::vector<ShcRow> shc_scan(const KernelSpec& kernel, double t_min, double t_max, double t_step);

// (k1 * k2)(u(z, w)) = int_H k1(u(z, v)) k2(u(v, w)) dmu(v), tabulated on
// `points` radii spread uniformly over [0, radius(k1) + radius(k2)].
RadialKernel convolve_radial(const RadialKernel& k1, const RadialKernel& k2, int points = 1201);

struct EigenDatum {
  double s = 1.0;       // 1/2 < s <= 1
  double weight = 0.0;  // u_j(z) conj(u_j(w)); 1/vol for the constant mode
};

std::vector<EigenDatum> default_eigendata(long D);

// sum_j sqrt(pi) Gamma(s_j - 1/2) / Gamma(s_j + 1) weight_j X^{s_j}.
double main_term(double X, const std::vector<EigenDatum>& eigendata);

struct ErrorSample {
  double X = 0.0;
  long long N = 0;
  double M = 0.0;
  double E = 0.0;           // N - M
  double normalized = 0.0;  // E / X^{2/3}
};

ErrorSample error_term(const OrderBasis& basis, const UHPoint& z, double X,
                       const std::vector<EigenDatum>& eigendata);

// Same as error_term at every X, sharing one lattice enumeration.
std::vector<ErrorSample> error_terms(const OrderBasis& basis, const UHPoint& z,
                                     const std::vector<double>& Xs,
                                     const std::vector<EigenDatum>& eigendata,
                                     const EnumerationOptions& opts = {});

}  // namespace qlab
