#include <complex>

#include "doctest.h"
#include "qlab/error.hpp"
#include "qlab/latcount.hpp"
#include "qlab/spectral.hpp"

using namespace qlab;

namespace {

// h(t) = int_H k(u(i, z)) Im(z)^{1/2 + it} dmu(z) in geodesic polar
// coordinates about i, for the indicator of the disc of radius rho0. Plain
// composite Simpson in both variables.
std::complex<double> disc_transform_oracle(double rho0, std::complex<double> t) {
  const std::complex<double> s = 0.5 + std::complex<double>(0, 1) * t;
  const int nr = 4000, nt = 400;
  auto angular = [&](double rho) {
    std::complex<double> acc = 0;
    const double h = M_PI / nt;
    for (int j = 0; j <= nt; ++j) {
      const double th = j * h;
      const double w = (j == 0 || j == nt) ? 1 : (j % 2 ? 4 : 2);
      acc += w * std::pow(std::cosh(rho) + std::sinh(rho) * std::cos(th), -s);
    }
    return 2.0 * acc * h / 3.0;  // over [0, 2 pi] by symmetry
  };
  std::complex<double> acc = 0;
  const double h = rho0 / nr;
  for (int j = 0; j <= nr; ++j) {
    const double r = j * h;
    const double w = (j == 0 || j == nr) ? 1 : (j % 2 ? 4 : 2);
    acc += w * std::sinh(r) * angular(r);
  }
  return acc * h / 3.0;
}

double abel_oracle(const RadialKernel& k, double v) {
  // u = v + s^2 removes the singularity: q(v) = 2 int_0^inf k(v + s^2) ds.
  const double smax = std::sqrt(std::max(k.support() - v, 0.0));
  const int n = 200000;
  double acc = 0;
  for (int j = 0; j < n; ++j) acc += k(v + std::pow((j + 0.5) * smax / n, 2));
  return 2.0 * acc * smax / n;
}

}  // namespace

TEST_CASE("hard disc transform at s = 1 is the hyperbolic area") {
  for (double X : {10.0, 1e2, 1e3, 1e4, 1e5}) {
    const auto h = shc_transform(HardDisc{X}, {0, 0.5});
    CHECK(h.real() == doctest::Approx(M_PI * (X - 2)).epsilon(1e-10));
    CHECK(std::abs(h.imag()) < 1e-12 * X);
  }
}

TEST_CASE("hard disc transform agrees with the spherical-function oracle") {
  const double X = 50.0;
  const double rho0 = std::acosh(X / 2);
  for (std::complex<double> t : {std::complex<double>(0, 0), {1.0, 0}, {3.7, 0}, {0, 0.3}, {2.0, 0.45}}) {
    const auto a = shc_transform(HardDisc{X}, t);
    const auto b = disc_transform_oracle(rho0, t);
    CAPTURE(t);
    CHECK(std::abs(a - b) <= 1e-6 * std::abs(b) + 1e-9);
  }
}

TEST_CASE("mollifier mass conventions") {
  for (double delta : {0.3, 0.1, 0.01}) {
    CHECK(shc_transform(Mollifier{delta}, {0, 0.5}).real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(shc_transform(Mollifier{delta, MassConvention::half_mass}, {0, 0.5}).real() ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(radial_kernel(Mollifier{delta}).mass() == doctest::Approx(1.0));
  }
  // Approximate identity: h_delta(t) -> 1 for fixed t.
  CHECK(std::abs(shc_transform(Mollifier{1e-3}, {2.0, 0}) - 1.0) < 1e-5);
  CHECK(std::abs(shc_transform(Mollifier{1e-2}, {2.0, 0}) - 1.0) < 1e-3);
}

TEST_CASE("Abel transform of tables matches direct quadrature") {
  const RadialKernel k = RadialKernel::table({0, 0.5, 1.5, 3.0}, {2.0, 1.0, 1.0, 0.25});
  for (double v : {0.0, 0.2, 0.5, 1.0, 2.9}) CHECK(k.abel(v) == doctest::Approx(abel_oracle(k, v)).epsilon(1e-6));
  const RadialKernel d = RadialKernel::indicator(2.0, 3.0);
  for (double v : {0.0, 1.0, 1.99}) CHECK(d.abel(v) == doctest::Approx(abel_oracle(d, v)).epsilon(1e-6));
  CHECK(d.abel(2.5) == 0.0);
}

TEST_CASE("convolution: support, mass and multiplicativity") {
  const Smoothed s{300.0, 0.2, -1};
  const RadialKernel k = radial_kernel(s);
  const double R = std::acosh(150.0);
  CHECK(k.support_radius() == doctest::Approx(R - 0.2 + 0.2).epsilon(1e-9));
  CHECK(k.mass() == doctest::Approx(4 * M_PI * disc_u(R - 0.2)).epsilon(1e-4));
  const ShcEvaluator conv(k, 20.0, 1e-7);
  const KernelTransform prod(s, 20.0);
  double sup = 0, err = 0;
  for (double t = 0; t <= 20.0; t += 0.5) {
    sup = std::max(sup, std::abs(prod({t, 0})));
    err = std::max(err, std::abs(conv({t, 0}) - prod({t, 0})));
  }
  CHECK(err / sup < 1e-3);
}

TEST_CASE("convolving with a narrow mollifier approaches the disc") {
  const RadialKernel disc = RadialKernel::indicator(disc_u(2.0), 1.0);
  const RadialKernel moll = radial_kernel(Mollifier{0.02});
  const RadialKernel c = convolve_radial(disc, moll, 401);
  CHECK(c(0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c(disc_u(1.5)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c(disc_u(2.5)) == 0.0);
  CHECK(c(disc_u(2.0)) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("kernel validation and strip") {
  CHECK_THROWS_AS(shc_transform(HardDisc{1.0}, {0, 0}), DomainError);
  CHECK_THROWS_AS(shc_transform(HardDisc{10.0}, {0, 0.6}), DomainError);
  CHECK_THROWS_AS(shc_transform(Mollifier{0.0}, {0, 0}), DomainError);
  CHECK_THROWS_AS(radial_kernel(Smoothed{2.5, 2.0, -1}), DomainError);
  CHECK_THROWS_AS(radial_kernel(Smoothed{100, 0.1, 0}), DomainError);
  CHECK_THROWS_AS(RadialKernel::table({0.5, 1}, {1, 1}), DomainError);
  CHECK(shc_transform(HardDisc{2.0}, {3.0, 0}) == std::complex<double>(0, 0));
}

TEST_CASE("main term") {
  const double vol = shimura_volume(6);
  CHECK(main_term(1000.0, default_eigendata(6)) == doctest::Approx(M_PI * 1000.0 / vol));
  CHECK(main_term(1000.0, {}) == 0.0);
  const double w1 = 0.3, w2 = 0.2, X = 777.0;
  const double two = M_PI * w1 * X +
                     std::sqrt(M_PI) * std::exp(std::lgamma(0.4) - std::lgamma(1.9)) * w2 * std::pow(X, 0.9);
  CHECK(main_term(X, {{1.0, w1}, {0.9, w2}}) == doctest::Approx(two).epsilon(1e-12));
  CHECK_THROWS_AS(main_term(X, {{0.5, 1.0}}), DomainError);
  CHECK_THROWS_AS(main_term(X, {{1.1, 1.0}}), DomainError);
  CHECK_THROWS_AS(main_term(X, {{0.8, -1.0}}), DomainError);
}

TEST_CASE("error term bookkeeping") {
  const OrderBasis O = catalog_order(6);
  const UHPoint z(0.1234, 1.1);
  const auto eig = default_eigendata(6);
  const ErrorSample e2 = error_term(O, z, 2.0, eig);
  CHECK(e2.N == 1);
  CHECK(e2.M == doctest::Approx(2 * M_PI / shimura_volume(6)));
  const auto many = error_terms(O, z, {10, 100, 1000}, eig);
  for (const auto& e : many) {
    CHECK(static_cast<double>(e.N) - e.M - e.E == 0.0);
    CHECK(e.N == count_lattice(O, z, z, e.X).count);
    CHECK(e.normalized == doctest::Approx(e.E / std::pow(e.X, 2.0 / 3.0)));
  }
}
