#include "qlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlab/error.hpp"
#include "qlab/latcount.hpp"
#include "qlab/quadrature.hpp"

namespace qlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double disc_u(double radius) {
  const double s = std::sinh(0.5 * radius);
  return s * s;
}

double disc_radius(double u) { return 2.0 * std::asinh(std::sqrt(std::max(u, 0.0))); }

RadialKernel RadialKernel::indicator(double u0, double height) {
  if (!(u0 >= 0.0) || !std::isfinite(u0) || !std::isfinite(height))
    throw DomainError("indicator kernel needs a finite support endpoint u0 >= 0");
  RadialKernel k;
  k.u0_ = u0;
  k.radius_ = disc_radius(u0);
  k.height_ = height;
  return k;
}

RadialKernel RadialKernel::table(std::vector<double> u, std::vector<double> v) {
  if (u.size() != v.size() || u.size() < 2) throw DomainError("kernel table needs >= 2 (u, k) pairs");
  if (u.front() != 0.0) throw DomainError("kernel table must start at u = 0");
  for (std::size_t i = 1; i < u.size(); ++i)
    if (!(u[i] > u[i - 1])) throw DomainError("kernel table nodes must increase strictly");
  RadialKernel k;
  k.u0_ = u.back();
  k.radius_ = disc_radius(u.back());
  k.nodes_ = std::move(u);
  k.values_ = std::move(v);
  return k;
}

double RadialKernel::operator()(double u) const {
  u = std::max(u, 0.0);
  if (is_indicator()) return u <= u0_ ? height_ : 0.0;
  if (u > nodes_.back()) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  if (it == nodes_.end()) return values_.back();
  const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const double f = (u - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
  return values_[i] + f * (values_[i + 1] - values_[i]);
}

double RadialKernel::support() const {
  if (is_indicator()) return height_ == 0.0 ? 0.0 : u0_;
  return u0_;
}

double RadialKernel::support_radius() const { return disc_radius(support()); }

double RadialKernel::mass() const {
  if (is_indicator()) return 4.0 * kPi * u0_ * height_;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    s += 0.5 * (values_[i] + values_[i + 1]) * (nodes_[i + 1] - nodes_[i]);
  return 4.0 * kPi * s;
}

std::vector<double> RadialKernel::breakpoints() const {
  if (is_indicator()) return {u0_};
  return nodes_;
}

double RadialKernel::abel(double v) const {
  v = std::max(v, 0.0);
  if (is_indicator()) return v < u0_ ? 2.0 * height_ * std::sqrt(u0_ - v) : 0.0;
  if (v >= nodes_.back()) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), v);
  std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  i = i == 0 ? 0 : i - 1;
  double total = 0.0;
  for (; i + 1 < nodes_.size(); ++i) {
    const double ua = std::max(nodes_[i], v), ub = nodes_[i + 1];
    if (ub <= v) continue;
    const double slope = (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
    const double at_v = values_[i] + slope * (v - nodes_[i]);  // line extended to v
    const double sa = ua - v, sb = ub - v;
    const double rb = std::sqrt(sb), ra = std::sqrt(sa);
    total += at_v * 2.0 * (rb - ra) + slope * (2.0 / 3.0) * (sb * rb - sa * ra);
  }
  return total;
}

double RadialKernel::g(double r) const {
  r = std::abs(r);
  if (is_indicator()) {
    if (r >= radius_) return 0.0;
    return 4.0 * height_ * std::sqrt(std::sinh(0.5 * (radius_ + r)) * std::sinh(0.5 * (radius_ - r)));
  }
  return 2.0 * abel(disc_u(r));
}

namespace {

RadialKernel mollifier_kernel(double delta, MassConvention mass) {
  if (!(delta > 0.0)) throw DomainError("mollifier needs delta > 0");
  const double s = std::sinh(0.5 * delta);
  const double height = 1.0 / (4.0 * kPi * s * s);
  const double u0 = mass == MassConvention::unit_mass ? disc_u(delta) : (std::cosh(delta) - 1.0) / 4.0;
  return RadialKernel::indicator(u0, height);
}

RadialKernel hard_disc_kernel(double X) {
  if (!(X >= 2.0)) throw DomainError("hard disc kernel needs X >= 2");
  return RadialKernel::indicator((X - 2.0) / 4.0, 1.0);
}

// The two factors whose convolution is k_{+-}.
std::pair<RadialKernel, RadialKernel> smoothed_factors(const Smoothed& s) {
  if (!(s.X >= 2.0)) throw DomainError("smoothed kernel needs X >= 2");
  if (s.sign != 1 && s.sign != -1) throw DomainError("smoothed kernel sign must be +1 or -1");
  const double R = std::acosh(s.X / 2.0);
  const double radius = R + s.sign * s.delta;
  if (!(radius > 0.0)) throw DomainError("smoothed kernel needs R - delta > 0");
  return {RadialKernel::indicator(disc_u(radius), 1.0), mollifier_kernel(s.delta, s.mass)};
}

std::vector<RadialKernel> factors_of(const KernelSpec& spec) {
  return std::visit(
      [](const auto& k) -> std::vector<RadialKernel> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, HardDisc>) {
          return {hard_disc_kernel(k.X)};
        } else if constexpr (std::is_same_v<T, Mollifier>) {
          return {mollifier_kernel(k.delta, k.mass)};
        } else {
          auto [disc, moll] = smoothed_factors(k);
          return {disc, moll};
        }
      },
      spec);
}

void check_strip(std::complex<double> t) {
  if (std::abs(t.imag()) > 0.5 + 1e-12)
    throw DomainError("transform argument must satisfy |Im t| <= 1/2");
}

}  // namespace

RadialKernel radial_kernel(const KernelSpec& spec, int table_points) {
  auto f = factors_of(spec);
  if (f.size() == 1) return f.front();
  return convolve_radial(f[0], f[1], table_points);
}

ShcEvaluator::ShcEvaluator(const RadialKernel& k, double t_max, double rel_tol) {
  const double rho = k.support_radius();
  if (rho == 0.0 || (k.is_indicator() && k.height() == 0.0)) return;  // h == 0

  // r = rho (1 - tau^2) removes the square-root edge of g at r = rho.
  auto build = [&](int panels, std::vector<double>& r, std::vector<double>& wg) {
    const quad::Rule rule = quad::gauss_legendre(0.0, 1.0, panels);
    r.resize(rule.x.size());
    wg.resize(rule.x.size());
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double tau = rule.x[j];
      r[j] = rho * (1.0 - tau * tau);
      wg[j] = 2.0 * rule.w[j] * 2.0 * rho * tau * k.g(r[j]);
    }
  };
  auto eval = [](const std::vector<double>& r, const std::vector<double>& wg, std::complex<double> t) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += wg[j] * std::cos(r[j] * t);
    return s;
  };
  const std::vector<std::complex<double>> probes{
      {0.0, 0.0}, {0.0, 0.5}, {t_max, 0.0}, {0.37 * t_max, 0.0}, {0.71 * t_max, 0.0}, {1.0, 0.0}};

  // Oscillation count sets the starting panel budget.
  int panels = std::max(8, static_cast<int>(std::ceil(rho * t_max / 20.0)));
  if (!k.is_indicator()) panels = std::max(panels, static_cast<int>(k.nodes().size() / 4));
  build(panels, r_, wg_);
  std::vector<double> r2, wg2;
  const int max_panels = 1 << 15;
  while (true) {
    build(2 * panels, r2, wg2);
    double diff = 0.0, scale = 0.0;
    for (auto t : probes) {
      const auto a = eval(r_, wg_, t), b = eval(r2, wg2, t);
      diff = std::max(diff, std::abs(a - b));
      scale = std::max(scale, std::abs(b));
    }
    r_.swap(r2);
    wg_.swap(wg2);
    panels *= 2;
    achieved_ = scale > 0.0 ? diff / scale : 0.0;
    panels_ = panels;
    if (achieved_ <= rel_tol) break;
    if (2 * panels > max_panels)
      throw NumericError("transform quadrature did not converge", achieved_);
  }
}

std::complex<double> ShcEvaluator::operator()(std::complex<double> t) const {
  std::complex<double> s = 0.0;
  for (std::size_t j = 0; j < r_.size(); ++j) s += wg_[j] * std::cos(r_[j] * t);
  return s;
}

KernelTransform::KernelTransform(const KernelSpec& kernel, double t_max) {
  for (const auto& f : factors_of(kernel)) factors_.emplace_back(f, t_max);
}

std::complex<double> KernelTransform::operator()(std::complex<double> t) const {
  check_strip(t);
  std::complex<double> h = 1.0;
  for (const auto& f : factors_) h *= f(t);
  return h;
}

std::complex<double> shc_transform(const KernelSpec& kernel, std::complex<double> t) {
  check_strip(t);
  return KernelTransform(kernel, std::max(50.0, std::abs(t.real())))(t);
}

std::complex<double> shc_transform(const RadialKernel& kernel, std::complex<double> t) {
  check_strip(t);
  return ShcEvaluator(kernel, std::max(50.0, std::abs(t.real())), 1e-7)(t);
}

std::vector<ShcRow> shc_scan(const KernelSpec& kernel, double t_min, double t_max, double t_step) {
  if (!(t_step > 0.0) || !(t_max >= t_min)) throw DomainError("shc scan needs t_step > 0 and t_max >= t_min");
  KernelTransform h(kernel, std::max({50.0, std::abs(t_min), std::abs(t_max)}));
  std::vector<ShcRow> rows;
  const long n = static_cast<long>(std::floor((t_max - t_min) / t_step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    const double t = t_min + static_cast<double>(k) * t_step;
    const auto v = h({t, 0.0});
    rows.push_back({t, 0.0, v.real(), v.imag()});
  }
  return rows;
}

namespace {

// int_0^{2 pi} k2(u(v, w)) dtheta with v at radius rho from z and w at
// radius r, theta the angle between them as seen from z.
double angular_integral(const RadialKernel& k2, double rho, double r) {
  const double umin = disc_u(std::abs(rho - r));
  const double umax = disc_u(rho + r);
  const double A = std::cosh(rho) * std::cosh(r) - 1.0;
  const double B = std::sinh(rho) * std::sinh(r);
  if (B == 0.0) return 2.0 * kPi * k2(umin);

  std::vector<double> cuts{0.0, kPi};
  for (double b : k2.breakpoints()) {
    if (b <= umin || b >= umax) continue;
    const double c = std::clamp((A - 2.0 * b) / B, -1.0, 1.0);
    cuts.push_back(std::acos(c));
  }
  std::sort(cuts.begin(), cuts.end());
  auto u_at = [&](double theta) { return 0.5 * (A - B * std::cos(theta)); };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    if (k2.is_indicator()) {
      total += (b - a) * k2(u_at(0.5 * (a + b)));
    } else {
      const quad::Rule rule = quad::gauss_legendre(a, b, 1);
      for (std::size_t j = 0; j < rule.x.size(); ++j) total += rule.w[j] * k2(u_at(rule.x[j]));
    }
  }
  return 2.0 * total;
}

double convolution_at(const RadialKernel& k1, const RadialKernel& k2, double r) {
  const double rho1 = k1.support_radius();
  std::vector<double> cuts{0.0, rho1};
  for (double b : k1.breakpoints()) cuts.push_back(disc_radius(b));
  for (double b : k2.breakpoints()) {
    const double rb = disc_radius(b);
    cuts.push_back(std::abs(r - rb));
    cuts.push_back(r + rb);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double c) { return c < 0.0 || c > rho1; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto outer = [&](double rho) {
    const double v1 = k1(disc_u(rho));
    if (v1 == 0.0) return 0.0;
    return std::sinh(rho) * v1 * angular_integral(k2, rho, r);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 1e-15 * std::max(1.0, b)) continue;
    total += quad::tanh_sinh(outer, a, b, 1e-11);
  }
  return total;
}

}  // namespace

RadialKernel convolve_radial(const RadialKernel& k1, const RadialKernel& k2, int points) {
  if (points < 3) throw DomainError("convolve_radial needs at least 3 table points");
  const double rho1 = k1.support_radius(), rho2 = k2.support_radius();
  const double span = rho1 + rho2;
  if (span == 0.0 || k1.mass() == 0.0 || k2.mass() == 0.0) return RadialKernel::zero();

  std::vector<double> radii;
  for (int j = 0; j < points; ++j) radii.push_back(span * j / (points - 1));
  radii.push_back(std::abs(rho1 - rho2));  // kink of the convolution of two discs
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end(),
                          [&](double a, double b) { return std::abs(a - b) < 1e-12 * span; }),
              radii.end());

  std::vector<double> u, v;
  for (double r : radii) {
    u.push_back(disc_u(r));
    v.push_back(convolution_at(k1, k2, r));
  }
  u.front() = 0.0;
  return RadialKernel::table(std::move(u), std::move(v));
}

std::vector<EigenDatum> default_eigendata(long D) { return {{1.0, 1.0 / shimura_volume(D)}}; }

double main_term(double X, const std::vector<EigenDatum>& eigendata) {
  double m = 0.0;
  for (const auto& e : eigendata) {
    if (!(e.s > 0.5 && e.s <= 1.0))
      throw DomainError("main term only takes modes with 1/2 < s <= 1 (got s = " +
                        std::to_string(e.s) + ")");
    if (!(e.weight >= 0.0)) throw DomainError("eigendatum weight must be non-negative");
    m += std::sqrt(kPi) * std::tgamma(e.s - 0.5) / std::tgamma(e.s + 1.0) * e.weight * std::pow(X, e.s);
  }
  return m;
}

std::vector<ErrorSample> error_terms(const OrderBasis& basis, const UHPoint& z,
                                     const std::vector<double>& Xs,
                                     const std::vector<EigenDatum>& eigendata,
                                     const EnumerationOptions& opts) {
  for (const auto& e : eigendata) main_term(2.0, {e});  // validates before the expensive part
  std::vector<ErrorSample> out;
  for (const auto& c : count_profile(basis, z, z, Xs, opts)) {
    ErrorSample s;
    s.X = c.X;
    s.N = c.count;
    s.M = main_term(c.X, eigendata);
    s.E = static_cast<double>(s.N) - s.M;
    s.normalized = s.E / std::pow(s.X, 2.0 / 3.0);
    out.push_back(s);
  }
  return out;
}

ErrorSample error_term(const OrderBasis& basis, const UHPoint& z, double X,
                       const std::vector<EigenDatum>& eigendata) {
  return error_terms(basis, z, {X}, eigendata).front();
}

}  // namespace qlab
