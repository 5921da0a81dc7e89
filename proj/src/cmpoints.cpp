#include "qlab/cmpoints.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "qlab/error.hpp"

namespace qlab {

int kronecker(long a, long n) {
  if (n < 1) throw DomainError("kronecker: n must be >= 1");
  const mpz_class A(a);
  return mpz_kronecker_si(A.get_mpz_t(), n);
}

bool is_discriminant(long d) {
  const long r = ((d % 4) + 4) % 4;
  if (r != 0 && r != 1) return false;
  if (d >= 0) {
    const long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(d))));
    if (s * s == d) return false;
  }
  return true;
}

bool is_fundamental_discriminant(long d) {
  if (d == 0 || d == 1 || !is_discriminant(d)) return false;
  if (((d % 4) + 4) % 4 == 1) return is_squarefree(d);
  const long m = d / 4;
  const long r = ((m % 4) + 4) % 4;
  return (r == 2 || r == 3) && is_squarefree(m);
}

bool embedding_criterion(long D, long d) {
  if (d >= 0 || !is_discriminant(d))
    throw DomainError("embedding_criterion: d must be a negative discriminant (got " +
                      std::to_string(d) + ")");
  for (long p : prime_factors(D))
    if (kronecker(d, p) == 1) return false;
  return true;
}

long class_number_forms(long d) {
  if (d >= 0 || !is_discriminant(d))
    throw DomainError("class_number_forms: d must be a negative discriminant");
  const long N = -d;
  long h = 0;
  // Reduced: |b| <= a <= c, and b >= 0 when |b| = a or a = c.
  for (long a = 1; 3 * a * a <= N; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b + N;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

long eichler_class_number_oracle(long D, long d) {
  if (!(d < 0) || !is_fundamental_discriminant(d))
    throw DomainError("eichler_class_number_oracle: d must be a negative fundamental discriminant");
  long h = class_number_forms(d);
  for (long p : prime_factors(D)) h *= 1 - kronecker(d, p);
  return h;
}

UHPoint fixed_point(const QuatElement& x) {
  const Rational t = x.reduced_trace(), n = x.reduced_norm();
  const Rational disc = t * t - 4 * n;
  if (sgn(disc) >= 0) throw DomainError("fixed_point: element is not elliptic (t^2 - 4n >= 0)");
  const Algebra alg = x.algebra();
  const double sa = std::sqrt(static_cast<double>(alg.a));
  // phi(x) = [[A, B], [C, D]] with A - D = -2 x1 sqrt(a), C = b (x2 + x3 sqrt(a)).
  const double C = static_cast<double>(alg.b) * (x[2].get_d() + x[3].get_d() * sa);
  if (C == 0.0) throw DomainError("fixed_point: lower-left entry vanishes");
  const double re = -x[1].get_d() * sa / C;
  const double im = std::sqrt(-disc.get_d()) / (2.0 * std::abs(C));
  return UHPoint(re, im);
}

double fixed_point_residual(const QuatElement& x, const UHPoint& z) {
  return hyperbolic_distance(mobius(embed(x), z), z);
}

std::vector<CMPoint> cm_candidates(const OrderBasis& basis, long d, const UHPoint& z0, double R,
                                   const EnumerationOptions& opts) {
  if (!(R > 0.0)) throw DomainError("cm_candidates: R must be positive");
  if (!embedding_criterion(basis.D(), d)) return {};
  const long t = (d % 2 == 0) ? 0 : 1;
  const long n = (t * t - d) / 4;
  const PointPairForm form = point_pair_gram(basis, z0, z0);
  const double bound = 0.5 * t * t + 0.5 * static_cast<double>(-d) * std::cosh(2.0 * R);
  const auto elems = enumerate_ellipsoid(form, bound, LeafFilter::with_trace_norm(t, n), opts);

  std::vector<std::pair<double, CMPoint>> out;
  out.reserve(elems.size());
  for (const auto& c : elems) {
    CMPoint p;
    p.rep = c;
    p.t = t;
    p.n = n;
    p.d = d;
    p.point = fixed_point(basis.from_coords(c));
    out.emplace_back(form.evaluate(c), p);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<CMPoint> pts;
  pts.reserve(out.size());
  for (auto& [q, p] : out) pts.push_back(p);
  return pts;
}

bool gamma_equivalent(const OrderBasis& basis, const CMPoint& p, const CMPoint& q) {
  if (p.d != q.d || p.t != q.t) return false;
  const PointPairForm form = point_pair_gram(basis, p.point, q.point);
  const auto hits = enumerate_raw(form, 2.0 + 1e-6, LeafFilter::with_norm(1));
  if (hits.empty()) return false;
  const QuatElement xp = basis.from_coords(p.rep), xq = basis.from_coords(q.rep);
  const QuatElement xp_bar = xp.conjugate();
  for (const auto& h : hits) {
    const QuatElement g = basis.from_coords(h.coords);
    const QuatElement moved = g * xq * g.conjugate();
    if (moved == xp || moved == xp_bar) return true;
  }
  return false;
}

CMPointSet reduce_mod_gamma(const OrderBasis& basis, const std::vector<CMPoint>& candidates) {
  CMPointSet set;
  set.D = basis.D();
  set.d = candidates.empty() ? 0 : candidates.front().d;
  for (const auto& c : candidates) {
    bool seen = false;
    for (const auto& r : set.points)
      if (gamma_equivalent(basis, r, c)) {
        seen = true;
        break;
      }
    if (!seen) set.points.push_back(c);
  }
  set.h = static_cast<long>(set.points.size());
  return set;
}

CMPointSet compute_cm_points(const OrderBasis& basis, long d, const CMSearchOptions& opts) {
  if (!(opts.r_start > 0.0) || !(opts.r_step > 0.0) || opts.stable_repeats < 1)
    throw DomainError("compute_cm_points: invalid search schedule");
  std::vector<std::pair<double, long>> history;
  long prev = -1;
  int repeats = 0;
  for (double R = opts.r_start; R <= opts.r_max + 1e-12; R += opts.r_step) {
    CMPointSet set = reduce_mod_gamma(basis, cm_candidates(basis, d, opts.z0, R, opts.enumeration));
    set.D = basis.D();
    set.d = d;
    set.radius = R;
    history.emplace_back(R, set.h);
    repeats = (set.h == prev) ? repeats + 1 : 0;
    prev = set.h;
    if (repeats >= opts.stable_repeats) {
      set.history = history;
      return set;
    }
  }
  throw ResourceError("compute_cm_points: class count for d = " + std::to_string(d) +
                          " did not stabilize by R = " + std::to_string(opts.r_max),
                      0);
}

double automorphic_kernel_sum(const OrderBasis& basis, const RadialKernel& k, const UHPoint& w0,
                              const UHPoint& z, const EnumerationOptions& opts) {
  const double supp = k.support();
  if (supp == 0.0 || k.mass() == 0.0) return 0.0;
  const PointPairForm form = point_pair_gram(basis, w0, z);
  const double bound = 4.0 * supp + 2.0;  // Q = 4u + 2
  if (k.is_indicator()) {
    const auto hits = enumerate_ellipsoid(form, bound, LeafFilter::with_norm(1), opts);
    return k.height() * static_cast<double>(hits.size()) / 2.0;
  }
  double s = 0.0;
  for (const auto& h : enumerate_raw(form, bound, LeafFilter::with_norm(1), opts))
    s += k((h.q - 2.0) / 4.0);
  return s / 2.0;
}

DiscreteAverage discrete_average(const OrderBasis& basis, const CMPointSet& pts, const UHPoint& w0,
                                 const RadialKernel& k, const EnumerationOptions& opts) {
  DiscreteAverage out;
  out.integral = k.mass() / shimura_volume(basis.D());
  if (!pts.points.empty()) {
    double s = 0.0;
    for (const auto& p : pts.points) s += automorphic_kernel_sum(basis, k, w0, p.point, opts);
    out.average = s / static_cast<double>(pts.points.size());
  }
  out.discrepancy = std::abs(out.average - out.integral);
  return out;
}

std::string cm_to_json(const CMPointSet& set) {
  nlohmann::ordered_json j;
  j["D"] = set.D;
  j["d"] = set.d;
  j["h"] = set.h;
  j["radius"] = set.radius;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : set.points) {
    nlohmann::ordered_json e;
    e["rep"] = std::vector<long>(p.rep.begin(), p.rep.end());
    e["t"] = p.t;
    e["n"] = p.n;
    e["x"] = p.point.x;
    e["y"] = p.point.y;
    j["points"].push_back(e);
  }
  return j.dump(2);
}

}  // namespace qlab
