#include "qlab/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlab/error.hpp"

namespace qlab {

GroupElementRecord make_record(const OrderBasis& basis, const Coords& c) {
  const QuatElement x = basis.from_coords(c);
  return {c, embed(x), x.reduced_norm(), x.reduced_trace()};
}

std::vector<Coords> norm_elements(const OrderBasis& basis, long long n, const PointPairForm& form,
                                  double bound, const EnumerationOptions& opts) {
  if (n < 1) throw DomainError("norm_elements: n must be >= 1");
  if (&form.basis() != &basis) throw DomainError("norm_elements: form built on a different basis");
  return enumerate_ellipsoid(form, bound, LeafFilter::with_norm(n), opts);
}

bool same_left_orbit(const OrderBasis& basis, const Coords& x, const Coords& y, long long n) {
  const QuatElement qx = basis.from_coords(x), qy = basis.from_coords(y);
  const QuatElement g = Rational(1, static_cast<long>(n)) * (qy * qx.conjugate());
  return basis.contains(g);
}

std::vector<GroupElementRecord> hecke_orbit_reps(const OrderBasis& basis, long long n,
                                                 const UHPoint& z0, double R,
                                                 const EnumerationOptions& opts) {
  if (n < 1) throw DomainError("hecke_orbit_reps: n must be >= 1");
  if (std::gcd(n, basis.D()) != 1)
    throw DomainError("hecke_orbit_reps: n must be prime to D (gcd(n, D) = " +
                      std::to_string(std::gcd(n, basis.D())) + ")");
  const PointPairForm form = point_pair_gram(basis, z0, z0);
  const double bound = 2.0 * static_cast<double>(n) * std::cosh(R);
  auto elems = norm_elements(basis, n, form, bound, opts);

  std::vector<std::pair<double, Coords>> ordered;
  ordered.reserve(elems.size());
  for (const auto& c : elems) ordered.emplace_back(form.evaluate(c), c);
  std::sort(ordered.begin(), ordered.end());

  std::vector<GroupElementRecord> reps;
  for (const auto& [q, c] : ordered) {
    bool seen = false;
    for (const auto& r : reps)
      if (same_left_orbit(basis, r.coords, c, n)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(make_record(basis, c));
  }
  return reps;
}

HeckeDegree hecke_degree(const OrderBasis& basis, long long n, const UHPoint& z0,
                         const EnumerationOptions& opts) {
  long long prev = -1;
  int repeats = 0;
  HeckeDegree out;
  for (double R = 1.0; R <= 4.0 + 1e-12; R += 0.5) {
    long long k = static_cast<long long>(hecke_orbit_reps(basis, n, z0, R, opts).size());
    out = {k, R};
    repeats = (k == prev) ? repeats + 1 : 0;
    if (repeats == 2) break;
    prev = k;
  }
  return out;
}

long long sigma1(long long n) {
  long long s = 0;
  for (long long d = 1; d * d <= n; ++d)
    if (n % d == 0) s += d + (d * d == n ? 0 : n / d);
  return s;
}

}  // namespace qlab
