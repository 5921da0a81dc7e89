#pragma once

// Norm-n elements R(n) of an order and representatives of the left orbit
// space R(1)\R(n) that indexes the Hecke operator T_n.

#include <vector>

#include "qlab/latcount.hpp"

namespace qlab {

struct GroupElementRecord {
  Coords coords{};
  RealMatrix2 matrix{};  // phi of the element
  Rational norm;
  Rational trace;
};

GroupElementRecord make_record(const OrderBasis& basis, const Coords& c);

// All x in the order with reduced norm n and form(x) <= bound. Both x and -x
// are returned. Throws DomainError for n < 1.
std::vector<Coords> norm_elements(const OrderBasis& basis, long long n, const PointPairForm& form,
                                  double bound, const EnumerationOptions& opts = {});

// y in R(1) x  <=>  y conj(x) / n lies in the order (exact).
bool same_left_orbit(const OrderBasis& basis, const Coords& x, const Coords& y, long long n);

// One representative per orbit R(1) x among norm-n elements whose displacement
// of z0 is at most R (gram_{z0}(x) <= 2 n cosh R). Representatives are the
// minimal-displacement members. Throws DomainError if gcd(n, D) > 1.
std::vector<GroupElementRecord> hecke_orbit_reps(const OrderBasis& basis, long long n,
                                                 const UHPoint& z0, double R,
                                                 const EnumerationOptions& opts = {});

struct HeckeDegree {
  long long orbits = 0;
  double radius = 0.0;  // search radius at which the count stabilized
};

// Orbit count with the search radius grown in steps of 0.5 from 1 until the
// count repeats twice in a row (cap 4).
HeckeDegree hecke_degree(const OrderBasis& basis, long long n, const UHPoint& z0,
                         const EnumerationOptions& opts = {});

long long sigma1(long long n);

}  // namespace qlab
