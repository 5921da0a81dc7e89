#pragma once

// CM points of discriminant d on X(D,1): candidate search, reduction modulo
// the group, class numbers, the Eichler cross-check and discrete averages.

#include <string>
#include <vector>

#include "qlab/geometry.hpp"
#include "qlab/latcount.hpp"
#include "qlab/orders.hpp"
#include "qlab/spectral.hpp"

namespace qlab {

// Kronecker symbol (a|n) for n >= 1.
int kronecker(long a, long n);

bool is_discriminant(long d);  // d = 0,1 mod 4 and not a square
bool is_fundamental_discriminant(long d);

// True iff (d|p) != 1 for every p | D. DomainError unless d < 0 is a
// discriminant.
bool embedding_criterion(long D, long d);

// Number of reduced primitive forms (a,b,c), b^2 - 4ac = d < 0.
long class_number_forms(long d);

// h(d) prod_{p|D} (1 - (d|p)) for fundamental d < 0.
long eichler_class_number_oracle(long D, long d);

struct CMPoint {
  UHPoint point;
  Coords rep{};  // coordinates of the elliptic element in the order basis
  long t = 0;
  long n = 0;
  long d = 0;
};

// Fixed point in H of phi(x) for x with t^2 - 4n < 0. DomainError otherwise.
UHPoint fixed_point(const QuatElement& x);

// |phi(x) z - z| measured as a hyperbolic distance.
double fixed_point_residual(const QuatElement& x, const UHPoint& z);

// Every order element with trace t in {0,1}, t = d mod 2, norm (t^2 - d)/4 and
// fixed point within distance R of z0. Empty when embedding_criterion fails.
std::vector<CMPoint> cm_candidates(const OrderBasis& basis, long d, const UHPoint& z0, double R,
                                   const EnumerationOptions& opts = {});

// Some group element maps q.point to p.point. Found by listing norm-1 x
// with |sigma_p^{-1} phi(x) sigma_q|_F^2 <= 2 + 1e-6 and then confirmed
// exactly: x y conj(x) must equal the element of p or its conjugate.
bool gamma_equivalent(const OrderBasis& basis, const CMPoint& p, const CMPoint& q);

struct CMPointSet {
  long D = 0;
  long d = 0;
  std::vector<CMPoint> points;
  long h = 0;
  double radius = 0.0;  // search radius at which h was accepted
  std::vector<std::pair<double, long>> history;  // (R, h) per search radius
};

// Greedy representatives: a candidate is kept unless equivalent to one kept
// earlier. Input order decides which representative survives.
CMPointSet reduce_mod_gamma(const OrderBasis& basis, const std::vector<CMPoint>& candidates);

struct CMSearchOptions {
  UHPoint z0{0.0, 1.0};
  double r_start = 1.0;
  double r_step = 0.5;
  double r_max = 4.0;
  int stable_repeats = 2;  // h unchanged over this many further radii
  EnumerationOptions enumeration;
};

// Grows R until h is stable; ResourceError if r_max is reached first.
CMPointSet compute_cm_points(const OrderBasis& basis, long d, const CMSearchOptions& opts = {});

struct DiscreteAverage {
  double average = 0.0;
  double integral = 0.0;
  double discrepancy = 0.0;
};

// f(z) = sum over the group of k(u(gamma z, w0)).
double automorphic_kernel_sum(const OrderBasis& basis, const RadialKernel& k, const UHPoint& w0,
                              const UHPoint& z, const EnumerationOptions& opts = {});

DiscreteAverage discrete_average(const OrderBasis& basis, const CMPointSet& pts, const UHPoint& w0,
                                 const RadialKernel& k, const EnumerationOptions& opts = {});

// {"D":..,"d":..,"h":..,"radius":..,"points":[{"rep":[..],"t":..,"n":..,"x":..,"y":..}]}
std::string cm_to_json(const CMPointSet& set);

}  // namespace qlab
