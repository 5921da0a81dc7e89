#pragma once

// Point-pair quadratic forms on an order and the hyperbolic lattice point
// count N(X; z, w).
//
// For x in the order put M(x) = sigma_z^{-1} phi(x) sigma_w. The map
// x -> |M(x)|_F^2 is a positive definite quadratic form Q on the lattice and
// for reduced norm n > 0
//     Q(x) = 2 n cosh rho(z, phi(x)/sqrt(n) . w).
// Counting norm-1 elements with Q(x) <= X therefore counts group elements
// with rho(z, gamma w) <= acosh(X/2). Counts are projective: x and -x are the
// same element of the group acting on H, so raw R(1) counts are exactly
// twice the reported numbers.

#include <array>
#include <vector>

#include "qlab/geometry.hpp"
#include "qlab/orders.hpp"

namespace qlab {

using Gram4 = std::array<std::array<double, 4>, 4>;

class PointPairForm {
 public:
  // Throws DomainError when `gram` is not positive definite. The form keeps a
  // reference to `basis`, which must outlive it.
  PointPairForm(const OrderBasis& basis, const UHPoint& z, const UHPoint& w, const Gram4& gram);

  const OrderBasis& basis() const { return *basis_; }
  const UHPoint& z() const { return z_; }
  const UHPoint& w() const { return w_; }
  const Gram4& gram() const { return gram_; }
  // Fincke-Pohst coefficients: Q(c) = sum_i q_ii (c_i + sum_{j>i} q_ij c_j)^2.
  const Gram4& fp_coefficients() const { return q_; }

  double evaluate(const Coords& c) const;
  // Direct |sigma_z^{-1} phi(x) sigma_w|_F^2 with exact rational x, z and w
  // taken as exact binary values, at `bits` of mantissa.
  BigFloat evaluate_extended(const Coords& c, int bits) const;

 private:
  const OrderBasis* basis_;
  UHPoint z_, w_;
  Gram4 gram_{};
  Gram4 q_{};
};

// Throws PrecisionError if the Gram matrix computed in double precision is
// not numerically positive definite.
PointPairForm point_pair_gram(const OrderBasis& basis, const UHPoint& z, const UHPoint& w);

// Restriction applied to every enumerated lattice vector, exactly.
struct LeafFilter {
  enum class Kind { any, norm, trace_norm };
  Kind kind = Kind::any;
  long long norm = 0;
  long long trace = 0;

  static LeafFilter all() { return {}; }
  static LeafFilter with_norm(long long n) { return {Kind::norm, n, 0}; }
  static LeafFilter with_trace_norm(long long t, long long n) { return {Kind::trace_norm, n, t}; }
};

struct EnumerationOptions {
  long long node_budget = 1'000'000'000;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct LatticeHit {
  Coords coords;
  double q;
};

// Every lattice vector passing `filter` with Q computed in double <= bound.
// No boundary handling; callers decide ties. Sorted lexicographically.
std::vector<LatticeHit> enumerate_raw(const PointPairForm& form, double bound, LeafFilter filter,
                                      const EnumerationOptions& opts = {});

// Exactly the vectors with Q(c) <= bound that pass `filter`, sorted
// lexicographically. Values within 1e-9 relative of the bound are decided at
// extended precision, ties counting as inside.
std::vector<Coords> enumerate_ellipsoid(const PointPairForm& form, double bound,
                                        LeafFilter filter, const EnumerationOptions& opts = {});

struct CountResult {
  double X = 0.0;
  long long count = 0;          // projective: #{x in R(1) : Q(x) <= X} / 2
  long long boundary_hits = 0;  // elements with |Q - X| within the tie band
  double elapsed = 0.0;         // seconds
};

// Relative width of the band around X in which Q is re-evaluated.
inline constexpr double kTieBand = 1e-9;

// N(X; z, w). Throws DomainError for X < 2.
CountResult count_lattice(const OrderBasis& basis, const UHPoint& z, const UHPoint& w, double X,
                          const EnumerationOptions& opts = {});

// N(X; z, w) at several X from a single enumeration at max X. Output follows
// the input order.
std::vector<CountResult> count_profile(const OrderBasis& basis, const UHPoint& z,
                                       const UHPoint& w, const std::vector<double>& Xs,
                                       const EnumerationOptions& opts = {});

// Number of projective group elements fixing z (1 unless z is elliptic).
long long stabilizer_order(const OrderBasis& basis, const UHPoint& z);

}  // namespace qlab
