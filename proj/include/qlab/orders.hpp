#pragma once

// Maximal orders O(D,1) as rank-4 lattices in (a,b/Q): catalog I/O and
// certification.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/qalg.hpp"

namespace qlab {

using Coords = std::array<long, 4>;

class OrderBasis {
 public:
  // Throws DomainError if the four elements are linearly dependent or do not
  // share `params.algebra`.
  OrderBasis(AlgebraParams params, std::array<QuatElement, 4> elements);

  const AlgebraParams& params() const { return params_; }
  const Algebra& algebra() const { return params_.algebra; }
  long D() const { return params_.D; }
  const QuatElement& element(int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::array<QuatElement, 4>& elements() const { return e_; }

  // Entries reduced_trace(e_i * conj(e_j)); nrd(sum c_i e_i) = c^T G c / 2.
  const std::array<std::array<Rational, 4>, 4>& trace_gram() const { return trace_gram_; }

  // Integer copies of the trace form and of reduced_trace(e_i). Only valid
  // when `integral()`; the enumeration fast paths rely on them.
  bool integral() const { return integral_; }
  const std::array<std::array<long, 4>, 4>& trace_gram_int() const { return trace_gram_int_; }
  const std::array<long, 4>& traces_int() const { return traces_int_; }
  bool first_is_one() const { return first_is_one_; }

  QuatElement from_coords(const Coords& c) const;
  // Coordinates of q in this basis (rational in general).
  std::array<Rational, 4> coords_of(const QuatElement& q) const;
  // True iff q lies in the lattice (all coordinates integral).
  bool contains(const QuatElement& q) const;
  // Exact integer coordinates; std::nullopt if q is not in the lattice.
  std::optional<Coords> integer_coords_of(const QuatElement& q) const;

  // Exact reduced norm / trace of sum c_i e_i using the integer forms.
  long long norm_of(const Coords& c) const;
  long long trace_of(const Coords& c) const;

 private:
  AlgebraParams params_;
  std::array<QuatElement, 4> e_;
  std::array<std::array<Rational, 4>, 4> trace_gram_;
  std::array<std::array<Rational, 4>, 4> inverse_;  // row i: coords of basis vector i
  std::array<std::array<long, 4>, 4> trace_gram_int_{};
  std::array<long, 4> traces_int_{};
  bool integral_ = false;
  bool first_is_one_ = false;
};

struct VerificationReport {
  bool contains_one = false;
  bool multiplicatively_closed = false;
  bool integral_traces_norms = false;
  bool discriminant_equals_D = false;
  Rational trace_gram_det;                  // det of the trace Gram matrix
  std::optional<long> reduced_discriminant;  // sqrt|det| when it is an integer

  bool ok() const {
    return contains_one && multiplicatively_closed && integral_traces_norms &&
           discriminant_equals_D;
  }
};

VerificationReport verify_order(const OrderBasis& basis, long D);

// One record of the plain-text order catalog:
//   D;a;b;n/d,n/d,... (16 rationals: e1..e4, four coordinates each)
struct CatalogRecord {
  long D = 0;
  long a = 0;
  long b = 0;
  std::array<std::array<Rational, 4>, 4> basis;
};

std::vector<CatalogRecord> parse_catalog(std::string_view text);
std::string format_catalog_record(const CatalogRecord& rec);
std::vector<CatalogRecord> load_catalog_file(const std::string& path);

// The catalog compiled into the library.
const std::vector<CatalogRecord>& builtin_catalog();
std::vector<long> catalog_discriminants();

// Builds and certifies a record; throws ConsistencyError if verify_order fails.
OrderBasis order_from_record(const CatalogRecord& rec);

// Maximal order for D from the built-in catalog, certified by verify_order.
// Level other than 1 and unknown D raise DomainError.
OrderBasis catalog_order(long D, int level = 1);

// Hyperbolic area of X(D,1) for the projective group: (pi/3) prod_{p|D} (p-1).
double shimura_volume(long D);

}  // namespace qlab
