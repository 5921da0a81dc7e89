#pragma once

// Exact arithmetic in an indefinite rational quaternion algebra (a,b/Q)
// with basis {1, w, W, wW}, w^2 = a, W^2 = b, wW = -Ww, and its embedding
// into 2x2 real matrices.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qlab/precision.hpp"

namespace qlab {

using Rational = mpq_class;

// The pair (a,b) defining the algebra. Value type; cheap to copy.
struct Algebra {
  long a = 0;
  long b = 0;
  friend bool operator==(const Algebra&, const Algebra&) = default;
};

struct AlgebraParams {
  Algebra algebra;
  std::vector<long> ramified_primes;  // ascending
  long D = 1;                         // product of ramified primes
};

bool is_prime(long n);
bool is_squarefree(long n);
std::vector<long> prime_factors(long n);  // distinct, ascending, of |n|

// Hilbert symbol (a,b)_p in {+1,-1}. Throws DomainError if p is not prime
// or a,b is zero.
int hilbert_symbol(long a, long b, long p);

// Ramification data of (a,b/Q). Requires a > 0 and a,b square-free.
// Throws ConsistencyError if the ramified set has odd size.
AlgebraParams discriminant(long a, long b);

class QuatElement {
 public:
  QuatElement() = default;
  QuatElement(Algebra alg, Rational x0, Rational x1, Rational x2, Rational x3);
  QuatElement(Algebra alg, const std::array<Rational, 4>& x);

  static QuatElement scalar(Algebra alg, const Rational& s);
  static QuatElement basis(Algebra alg, int i);  // 0:1 1:w 2:W 3:wW

  const Algebra& algebra() const { return alg_; }
  const Rational& operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }
  const std::array<Rational, 4>& coords() const { return x_; }

  QuatElement conjugate() const;
  Rational reduced_trace() const;
  Rational reduced_norm() const;
  bool is_scalar() const;
  bool is_integral_coords() const;  // all four coordinates in Z

  QuatElement operator-() const;
  friend QuatElement operator+(const QuatElement& p, const QuatElement& q);
  friend QuatElement operator-(const QuatElement& p, const QuatElement& q);
  friend QuatElement operator*(const QuatElement& p, const QuatElement& q);
  friend QuatElement operator*(const Rational& s, const QuatElement& q);
  friend bool operator==(const QuatElement& p, const QuatElement& q) {
    return p.alg_ == q.alg_ && p.x_ == q.x_;
  }

  // Multiplicative inverse; throws DomainError on a zero divisor.
  QuatElement inverse() const;

  std::string to_string() const;

 private:
  Algebra alg_;
  std::array<Rational, 4> x_;
};

// Throws ParameterError when the algebras differ.
QuatElement mul(const QuatElement& p, const QuatElement& q);

template <class T>
struct Matrix2 {
  T a, b, c, d;  // [[a, b], [c, d]]

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }
  T frobenius_sq() const { return a * a + b * b + c * c + d * d; }

  friend Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
            m.c * n.b + m.d * n.d};
  }
  friend Matrix2 operator-(const Matrix2& m, const Matrix2& n) {
    return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
  }
};

using RealMatrix2 = Matrix2<double>;
using BigMatrix2 = Matrix2<BigFloat>;

inline double max_abs_entry(const RealMatrix2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

// x = xi + eta W with xi = x0 + x1 w, eta = x2 + x3 w, sqrt(a) > 0:
//   phi(x) = [[xi', eta'], [b eta, xi]]   (' = Galois conjugate, sqrt(a) -> -sqrt(a))
// so that phi(w) = diag(-sqrt a, sqrt a), phi(W) = [[0,1],[b,0]], and phi is an
// algebra homomorphism with det = reduced norm, trace = reduced trace.
RealMatrix2 embed(const QuatElement& q);
BigMatrix2 embed(const QuatElement& q, int bits);

}  // namespace qlab
