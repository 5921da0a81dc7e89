#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace qlab {

// Extended-precision mantissa width used for boundary re-checks. Reads
// QLAB_PRECISION_BITS once; defaults to 128. Values below 64 are rejected.
int extended_precision_bits();

// Relative margin below which a re-evaluated candidate is treated as an
// exact tie at the given precision.
double tie_margin(int bits);

// Minimal value wrapper over an MPFR number with a fixed mantissa width.
// Binary operations produce a result at the wider of the two precisions.
class BigFloat {
 public:
  explicit BigFloat(int bits = 128);
  BigFloat(double v, int bits);
  BigFloat(const mpq_class& v, int bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 40) const;

  friend BigFloat operator+(const BigFloat& x, const BigFloat& y);
  friend BigFloat operator-(const BigFloat& x, const BigFloat& y);
  friend BigFloat operator*(const BigFloat& x, const BigFloat& y);
  friend BigFloat operator/(const BigFloat& x, const BigFloat& y);
  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& y) { return *this = *this + y; }
  BigFloat& operator-=(const BigFloat& y) { return *this = *this - y; }
  BigFloat& operator*=(const BigFloat& y) { return *this = *this * y; }

  friend bool operator<(const BigFloat& x, const BigFloat& y) { return mpfr_less_p(x.v_, y.v_); }
  friend bool operator>(const BigFloat& x, const BigFloat& y) { return mpfr_greater_p(x.v_, y.v_); }
  friend bool operator<=(const BigFloat& x, const BigFloat& y) { return mpfr_lessequal_p(x.v_, y.v_); }

  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat abs(const BigFloat& x);

  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace qlab
