#include "qlab/precision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "qlab/error.hpp"

namespace qlab {

namespace {

int read_precision_env() {
  const char* env = std::getenv("QLAB_PRECISION_BITS");
  if (env == nullptr || *env == '\0') return 128;
  char* end = nullptr;
  long bits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || bits < 64 || bits > 4096) {
    throw ConfigError("QLAB_PRECISION_BITS must be an integer in [64, 4096], got '" +
                      std::string(env) + "'");
  }
  return static_cast<int>(bits);
}

}  // namespace

int extended_precision_bits() {
  static const int bits = read_precision_env();
  return bits;
}

double tie_margin(int bits) {
  // Keep a third of the mantissa as guard against error accumulated in the
  // handful of products that make up a Frobenius norm.
  return std::ldexp(1.0, -(2 * bits) / 3);
}

BigFloat::BigFloat(int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& v, int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

namespace {
int wider(const BigFloat& x, const BigFloat& y) { return std::max(x.bits(), y.bits()); }
}  // namespace

BigFloat operator+(const BigFloat& x, const BigFloat& y) {
  BigFloat r(wider(x, y));
  mpfr_add(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& x, const BigFloat& y) {
  BigFloat r(wider(x, y));
  mpfr_sub(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& x, const BigFloat& y) {
  BigFloat r(wider(x, y));
  mpfr_mul(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& x, const BigFloat& y) {
  BigFloat r(wider(x, y));
  mpfr_div(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.bits());
  mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x.bits());
  mpfr_abs(r.v_, x.v_, MPFR_RNDN);
  return r;
}

}  // namespace qlab
