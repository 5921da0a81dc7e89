#include "qlab/qalg.hpp"

#include <sstream>

#include "qlab/error.hpp"

namespace qlab {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

bool is_squarefree(long n) {
  if (n == 0) return false;
  long m = n < 0 ? -n : n;
  for (long f = 2; f * f <= m; ++f) {
    if (m % (f * f) == 0) return false;
    if (m % f == 0) m /= f;
  }
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  long m = n < 0 ? -n : n;
  for (long f = 2; f * f <= m; ++f) {
    if (m % f == 0) {
      out.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

namespace {

long mod(long x, long m) {
  long r = x % m;
  return r < 0 ? r + m : r;
}

// Legendre symbol (u/p) for odd prime p and u prime to p, via Euler's criterion.
int legendre(long u, long p) {
  long base = mod(u, p);
  long e = (p - 1) / 2;
  __int128 result = 1, b = base;
  while (e > 0) {
    if (e & 1) result = (result * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

int strip(long& x, long p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

int hilbert_symbol(long a, long b, long p) {
  if (a == 0 || b == 0) throw DomainError("hilbert_symbol: arguments must be nonzero");
  if (!is_prime(p)) throw DomainError("hilbert_symbol: " + std::to_string(p) + " is not prime");
  long u = a, v = b;
  int alpha = strip(u, p);
  int beta = strip(v, p);
  if (p != 2) {
    int sign = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
    if (beta % 2 == 1) sign *= legendre(u, p);
    if (alpha % 2 == 1) sign *= legendre(v, p);
    return sign;
  }
  auto eps = [](long x) { return mod(x, 4) == 3 ? 1 : 0; };
  auto omega = [](long x) {
    long r = mod(x, 8);
    return (r == 3 || r == 5) ? 1 : 0;
  };
  int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
  return e % 2 == 0 ? 1 : -1;
}

AlgebraParams discriminant(long a, long b) {
  if (a <= 0) throw DomainError("discriminant: a must be positive (indefinite case)");
  if (!is_squarefree(a) || !is_squarefree(b))
    throw DomainError("discriminant: a and b must be square-free");
  std::vector<long> candidates{2};
  for (long p : prime_factors(a)) candidates.push_back(p);
  for (long p : prime_factors(b)) candidates.push_back(p);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  AlgebraParams params{{a, b}, {}, 1};
  for (long p : candidates) {
    if (hilbert_symbol(a, b, p) == -1) {
      params.ramified_primes.push_back(p);
      params.D *= p;
    }
  }
  if (params.ramified_primes.size() % 2 != 0)
    throw ConsistencyError("discriminant: odd number of ramified primes for (" +
                           std::to_string(a) + "," + std::to_string(b) + ")");
  return params;
}

QuatElement::QuatElement(Algebra alg, Rational x0, Rational x1, Rational x2, Rational x3)
    : alg_(alg), x_{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {
  for (auto& c : x_) c.canonicalize();
}

QuatElement::QuatElement(Algebra alg, const std::array<Rational, 4>& x) : alg_(alg), x_(x) {
  for (auto& c : x_) c.canonicalize();
}

QuatElement QuatElement::scalar(Algebra alg, const Rational& s) { return {alg, s, 0, 0, 0}; }

QuatElement QuatElement::basis(Algebra alg, int i) {
  std::array<Rational, 4> x{0, 0, 0, 0};
  x.at(static_cast<std::size_t>(i)) = 1;
  return {alg, x};
}

QuatElement QuatElement::conjugate() const { return {alg_, x_[0], -x_[1], -x_[2], -x_[3]}; }

Rational QuatElement::reduced_trace() const { return 2 * x_[0]; }

Rational QuatElement::reduced_norm() const {
  const Rational a = alg_.a, b = alg_.b;
  Rational n = x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] + a * b * x_[3] * x_[3];
  return n;
}

bool QuatElement::is_scalar() const { return x_[1] == 0 && x_[2] == 0 && x_[3] == 0; }

bool QuatElement::is_integral_coords() const {
  for (const auto& c : x_)
    if (c.get_den() != 1) return false;
  return true;
}

QuatElement QuatElement::operator-() const { return {alg_, -x_[0], -x_[1], -x_[2], -x_[3]}; }

namespace {
void require_same(const QuatElement& p, const QuatElement& q) {
  if (!(p.algebra() == q.algebra()))
    throw ParameterError("quaternion operands belong to different algebras");
}
}  // namespace

QuatElement operator+(const QuatElement& p, const QuatElement& q) {
  require_same(p, q);
  return {p.alg_, p.x_[0] + q.x_[0], p.x_[1] + q.x_[1], p.x_[2] + q.x_[2], p.x_[3] + q.x_[3]};
}

QuatElement operator-(const QuatElement& p, const QuatElement& q) { return p + (-q); }

QuatElement operator*(const Rational& s, const QuatElement& q) {
  return {q.alg_, s * q.x_[0], s * q.x_[1], s * q.x_[2], s * q.x_[3]};
}

// w^2 = a, W^2 = b, (wW)^2 = -ab, wW = -Ww, w(wW) = aW, (wW)w = -aW,
// W(wW) = -bw, (wW)W = bw.
QuatElement operator*(const QuatElement& p, const QuatElement& q) {
  require_same(p, q);
  const Rational a = p.alg_.a, b = p.alg_.b;
  const auto& x = p.x_;
  const auto& y = q.x_;
  return {p.alg_,
          x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
          x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
          x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
          x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
}

QuatElement mul(const QuatElement& p, const QuatElement& q) { return p * q; }

QuatElement QuatElement::inverse() const {
  Rational n = reduced_norm();
  if (n == 0) throw DomainError("inverse of a zero divisor");
  return Rational(1 / n) * conjugate();
}

std::string QuatElement::to_string() const {
  std::ostringstream os;
  os << x_[0] << " + " << x_[1] << "*w + " << x_[2] << "*W + " << x_[3] << "*wW";
  return os.str();
}

RealMatrix2 embed(const QuatElement& q) {
  const double s = std::sqrt(static_cast<double>(q.algebra().a));
  const double b = static_cast<double>(q.algebra().b);
  const double x0 = q[0].get_d(), x1 = q[1].get_d(), x2 = q[2].get_d(), x3 = q[3].get_d();
  return {x0 - x1 * s, x2 - x3 * s, b * (x2 + x3 * s), x0 + x1 * s};
}

BigMatrix2 embed(const QuatElement& q, int bits) {
  const BigFloat s = sqrt(BigFloat(static_cast<double>(q.algebra().a), bits));
  const BigFloat b(static_cast<double>(q.algebra().b), bits);
  const BigFloat x0(q[0], bits), x1(q[1], bits), x2(q[2], bits), x3(q[3], bits);
  return {x0 - x1 * s, x2 - x3 * s, b * (x2 + x3 * s), x0 + x1 * s};
}

}  // namespace qlab
