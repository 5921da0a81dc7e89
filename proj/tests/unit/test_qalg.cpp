#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qlab/error.hpp"
#include "qlab/qalg.hpp"

using namespace qlab;

namespace {

QuatElement random_element(Algebra alg, std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<long> num(-range, range), den(1, 4);
  std::array<Rational, 4> x;
  for (auto& v : x) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
  }
  return {alg, x};
}

double residual(const RealMatrix2& m, const RealMatrix2& n) { return max_abs_entry(m - n); }

}  // namespace

TEST_CASE("generator relations") {
  const Algebra alg{3, -1};
  const auto one = QuatElement::basis(alg, 0), w = QuatElement::basis(alg, 1),
             W = QuatElement::basis(alg, 2), wW = QuatElement::basis(alg, 3);
  CHECK(w * w == QuatElement::scalar(alg, 3));
  CHECK(W * W == QuatElement::scalar(alg, -1));
  CHECK(w * W == wW);
  CHECK(W * w == -wW);
  CHECK(one * wW == wW);
  CHECK(wW * wW == QuatElement::scalar(alg, 3));  // -ab
}

TEST_CASE("norm and trace laws on random elements") {
  std::mt19937_64 rng(7);
  for (Algebra alg : {Algebra{3, -1}, Algebra{5, 2}, Algebra{11, 2}, Algebra{2, 5}}) {
    for (int i = 0; i < 200; ++i) {
      const auto p = random_element(alg, rng), q = random_element(alg, rng), r = random_element(alg, rng);
      CHECK((p * q) * r == p * (q * r));
      CHECK((p * q).reduced_norm() == p.reduced_norm() * q.reduced_norm());
      CHECK((p * q).conjugate() == q.conjugate() * p.conjugate());
      CHECK(p * p.conjugate() == QuatElement::scalar(alg, p.reduced_norm()));
      CHECK(p + p.conjugate() == QuatElement::scalar(alg, p.reduced_trace()));
      if (p.reduced_norm() != 0) CHECK(p * p.inverse() == QuatElement::scalar(alg, 1));
    }
  }
}

TEST_CASE("embedding is a homomorphism onto matrices with det = nrd") {
  const Algebra alg{3, -1};
  const double s = std::sqrt(3.0);
  const RealMatrix2 mw = embed(QuatElement::basis(alg, 1));
  CHECK(mw.a == doctest::Approx(-s));
  CHECK(mw.d == doctest::Approx(s));
  CHECK(mw.b == 0.0);
  CHECK(mw.c == 0.0);
  const RealMatrix2 mW = embed(QuatElement::basis(alg, 2));
  CHECK(mW.a == 0.0);
  CHECK(mW.b == 1.0);
  CHECK(mW.c == -1.0);
  CHECK(mW.d == 0.0);

  std::mt19937_64 rng(11);
  for (Algebra a2 : {Algebra{3, -1}, Algebra{5, 3}, Algebra{11, 2}}) {
    for (int i = 0; i < 300; ++i) {
      const auto p = random_element(a2, rng), q = random_element(a2, rng);
      const RealMatrix2 mp = embed(p), mq = embed(q);
      const double scale = 1.0 + max_abs_entry(mp) * max_abs_entry(mq);
      CHECK(residual(embed(p * q), mp * mq) <= 1e-12 * scale);
      CHECK(mp.det() == doctest::Approx(p.reduced_norm().get_d()).epsilon(1e-12).scale(scale));
      CHECK(mp.trace() == doctest::Approx(p.reduced_trace().get_d()).scale(scale));
    }
  }
}

TEST_CASE("extended-precision embedding agrees with double") {
  std::mt19937_64 rng(3);
  const Algebra alg{5, 2};
  for (int i = 0; i < 20; ++i) {
    const auto p = random_element(alg, rng);
    const BigMatrix2 big = embed(p, 200);
    const RealMatrix2 m = embed(p);
    CHECK(big.a.to_double() == doctest::Approx(m.a));
    CHECK(big.c.to_double() == doctest::Approx(m.c));
    CHECK(abs(big.det() - BigFloat(p.reduced_norm(), 200)).to_double() < 1e-50);
  }
}

TEST_CASE("hilbert symbol matches the solvability oracle") {
  std::vector<long> vals;
  for (long v = -15; v <= 15; ++v)
    if (v != 0 && is_squarefree(v)) vals.push_back(v);
  for (long p : {2L, 3L, 5L, 7L, 11L})
    for (long a : vals)
      for (long b : vals) {
        if (p == 11 && (std::abs(a) > 6 || std::abs(b) > 6)) continue;  // keep the oracle cheap
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(p);
        CHECK(hilbert_symbol(a, b, p) == oracle::hilbert(a, b, p));
      }
}

TEST_CASE("hilbert symbol rejects bad input") {
  CHECK_THROWS_AS(hilbert_symbol(3, -1, 4), DomainError);
  CHECK_THROWS_AS(hilbert_symbol(0, -1, 3), DomainError);
}

TEST_CASE("ramification of the catalog algebras") {
  auto check = [](long a, long b, std::vector<long> primes, long D) {
    const AlgebraParams ap = discriminant(a, b);
    CHECK(ap.ramified_primes == primes);
    CHECK(ap.D == D);
  };
  check(3, -1, {2, 3}, 6);
  check(5, 2, {2, 5}, 10);
  check(5, 3, {3, 5}, 15);
  check(11, 2, {2, 11}, 22);
  check(1, 7, {}, 1);  // split algebra
  CHECK_THROWS_AS(discriminant(-1, -1), DomainError);
  CHECK_THROWS_AS(discriminant(12, 5), DomainError);
}

TEST_CASE("zero divisors in a split algebra have no inverse") {
  const Algebra alg{1, 7};
  const QuatElement z{alg, 1, 1, 0, 0};  // (1 + w)(1 - w) = 0
  CHECK(z.reduced_norm() == 0);
  CHECK_THROWS_AS(z.inverse(), DomainError);
}

TEST_CASE("mixing algebras is a parameter error") {
  const auto p = QuatElement::basis({3, -1}, 1), q = QuatElement::basis({5, 2}, 1);
  CHECK_THROWS_AS(mul(p, q), ParameterError);
}
