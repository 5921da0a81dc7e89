#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qlab/cmpoints.hpp"
#include "qlab/error.hpp"

using namespace qlab;

TEST_CASE("kronecker symbol against the residue oracle") {
  for (long d = -200; d <= -3; ++d)
    for (long n : {2L, 3L, 5L, 7L, 11L, 13L, 23L, 6L, 15L, 22L, 45L}) {
      CAPTURE(d);
      CAPTURE(n);
      CHECK(kronecker(d, n) == oracle::kronecker(d, n));
    }
}

TEST_CASE("discriminant classification") {
  for (long d : {-3L, -4L, -7L, -8L, -15L, -20L, -24L, -84L, -163L}) CHECK(is_fundamental_discriminant(d));
  for (long d : {-12L, -16L, -27L, -28L, -36L, -5L, -6L}) CHECK_FALSE(is_fundamental_discriminant(d));
  CHECK(is_discriminant(-12));
  CHECK_FALSE(is_discriminant(-5));
  CHECK_FALSE(is_discriminant(9));
}

TEST_CASE("embedding criterion for D = 6") {
  CHECK(embedding_criterion(6, -24));
  CHECK(embedding_criterion(6, -4));  // (-4|2) = 0, (-4|3) = -1
  CHECK_FALSE(embedding_criterion(6, -23));  // -23 = 1 mod 8
  for (long d = -300; d < 0; ++d) {
    if (!is_discriminant(d)) continue;
    const bool expect = oracle::kronecker(d, 2) != 1 && oracle::kronecker(d, 3) != 1;
    CHECK(embedding_criterion(6, d) == expect);
  }
  CHECK_THROWS_AS(embedding_criterion(6, 5), DomainError);
  CHECK_THROWS_AS(embedding_criterion(6, -5), DomainError);
}

TEST_CASE("class numbers from reduced forms match Dirichlet's formula") {
  CHECK(class_number_forms(-4) == 1);
  CHECK(class_number_forms(-23) == 3);
  CHECK(class_number_forms(-3) == 1);
  for (long d = -3; d >= -1000; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    CAPTURE(d);
    CHECK(class_number_forms(d) == oracle::class_number(d));
  }
  CHECK(class_number_forms(-12) == 1);  // non-fundamental: forms (1,0,3) only
  CHECK(class_number_forms(-16) == 1);
}

TEST_CASE("Eichler formula") {
  CHECK(eichler_class_number_oracle(6, -23) == 0);
  CHECK(eichler_class_number_oracle(6, -24) == 2);  // h = 2, both primes ramify in Q(sqrt -6)
  CHECK(eichler_class_number_oracle(6, -4) == 2);   // h = 1, factors 1 and 2
  CHECK_THROWS_AS(eichler_class_number_oracle(6, -12), DomainError);
}

TEST_CASE("fixed points of elliptic elements") {
  const Algebra alg{3, -1};
  CHECK(fixed_point(QuatElement::basis(alg, 2)) == UHPoint(0, 1));  // W is a rotation about i
  CHECK_THROWS_AS(fixed_point(QuatElement::basis(alg, 1)), DomainError);  // w is hyperbolic

  const OrderBasis O = catalog_order(6);
  for (long d : {-3L, -4L, -19L, -24L, -40L}) {
    const auto cands = cm_candidates(O, d, UHPoint(0, 1), 2.0);
    REQUIRE(!cands.empty());
    for (const auto& p : cands) {
      const QuatElement x = O.from_coords(p.rep);
      CHECK(p.t * p.t - 4 * p.n == d);
      CHECK(x.reduced_trace() == p.t);
      CHECK(x.reduced_norm() == p.n);
      CHECK(p.point.y > 0);
      CHECK(fixed_point_residual(x, p.point) <= 1e-10);
      // Independent Mobius check in long double.
      const RealMatrix2 m = embed(x);
      const std::complex<long double> z(p.point.x, p.point.y);
      CHECK(static_cast<double>(std::abs(oracle::mobius({m.a, m.b, m.c, m.d}, z) - z)) <= 1e-10);
      // x and t - x share the fixed point.
      const UHPoint q = fixed_point(QuatElement::scalar(alg, p.t) - x);
      CHECK(hyperbolic_distance(q, p.point) <= 1e-10);
    }
  }
}

TEST_CASE("ball criterion identity") {
  // Synthetic: sqrt(n) sigma_w rot(theta) sigma_w^{-1} has trace t and fixes w.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> re(-1, 1), im(0.4, 2.5);
  for (int k = 0; k < 100; ++k) {
    const UHPoint w(re(rng), im(rng)), z0(re(rng), im(rng));
    const double n = 1 + k % 7, t = (k % 3) - 1.0;
    const double c = t / (2 * std::sqrt(n)), s = std::sqrt(1 - c * c);
    const RealMatrix2 rot{c, -s, s, c};
    RealMatrix2 m = sigma(w) * rot * sigma_inverse(w);
    m = {m.a * std::sqrt(n), m.b * std::sqrt(n), m.c * std::sqrt(n), m.d * std::sqrt(n)};
    const double q = (sigma_inverse(z0) * m * sigma(z0)).frobenius_sq();
    const double d = t * t - 4 * n;
    CHECK(q == doctest::Approx(t * t / 2 - d / 2 * std::cosh(2 * hyperbolic_distance(z0, w))).epsilon(1e-9));
  }
  // On order elements.
  const OrderBasis O = catalog_order(6);
  const UHPoint z0(0.05, 1.1);
  const PointPairForm f = point_pair_gram(O, z0, z0);
  for (const auto& p : cm_candidates(O, -19, z0, 2.5)) {
    const double expect = 0.5 * p.t * p.t + 0.5 * 19 * std::cosh(2 * hyperbolic_distance(z0, p.point));
    CHECK(f.evaluate(p.rep) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("reduction merges constructed duplicates") {
  const OrderBasis O = catalog_order(6);
  const auto cands = cm_candidates(O, -24, UHPoint(0, 1), 1.5);
  REQUIRE(!cands.empty());
  const CMPoint p = cands.front();
  const QuatElement x = O.from_coords(p.rep);
  const QuatElement g{O.algebra(), 2, 1, 0, 0};  // 2 + w, norm 1
  REQUIRE(g.reduced_norm() == 1);
  REQUIRE(O.contains(g));
  CMPoint q = p;
  q.rep = *O.integer_coords_of(g * x * g.conjugate());
  q.point = fixed_point(O.from_coords(q.rep));
  CHECK(gamma_equivalent(O, p, q));
  CHECK(gamma_equivalent(O, q, p));
  CHECK(reduce_mod_gamma(O, {p, q}).h == 1);
}

TEST_CASE("class numbers on D = 6 match the Eichler formula") {
  const OrderBasis O = catalog_order(6);
  for (long d : {-3L, -4L, -19L, -24L, -40L}) {
    CAPTURE(d);
    const CMPointSet set = compute_cm_points(O, d);
    CHECK(set.h == eichler_class_number_oracle(6, d));
    for (std::size_t i = 0; i < set.points.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(gamma_equivalent(O, set.points[i], set.points[j]));
    // Radius stability past the accepted radius.
    const auto wider = reduce_mod_gamma(O, cm_candidates(O, d, UHPoint(0, 1), set.radius + 1.0));
    CHECK(wider.h == set.h);
  }
  CHECK(compute_cm_points(O, -23).h == 0);
}

TEST_CASE("discrete averages") {
  const OrderBasis O = catalog_order(6);
  const CMPointSet set = compute_cm_points(O, -24);
  const DiscreteAverage zero = discrete_average(O, set, UHPoint(0, 1), radial_kernel(HardDisc{2.0}));
  CHECK(zero.average == 0.0);
  CHECK(zero.integral == 0.0);
  CHECK(zero.discrepancy == 0.0);
  const UHPoint z = set.points.front().point;
  const double X = 300;
  CHECK(automorphic_kernel_sum(O, radial_kernel(HardDisc{X}), z, z) ==
        static_cast<double>(count_lattice(O, z, z, X).count));
  const DiscreteAverage a = discrete_average(O, set, UHPoint(0.1, 0.9), radial_kernel(HardDisc{X}));
  CHECK(a.integral == doctest::Approx(M_PI * (X - 2) / shimura_volume(6)));
  CHECK(a.discrepancy == doctest::Approx(std::abs(a.average - a.integral)));
}

TEST_CASE("json export") {
  const OrderBasis O = catalog_order(6);
  const std::string j = cm_to_json(compute_cm_points(O, -4));
  CHECK(j.find("\"D\": 6") != std::string::npos);
  CHECK(j.find("\"h\": 2") != std::string::npos);
  CHECK(j.find("\"rep\"") != std::string::npos);
}
