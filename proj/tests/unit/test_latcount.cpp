#include <random>

#include "doctest.h"
#include "qlab/error.hpp"
#include "qlab/latcount.hpp"
#include "support.hpp"

using namespace qlab;

namespace {

std::complex<long double> cl(const UHPoint& p) { return {p.x, p.y}; }

}  // namespace

TEST_CASE("counts agree with the box-search oracle at z = w = i") {
  const OrderBasis O = catalog_order(6);
  const UHPoint i(0, 1);
  const auto values = oracle::box_norm_one_values(oracle_lattice(6), cl(i), cl(i), 400.0L);
  // Integer and half-integer X sit exactly on values of Q at z = i.
  for (double X : {2.0, 3.5, 7.0, 10.0, 20.0, 33.3, 50.0, 88.5, 150.0, 222.2, 400.0}) {
    CAPTURE(X);
    CHECK(count_lattice(O, i, i, X).count == oracle::count_from_values(values, X));
  }
}

TEST_CASE("counts agree with the oracle at generic points on every catalog order") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> re(-0.7, 0.7), im(0.6, 1.8);
  for (long D : {6L, 10L, 15L, 22L}) {
    const OrderBasis O = catalog_order(D);
    const auto L = oracle_lattice(D);
    for (int k = 0; k < 2; ++k) {
      const UHPoint z(re(rng), im(rng)), w(re(rng), im(rng));
      const auto values = oracle::box_norm_one_values(L, cl(z), cl(w), 150.0L);
      for (double X : {2.5, 11.0, 47.0, 150.0}) {
        CAPTURE(D);
        CAPTURE(X);
        CHECK(count_lattice(O, z, w, X).count == oracle::count_from_values(values, X));
      }
    }
  }
}

TEST_CASE("N(2) and the elliptic point i of (3,-1)") {
  const OrderBasis O = catalog_order(6);
  CHECK(count_lattice(O, UHPoint(0.1234, 1.1), UHPoint(0.1234, 1.1), 2.0).count == 1);
  // W has norm 1 and trace 0 and fixes i, so the stabilizer of i has order 2.
  CHECK(count_lattice(O, UHPoint(0, 1), UHPoint(0, 1), 2.0).count == 2);
  CHECK(stabilizer_order(O, UHPoint(0, 1)) == 2);
  CHECK(stabilizer_order(O, UHPoint(0.31, 0.93)) == 1);
}

TEST_CASE("count is invariant under conjugating the order") {
  const OrderBasis O = catalog_order(6);
  const Algebra alg = O.algebra();
  const QuatElement u{alg, 1, 0, 1, 0};  // 1 + W, norm 2
  const QuatElement ui = u.inverse();
  std::array<QuatElement, 4> conj;
  for (int i = 0; i < 4; ++i) conj[i] = u * O.element(i) * ui;
  const OrderBasis O2(O.params(), conj);
  REQUIRE(verify_order(O2, 6).ok());

  const RealMatrix2 mu = embed(u);
  const RealMatrix2 mu_inv{mu.d, -mu.b, -mu.c, mu.a};  // adjugate, same Mobius map as the inverse
  const UHPoint z(0.2, 1.3), w(-0.4, 0.8);
  for (double X : {5.0, 60.0, 300.0}) {
    CHECK(count_lattice(O2, z, w, X).count ==
          count_lattice(O, mobius(mu_inv, z), mobius(mu_inv, w), X).count);
  }
}

TEST_CASE("symmetry, monotonicity and profile consistency") {
  const OrderBasis O = catalog_order(10);
  const UHPoint z(0.3, 0.9), w(-0.2, 1.4);
  std::vector<double> Xs{3, 10, 40, 90, 250, 600};
  const auto prof = count_profile(O, z, w, Xs);
  long long prev = 0;
  for (std::size_t k = 0; k < Xs.size(); ++k) {
    CHECK(prof[k].count == count_lattice(O, z, w, Xs[k]).count);
    CHECK(prof[k].count == count_lattice(O, w, z, Xs[k]).count);
    CHECK(prof[k].count >= prev);
    prev = prof[k].count;
  }
}

TEST_CASE("ties on the boundary count as inside") {
  const OrderBasis O = catalog_order(6);
  const UHPoint i(0, 1);
  // Q takes half-integer values at z = i; find one that is attained.
  const auto values = oracle::box_norm_one_values(oracle_lattice(6), cl(i), cl(i), 60.0L);
  const double attained = static_cast<double>(std::round(2 * values.back()) / 2);
  const CountResult r = count_lattice(O, i, i, attained);
  CHECK(r.boundary_hits > 0);
  CHECK(r.count == oracle::count_from_values(values, attained));
  CHECK(count_lattice(O, i, i, attained - 1e-6).count < r.count);
}

TEST_CASE("errors") {
  const OrderBasis O = catalog_order(6);
  const UHPoint i(0, 1);
  CHECK_THROWS_AS(count_lattice(O, i, i, 1.5), DomainError);
  EnumerationOptions tiny;
  tiny.node_budget = 10;
  tiny.workers = 1;
  CHECK_THROWS_AS(count_lattice(O, i, i, 1e5, tiny), ResourceError);
  Gram4 bad{};
  bad[0][0] = 1;
  CHECK_THROWS_AS(PointPairForm(O, i, i, bad), DomainError);
}

TEST_CASE("double and extended evaluation of the form agree") {
  const OrderBasis O = catalog_order(15);
  const PointPairForm f = point_pair_gram(O, UHPoint(0.25, 1.5), UHPoint(-1, 0.5));
  for (const Coords& c : {Coords{1, 0, 0, 0}, Coords{2, -1, 3, 1}, Coords{-5, 4, 2, -7}}) {
    const double q = f.evaluate(c);
    CHECK(f.evaluate_extended(c, 256).to_double() == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("multi-threaded enumeration matches single-threaded") {
  const OrderBasis O = catalog_order(22);
  const UHPoint z(0.1, 0.7);
  EnumerationOptions one, four;
  one.workers = 1;
  four.workers = 4;
  CHECK(count_lattice(O, z, z, 3000, one).count == count_lattice(O, z, z, 3000, four).count);
}
