#include <cmath>

#include "doctest.h"
#include "qlab/precision.hpp"

using namespace qlab;

TEST_CASE("extended precision defaults and arithmetic") {
  CHECK(extended_precision_bits() >= 64);
  CHECK(tie_margin(128) == std::ldexp(1.0, -85));
  const BigFloat a(2.0, 200), b(3.0, 200);
  CHECK(abs((a * b) - BigFloat(6.0, 200)).to_double() == 0.0);
  const BigFloat r = sqrt(BigFloat(2.0, 200));
  CHECK(abs(r * r - a).to_double() < 1e-58);
  CHECK(BigFloat(mpq_class(1, 3), 200).to_double() == doctest::Approx(1.0 / 3.0));
  CHECK(a < b);
  CHECK(b > a);
  CHECK((-a).to_double() == -2.0);
  CHECK((b / a).to_double() == 1.5);
}
