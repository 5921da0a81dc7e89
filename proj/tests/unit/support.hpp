#pragma once

#include "oracles.hpp"
#include "qlab/orders.hpp"

// Catalog record of D as an oracle lattice (twice the rational coordinates).
inline oracle::Lattice oracle_lattice(long D) {
  for (const auto& rec : qlab::builtin_catalog()) {
    if (rec.D != D) continue;
    oracle::Lattice L{rec.a, rec.b, {}};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const qlab::Rational v = 2 * rec.basis[i][k];
        if (v.get_den() != 1) throw std::logic_error("catalog denominator exceeds 2");
        L.twice[i][k] = v.get_num().get_si();
      }
    return L;
  }
  throw std::logic_error("D not in catalog");
}
