#include <doctest.h>

#include "property_checks.hpp"

TEST_SUITE("properties") {
  TEST_CASE("spectral and dynamical invariants over random chains") {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto r = testing_support::check_properties(150, seed);
      CHECK(r.chains == 150);
      CHECK(r.orthogonality < 1e-10);
      CHECK(r.residual < 1e-10);
      CHECK(r.ordered);
      CHECK(r.row_sum < 1e-9);
      CHECK(r.initial_row < 1e-12);
      CHECK(r.group < 1e-10);
    }
  }
}
