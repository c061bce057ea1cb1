#include "doctest.h"
#include "support/fixtures.hpp"

using namespace qvertex;

TEST_CASE("parameter count") {
  CHECK(parameter_count(3, 3, 3) == 9);
  CHECK(parameter_count(5, 3, 4) == 20);
  CHECK(parameter_count(2, 2, 0) == 0);
  CHECK(parameter_count(2, 0, 2) == 0);
  CHECK_THROWS_AS(parameter_count(3, 1, 1), Error);
  CHECK_THROWS_AS(parameter_count(3, 4, 3), Error);
  CHECK_THROWS_AS(parameter_count(0, 0, 0), Error);
}

TEST_CASE("projector range parameters") {
  CHECK(delta_parameters(3, 2, 2) == 6);
  CHECK(delta_parameters(5, 3, 4) == 16);
  CHECK(delta_parameters(4, 4, 4) == 0);
  try {
    delta_parameters(4, 1, 2);
    FAIL("expected InvalidRankPair");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidRankPair);
  }
}

TEST_CASE("subfamily count matches enumeration") {
  CHECK(subfamily_count(1) == 3);
  CHECK(subfamily_count(3) == 10);
  CHECK(subfamily_count(5) == 21);
  for (std::int64_t n = 1; n <= 12; ++n) {
    std::int64_t brute = 0;
    for (std::int64_t ra = 0; ra <= n; ++ra)
      for (std::int64_t rb = 0; rb <= n; ++rb) brute += ra + rb >= n ? 1 : 0;
    CHECK(subfamily_count(n) == brute);
  }
}

TEST_CASE("counting identities") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    CHECK(parameter_count(n, n, n) == n * n);
    for (std::int64_t ra = 0; ra <= n; ++ra)
      for (std::int64_t rb = n - ra; rb <= n; ++rb) {
        const std::int64_t m = ra + rb - n;
        // Lambda is a Hermitian m x m operator on the range of C.
        CHECK(parameter_count(n, ra, rb) == m * m + delta_parameters(n, ra, rb));
        CHECK(parameter_count(n, ra, rb) == parameter_count(n, rb, ra));
      }
  }
}
