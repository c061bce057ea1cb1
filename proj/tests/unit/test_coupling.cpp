#include "doctest.h"
#include "support/fixtures.hpp"

using namespace qvertex;
using namespace qvertex::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no qvertex::Error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("validate accepts Dirichlet and Neumann") {
  const auto d = dirichlet(2);
  CHECK(d.rank_A() == 2);
  CHECK(d.rank_B() == 0);
  const auto n = neumann(2);
  CHECK(n.rank_A() == 0);
  CHECK(n.rank_B() == 2);
}

TEST_CASE("validate rejects inadmissible pairs") {
  CHECK(kind_of([] { validate<double>(from_rows({{1.0, 1.0}, {0.0, 1.0}}), identity<double>(2)); }) ==
        ErrorKind::NotSelfAdjoint);
  CHECK(kind_of([] { validate<double>(from_rows({{1.0, 0.0}, {0.0, 0.0}}), zeros<double>(2, 2)); }) ==
        ErrorKind::RankDeficient);
  CHECK(kind_of([] { validate<double>(identity<double>(2), zeros<double>(3, 3)); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { validate<double>(zeros<double>(0, 0), zeros<double>(0, 0)); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("to_unitary") {
  CHECK(max_abs(to_unitary(dirichlet(3)).U + identity<double>(3)) < 1e-15);
  CHECK(max_abs(to_unitary(neumann(3)).U - identity<double>(3)) < 1e-15);
  // -(A+iB)^{-1}(A-iB) for A = (1 -1; 0 0), B = (0 0; 1 1), worked by hand.
  CHECK(max_abs(to_unitary(kirchhoff(2)).U - from_rows({{0.0, 1.0}, {1.0, 0.0}})) < 1e-15);
}

TEST_CASE("from_unitary") {
  const auto d = from_unitary<double>({-identity<double>(2)});
  CHECK(max_abs(d.A() + 2.0 * identity<double>(2)) == 0.0);
  CHECK(max_abs(d.B()) == 0.0);
  CHECK(d.rank_B() == 0);

  const auto n = from_unitary<double>({identity<double>(2)});
  CHECK(max_abs(n.A()) == 0.0);
  CHECK(max_abs(n.B() - 2.0 * I * identity<double>(2)) == 0.0);
  CHECK(n.rank_A() == 0);

  const auto swap = from_unitary<double>({from_rows({{0.0, 1.0}, {1.0, 0.0}})});
  CHECK(s_distance(swap, kirchhoff(2)) < 1e-12);

  CHECK(kind_of([] { from_unitary<double>({from_rows({{1.0, 1.0}, {0.0, 1.0}})}); }) == ErrorKind::NotUnitary);
}

TEST_CASE("unitary round trip preserves S(k)") {
  CouplingGenerator gen(101);
  for (const auto& [n, ra, rb] : rank_triples(1, 4)) {
    const auto c = gen.coupling(n, ra, rb);
    CHECK(c.rank_A() == ra);
    CHECK(c.rank_B() == rb);
    const auto u = to_unitary(c);
    CHECK(unitarity_defect(u.U) < 1e-12);
    CHECK(s_distance(c, from_unitary(u)) < 1e-10);
  }
}

TEST_CASE("A + ikB is invertible for valid couplings") {
  CouplingGenerator gen(5);
  for (const auto& [n, ra, rb] : rank_triples(1, 5)) {
    const auto c = gen.coupling(n, ra, rb);
    for (double k : {1e-3, 0.5, 1.0, 7.0, 1e3}) {
      const Matrix m = c.A() + std::complex<double>(0.0, k) * c.B();
      CHECK(rank(m) == n);
    }
  }
}

TEST_CASE("boundary-condition equivalence under left multiplication and scaling") {
  CouplingGenerator gen(17);
  for (const auto& [n, ra, rb] : rank_triples(1, 4)) {
    const auto c = gen.coupling(n, ra, rb);
    const Matrix g = gen.well_conditioned(n);
    const auto lhs = validate<double>(Matrix(g * c.A()), Matrix(g * c.B()));
    CHECK(s_distance(c, lhs) < 1e-10);
    const auto z = gen.complex_scalar();
    const auto scaled = validate<double>(Matrix(z * c.A()), Matrix(z * c.B()));
    CHECK(s_distance(c, scaled) < 1e-10);
    CHECK(scaled.rank_A() == ra);
    CHECK(scaled.rank_B() == rb);
  }
}

TEST_CASE("eigenprojectors of U cluster the -1 and +1 eigenvalues") {
  CouplingGenerator gen(23);
  for (const auto& [n, ra, rb] : rank_triples(1, 5)) {
    const Matrix u = gen.unitary_with_ranks(n, ra, rb);
    const auto ep = unitary_eigenprojectors<double>({u});
    CHECK(std::abs(ep.minus_one.trace().real() - double(n - rb)) < 1e-10);
    CHECK(std::abs(ep.plus_one.trace().real() - double(n - ra)) < 1e-10);
    CHECK(max_abs(Matrix(u * ep.minus_one + ep.minus_one)) < 1e-10);
    CHECK(max_abs(Matrix(u * ep.plus_one - ep.plus_one)) < 1e-10);
  }
}
