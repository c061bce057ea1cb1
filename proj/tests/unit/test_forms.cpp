#include "doctest.h"
#include "support/fixtures.hpp"

using namespace qvertex;
using namespace qvertex::testing;

namespace {

const std::vector<double> kRoundTripGrid{0.1, 1.0, 10.0};

bool is_identity(const Permutation& p) {
  for (Index i = 0; i < p.size(); ++i)
    if (p.indices()(i) != i) return false;
  return true;
}

}  // namespace

TEST_CASE("ST-form of the trivial couplings") {
  const auto neu = to_st_form(neumann(3));
  CHECK(neu.rank_B == 3);
  CHECK(neu.T.rows() == 3);
  CHECK(neu.T.cols() == 0);
  CHECK(max_abs(neu.S) < 1e-15);

  const auto dir = to_st_form(dirichlet(3));
  CHECK(dir.rank_B == 0);
  CHECK(dir.S.size() == 0);
  CHECK(dir.T.rows() == 0);
  CHECK(dir.T.cols() == 3);
  CHECK(s_distance(st_to_matrices(dir), dirichlet(3)) < 1e-12);
}

TEST_CASE("ST-form of delta and Kirchhoff couplings") {
  for (double alpha : {-1.5, 0.0, 2.0, 7.0}) {
    const auto c = delta2(alpha);
    const auto st = to_st_form(c);
    REQUIRE(st.rank_B == 1);
    CHECK(is_identity(st.perm));
    CHECK(std::abs(st.S(0, 0) - alpha) < 1e-12);
    CHECK(std::abs(st.T(0, 0) - 1.0) < 1e-12);
    CHECK(s_distance(st_to_matrices(st), c) < 1e-10);
  }
  const auto kir = to_st_form(kirchhoff(3));
  REQUIRE(kir.rank_B == 1);
  CHECK(max_abs(kir.S) < 1e-14);
  CHECK(max_abs(kir.T - from_rows({{1.0, 1.0}})) < 1e-14);
}

TEST_CASE("ST permutation takes the earliest independent columns of B") {
  // B has a zero first column, so edge 2 (index 1) leads.
  const Matrix b = from_rows({{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
  const Matrix a = from_rows({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}});
  const auto c = validate<double>(a, b);
  const auto st = to_st_form(c);
  CHECK(st.perm.indices()(0) == 1);
  CHECK(st.perm.indices()(1) == 0);
  CHECK(st.perm.indices()(2) == 2);
  CHECK(s_distance(st_to_matrices(st), c) < 1e-12);
}

TEST_CASE("reverse ST-form") {
  const auto dir = to_reverse_st_form(dirichlet(3));
  CHECK(dir.rank_A == 3);
  CHECK(max_abs(dir.S) < 1e-15);
  CHECK(dir.T.cols() == 0);

  const auto neu = to_reverse_st_form(neumann(3));
  CHECK(neu.rank_A == 0);
  CHECK(neu.S.size() == 0);
  CHECK(s_distance(reverse_st_to_matrices(neu), neumann(3)) < 1e-12);

  for (double alpha : {-3.0, 0.5, 2.0}) {
    const auto c = delta2(alpha);
    const auto rev = to_reverse_st_form(c);
    CHECK(rev.rank_A == 2);
    CHECK(is_hermitian(rev.S, 1e-12));
    CHECK(s_distance(reverse_st_to_matrices(rev), c) < 1e-10);
  }
}

TEST_CASE("PQRS-form of Dirichlet degenerates to the bottom identity") {
  const auto f = to_pqrs_form(dirichlet(2));
  CHECK(f.rank_A == 2);
  CHECK(f.rank_B == 0);
  CHECK(f.P.rows() == 0);
  CHECK(f.P.cols() == 2);
  CHECK(f.Q.rows() == 0);
  CHECK(f.Q.cols() == 2);
  CHECK(f.R.size() == 0);
  CHECK(f.S.size() == 0);

  PQRSForm<double> hand;
  hand.n = 2;
  hand.rank_A = 2;
  hand.rank_B = 0;
  hand.perm = identity_permutation(2);
  hand.P = zeros<double>(0, 2);
  hand.Q = zeros<double>(0, 2);
  hand.R = zeros<double>(0, 0);
  hand.S = zeros<double>(0, 0);
  CHECK(s_distance(pqrs_to_matrices(hand), dirichlet(2)) < 1e-14);
}

TEST_CASE("PQRS-form of the delta coupling") {
  for (double alpha : {-2.0, 1.0, 2.0}) {
    const auto f = to_pqrs_form(delta2(alpha));
    REQUIRE(f.overlap() == 1);
    CHECK(std::abs(f.P(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(f.S(0, 0) - alpha) < 1e-12);
    CHECK(f.Q.rows() == 0);
    CHECK(f.R.rows() == 0);

    PQRSForm<double> hand;
    hand.n = 2;
    hand.rank_A = 2;
    hand.rank_B = 1;
    hand.perm = identity_permutation(2);
    hand.P = from_rows({{1.0}});
    hand.Q = zeros<double>(0, 1);
    hand.R = zeros<double>(0, 1);
    hand.S = from_rows({{alpha}});
    CHECK(s_distance(pqrs_to_matrices(hand), delta2(alpha)) < 1e-12);
  }
}

TEST_CASE("uniform blocks with a regular S are recovered exactly") {
  // n = 5, r_A = 2, r_B = 4: blocks of size 1, 3, 1.
  const FilterParams<double> fp{5, 2, 4, 2.5, 1.2, 0.7, 3.0};
  const auto built = uniform_block_pqrs(fp);
  const auto f = to_pqrs_form(pqrs_to_matrices(built));
  CHECK(is_identity(f.perm));
  CHECK(max_abs(f.P - built.P) < 1e-12);
  CHECK(max_abs(f.Q - built.Q) < 1e-12);
  CHECK(max_abs(f.R - built.R) < 1e-12);
  CHECK(max_abs(f.S - built.S) < 1e-12);
}

TEST_CASE("Fig-1 coupling: singular s F moves it to the r_A = 2 subfamily") {
  const auto built = uniform_block_pqrs(fig1_preset<double>());
  const auto c = pqrs_to_matrices(built);
  CHECK(c.rank_A() == 2);
  CHECK(c.rank_B() == 4);
  const auto f = to_pqrs_form(c);
  CHECK(f.overlap() == 1);
  CHECK(rank(f.S) == 1);
  CHECK(s_distance(pqrs_to_matrices(f), c) < 1e-10);
}

TEST_CASE("pqrs_to_matrices rejects malformed blocks") {
  auto f = to_pqrs_form(delta2(2.0));
  f.P = zeros<double>(2, 1);
  CHECK_THROWS_AS(pqrs_to_matrices(f), Error);

  auto g = to_pqrs_form(delta2(2.0));
  g.S = from_rows({{I}});
  CHECK_THROWS_AS(pqrs_to_matrices(g), Error);

  auto h = to_pqrs_form(delta2(2.0));
  h.rank_A = 0;
  h.rank_B = 1;
  CHECK_THROWS_AS(pqrs_to_matrices(h), Error);
}

TEST_CASE("PQRS block shapes for all 21 rank pairs at n = 5") {
  CouplingGenerator gen(55);
  int pairs = 0;
  for (const auto& [n, ra, rb] : rank_triples(5, 5)) {
    const auto f = to_pqrs_form(gen.coupling(n, ra, rb));
    const Index m = ra + rb - n;
    CHECK(f.P.rows() == m);
    CHECK(f.P.cols() == n - rb);
    CHECK(f.Q.rows() == n - ra);
    CHECK(f.Q.cols() == n - rb);
    CHECK(f.R.rows() == n - ra);
    CHECK(f.R.cols() == m);
    CHECK(f.S.rows() == m);
    CHECK(f.S.cols() == m);
    CHECK(is_hermitian(f.S, 1e-12));
    CHECK(rank(f.S) == m);
    ++pairs;
  }
  CHECK(pairs == 21);
}

TEST_CASE("PQRS conversion is deterministic and idempotent") {
  const auto corpus = random_corpus(55, 99);
  for (const auto& c : corpus) {
    const auto f1 = to_pqrs_form(c);
    const auto f2 = to_pqrs_form(c);
    CHECK(f1.perm.indices() == f2.perm.indices());
    CHECK(max_abs(f1.P - f2.P) == 0.0);
    CHECK(max_abs(f1.S - f2.S) == 0.0);

    const auto again = to_pqrs_form(pqrs_to_matrices(f1));
    CHECK(again.perm.indices() == f1.perm.indices());
    CHECK(max_abs(again.P - f1.P) < 1e-12);
    CHECK(max_abs(again.Q - f1.Q) < 1e-12);
    CHECK(max_abs(again.R - f1.R) < 1e-12);
    CHECK(max_abs(again.S - f1.S) < 1e-12);
  }
}

TEST_CASE("all four forms reconstruct S(k)-equivalent couplings") {
  const auto corpus = random_corpus(100, 4242);
  for (const auto& c : corpus) {
    CHECK(s_distance(st_to_matrices(to_st_form(c)), c, kRoundTripGrid) < 1e-9);
    CHECK(s_distance(reverse_st_to_matrices(to_reverse_st_form(c)), c, kRoundTripGrid) < 1e-9);
    CHECK(s_distance(pqrs_to_matrices(to_pqrs_form(c)), c, kRoundTripGrid) < 1e-9);
    CHECK(s_distance(projector_to_matrices(to_projector_form(c)), c, kRoundTripGrid) < 1e-9);
  }
}

TEST_CASE("projector form of the trivial couplings") {
  const auto dir = to_projector_form(dirichlet(3));
  CHECK(max_abs(dir.P - identity<double>(3)) < 1e-14);
  CHECK(max_abs(dir.Q) < 1e-14);
  CHECK(max_abs(dir.C) < 1e-14);
  CHECK(max_abs(dir.Lambda) < 1e-14);

  const auto neu = to_projector_form(neumann(3));
  CHECK(max_abs(neu.P) < 1e-14);
  CHECK(max_abs(neu.Q - identity<double>(3)) < 1e-14);
  CHECK(max_abs(neu.C) < 1e-14);
}

TEST_CASE("projector form of the delta coupling") {
  // Continuity psi_1 = psi_2 is the Dirichlet-type constraint, so P projects
  // onto (1,-1)/sqrt2; there is no Neumann-type constraint.
  const double alpha = 2.0;
  const auto pf = to_projector_form(delta2(alpha));
  const Matrix odd = from_rows({{0.5, -0.5}, {-0.5, 0.5}});
  const Matrix even = from_rows({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(max_abs(pf.P - odd) < 1e-14);
  CHECK(max_abs(pf.Q) < 1e-14);
  CHECK(max_abs(pf.C - even) < 1e-14);
  CHECK(max_abs(pf.Lambda - (alpha / 2.0) * even) < 1e-14);
}

TEST_CASE("projector algebra and agreement with the eigenspaces of U") {
  const auto corpus = random_corpus(100, 77);
  for (const auto& c : corpus) {
    const Index n = c.n();
    const auto pf = to_projector_form(c);
    const Matrix id = identity<double>(n);
    CHECK(max_abs(Matrix(pf.P * pf.P - pf.P)) < 1e-10);
    CHECK(max_abs(Matrix(pf.Q * pf.Q - pf.Q)) < 1e-10);
    CHECK(max_abs(Matrix(pf.C * pf.C - pf.C)) < 1e-10);
    CHECK(max_abs(Matrix(pf.P * pf.Q)) < 1e-10);
    CHECK(max_abs(Matrix(pf.P + pf.Q + pf.C - id)) < 1e-10);
    CHECK(max_abs(Matrix(pf.C * pf.Lambda - pf.Lambda)) < 1e-10);
    CHECK(max_abs(Matrix(pf.Lambda * pf.C - pf.Lambda)) < 1e-10);
    CHECK(is_hermitian(pf.Lambda, 1e-10));

    // independent route: eigenprojectors of U for -1 and +1
    const auto ep = unitary_eigenprojectors(to_unitary(c));
    CHECK(max_abs(pf.P - ep.minus_one) < 1e-8);
    CHECK(max_abs(pf.Q - ep.plus_one) < 1e-8);
  }
}
