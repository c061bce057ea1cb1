#pragma once

#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "qvertex/qvertex.hpp"

namespace qvertex::testing {

using Matrix = CMatrix<double>;
using Coupling = VertexCoupling<double>;

inline const std::complex<double> I(0.0, 1.0);

inline Matrix from_rows(std::initializer_list<std::initializer_list<std::complex<double>>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index(0) : static_cast<Index>(rows.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Coupling dirichlet(Index n) { return validate<double>(identity<double>(n), zeros<double>(n, n)); }
inline Coupling neumann(Index n) { return validate<double>(zeros<double>(n, n), identity<double>(n)); }

/// Continuity across the vertex plus vanishing derivative sum.
inline Coupling kirchhoff(Index n) {
  Matrix a = zeros<double>(n, n), b = zeros<double>(n, n);
  for (Index i = 0; i + 1 < n; ++i) {
    a(i, i) = 1.0;
    a(i, i + 1) = -1.0;
  }
  b.row(n - 1).setOnes();
  return validate<double>(a, b);
}

/// n = 2 delta coupling: psi_1 = psi_2, psi_1' + psi_2' = alpha psi_1.
inline Coupling delta2(double alpha) {
  return validate<double>(from_rows({{1.0, -1.0}, {-alpha, 0.0}}), from_rows({{0.0, 0.0}, {1.0, 1.0}}));
}

/// Random admissible couplings. U = V D V^* with V Haar-distributed and D
/// holding exactly n - r_B eigenvalues -1, n - r_A eigenvalues +1 and random
/// phases kept kPhaseMargin away from +/-1 elsewhere; the coupling is
/// from_unitary(U). The margin bounds the norm of Lambda (and of its inverse)
/// by cot(kPhaseMargin / 2), so S(1e6) and S(1e-6) stay within 1e-5 of the
/// limits.
class CouplingGenerator {
 public:
  static constexpr double kPi = 3.141592653589793;
  static constexpr double kPhaseMargin = kPi / 6;

  explicit CouplingGenerator(std::uint64_t seed) : rng_(seed) {}

  Matrix haar_unitary(Index n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix z(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) z(i, j) = {gauss(rng_), gauss(rng_)};
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * identity<double>(n);
    for (Index j = 0; j < n; ++j) {
      const auto d = qr.matrixQR()(j, j);
      q.col(j) *= d / std::abs(d);
    }
    return q;
  }

  Matrix unitary_with_ranks(Index n, Index ra, Index rb) {
    std::uniform_real_distribution<double> phase(kPhaseMargin, kPi - kPhaseMargin);
    std::bernoulli_distribution lower(0.5);
    Matrix d = zeros<double>(n, n);
    Index pos = 0;
    for (Index i = 0; i < n - rb; ++i) d(pos, pos) = -1.0, ++pos;
    for (Index i = 0; i < n - ra; ++i) d(pos, pos) = 1.0, ++pos;
    for (; pos < n; ++pos) {
      const double theta = phase(rng_) + (lower(rng_) ? kPi : 0.0);
      d(pos, pos) = std::polar(1.0, theta);
    }
    const Matrix v = haar_unitary(n);
    return v * d * v.adjoint();
  }

  Coupling coupling(Index n, Index ra, Index rb) {
    return from_unitary<double>(UnitaryForm<double>{unitary_with_ranks(n, ra, rb)});
  }

  /// Random invertible matrix with condition number bounded by construction.
  Matrix well_conditioned(Index n) {
    std::uniform_real_distribution<double> sv(0.5, 2.0);
    Matrix d = zeros<double>(n, n);
    for (Index i = 0; i < n; ++i) d(i, i) = sv(rng_);
    return haar_unitary(n) * d * haar_unitary(n);
  }

  std::complex<double> complex_scalar() {
    std::uniform_real_distribution<double> mag(0.3, 3.0), ph(0.0, 6.283185307179586);
    return std::polar(mag(rng_), ph(rng_));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Every admissible (n, r_A, r_B) with n in [n_min, n_max].
inline std::vector<std::tuple<Index, Index, Index>> rank_triples(Index n_min, Index n_max) {
  std::vector<std::tuple<Index, Index, Index>> out;
  for (Index n = n_min; n <= n_max; ++n)
    for (Index ra = 0; ra <= n; ++ra)
      for (Index rb = n - ra; rb <= n; ++rb) out.emplace_back(n, ra, rb);
  return out;
}

/// `count` couplings cycling through every rank pair for n = 1..5.
inline std::vector<Coupling> random_corpus(std::size_t count, std::uint64_t seed = 20100401) {
  CouplingGenerator gen(seed);
  const auto triples = rank_triples(1, 5);
  std::vector<Coupling> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto [n, ra, rb] = triples[i % triples.size()];
    out.push_back(gen.coupling(n, ra, rb));
  }
  return out;
}

inline std::vector<double> equivalence_grid() { return {0.01, 0.1, 1.0, 10.0, 100.0}; }

/// Largest |S_1(k) - S_2(k)| over the grid, both from the direct formula.
inline double s_distance(const Coupling& a, const Coupling& b, const std::vector<double>& grid = equivalence_grid()) {
  double worst = 0.0;
  for (double k : grid)
    worst = std::max(worst, max_abs(smatrix_direct(a, k).entries - smatrix_direct(b, k).entries));
  return worst;
}

}  // namespace qvertex::testing
