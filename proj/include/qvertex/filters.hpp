#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qvertex/forms.hpp"
#include "qvertex/scattering.hpp"
#include "qvertex/sweep.hpp"

namespace qvertex {

/// Uniform-block filter: P = pF, Q = qF, R = rF, S = sF with F the all-ones
/// matrix of the PQRS block sizes. The edges split into three consecutive
/// blocks {1}, {2}, {3} of sizes r_A + r_B - n, n - r_A and n - r_B.
template <typename Real = double>
struct FilterParams {
  Index n = 0;
  Index rank_A = 0;
  Index rank_B = 0;
  Real p = 0;
  Real q = 0;
  Real r = 0;
  Real s = 0;

  Index overlap() const { return rank_A + rank_B - n; }
  std::vector<Index> blocks() const { return {overlap(), n - rank_A, n - rank_B}; }
};

/// The two presets of the δδδ' and δδ'δ' demonstrations (block sizes 2-2-1).
template <typename Real = double>
FilterParams<Real> fig1_preset() {
  return {5, 3, 4, Real(2.5), Real(1.2), Real(0), Real(3.0)};
}

template <typename Real = double>
FilterParams<Real> fig2_preset() {
  return {5, 3, 4, Real(0), Real(1.2), Real(2.1), Real(0.2)};
}

/// |S| between blocks {1}{2}, {2}{3} and {3}{1}. S(k) is symmetric for real
/// block constants, so these also cover the transposed pairs.
template <typename Real = double>
struct BlockAmplitudes {
  Real s12 = 0;
  Real s23 = 0;
  Real s31 = 0;
};

template <typename Real = double>
struct AmplitudeLimits {
  BlockAmplitudes<Real> high_k;
  BlockAmplitudes<Real> low_k;
  Index l_p = 0;
  Index l_q = 0;
  Index l_r = 0;
};

enum class Branching { DeltaDeltaDeltaPrime, DeltaDeltaPrimeDeltaPrime, None };

constexpr std::string_view to_string(Branching b) {
  switch (b) {
    case Branching::DeltaDeltaDeltaPrime: return "delta-delta-deltaprime";
    case Branching::DeltaDeltaPrimeDeltaPrime: return "delta-deltaprime-deltaprime";
    case Branching::None: return "none";
  }
  return "none";
}

template <typename Real>
void check_filter_params(const FilterParams<Real>& fp) {
  if (fp.n < 1 || fp.rank_A < 0 || fp.rank_B < 0 || fp.rank_A > fp.n || fp.rank_B > fp.n || fp.overlap() < 0)
    throw Error(ErrorKind::InvalidShape, "filter needs 0 <= r_A, r_B <= n and r_A + r_B >= n");
  if (!std::isfinite(fp.p) || !std::isfinite(fp.q) || !std::isfinite(fp.r) || !std::isfinite(fp.s))
    throw Error(ErrorKind::InvalidArgument, "filter constants must be finite");
}

/// All-ones matrix with `rows` rows and `cols` columns.
template <typename Real>
CMatrix<Real> ones(Index rows, Index cols) {
  return CMatrix<Real>::Ones(rows, cols);
}

/// s F is singular for block sizes above one; that is accepted (the coupling
/// is admissible, only R loses uniqueness). s = 0 with a non-empty S block is
/// rejected.
template <typename Real>
PQRSForm<Real> uniform_block_pqrs(const FilterParams<Real>& fp) {
  check_filter_params(fp);
  const Index m = fp.overlap(), a = fp.n - fp.rank_A, b = fp.n - fp.rank_B;
  if (m > 0 && fp.s == 0) throw Error(ErrorKind::SingularSBlock, "s = 0 leaves the S block identically zero");
  PQRSForm<Real> f;
  f.n = fp.n;
  f.rank_A = fp.rank_A;
  f.rank_B = fp.rank_B;
  f.perm = identity_permutation(fp.n);
  f.P = fp.p * ones<Real>(m, b);
  f.Q = fp.q * ones<Real>(a, b);
  f.R = fp.r * ones<Real>(a, m);
  f.S = fp.s * ones<Real>(m, m);
  return f;
}

/// (I + alpha F)^{-1} = I - alpha / (1 + alpha m) F for the m x m all-ones F.
template <typename Real>
CMatrix<Real> rank_one_inverse(Index m, Real alpha) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "block size must be positive");
  const Real shift = Real(1) + alpha * Real(m);
  if (std::abs(shift) <= 64 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(alpha * Real(m))))
    throw Error(ErrorKind::SingularShift, "1 + alpha m = 0");
  return identity<Real>(m) - (alpha / shift) * ones<Real>(m, m);
}

/// Closed-form block amplitudes at k -> infinity and k -> 0.
template <typename Real>
AmplitudeLimits<Real> amplitude_limits(const FilterParams<Real>& fp) {
  check_filter_params(fp);
  const Real n = Real(fp.n), ra = Real(fp.rank_A), rb = Real(fp.rank_B);
  const Real m = ra + rb - n;
  AmplitudeLimits<Real> out;
  out.l_p = (fp.n - fp.rank_B) * fp.overlap();
  out.l_q = (fp.n - fp.rank_B) * (fp.n - fp.rank_A);
  out.l_r = (fp.n - fp.rank_A) * fp.overlap();
  const Real lp = Real(out.l_p), lq = Real(out.l_q), lr = Real(out.l_r);

  const Real ap = std::abs(fp.p), ar = std::abs(fp.r), aq = std::abs(fp.q);
  const Real mixed = std::abs(fp.q - m * fp.r * fp.p);
  const Real high_den = 1 + lp * ap * ap + lq * mixed * mixed;
  out.high_k.s12 = 2 * (n - rb) * ap * mixed / high_den;
  out.high_k.s23 = 2 * mixed / high_den;
  out.high_k.s31 = 2 * ap / high_den;

  const Real low_den = 1 + lr * ar * ar + lq * aq * aq;
  out.low_k.s12 = 2 * ar / low_den;
  out.low_k.s23 = 2 * aq / low_den;
  out.low_k.s31 = 2 * (n - ra) * ar * aq / low_den;
  return out;
}

/// Block amplitudes read off the limit matrices themselves, with the largest
/// spread of |S_ij| inside each off-diagonal block pair. Pairs touching an
/// empty block are NaN.
template <typename Real = double>
struct MatrixLimits {
  BlockAmplitudes<Real> high_k;
  BlockAmplitudes<Real> low_k;
  Real spread = 0;
};

namespace detail {

template <typename Real>
Real block_amplitude(const CMatrix<Real>& s, const std::vector<Index>& blocks, Index mu, Index nu, Real& spread) {
  Index om = 0, on = 0;
  for (Index i = 0; i < mu; ++i) om += blocks[static_cast<std::size_t>(i)];
  for (Index i = 0; i < nu; ++i) on += blocks[static_cast<std::size_t>(i)];
  const Index hm = blocks[static_cast<std::size_t>(mu)], hn = blocks[static_cast<std::size_t>(nu)];
  if (hm == 0 || hn == 0) return std::numeric_limits<Real>::quiet_NaN();
  // Both orientations, since the closed forms name the unordered pair.
  const auto fwd = s.block(om, on, hm, hn).cwiseAbs();
  const auto bwd = s.block(on, om, hn, hm).cwiseAbs();
  const Real hi = std::max(fwd.maxCoeff(), bwd.maxCoeff());
  const Real lo = std::min(fwd.minCoeff(), bwd.minCoeff());
  spread = std::max(spread, hi - lo);
  return fwd.mean();
}

template <typename Real>
BlockAmplitudes<Real> block_amplitudes(const CMatrix<Real>& s, const std::vector<Index>& blocks, Real& spread) {
  return {block_amplitude(s, blocks, 0, 1, spread), block_amplitude(s, blocks, 1, 2, spread),
          block_amplitude(s, blocks, 2, 0, spread)};
}

}  // namespace detail

template <typename Real>
MatrixLimits<Real> matrix_amplitude_limits(const FilterParams<Real>& fp) {
  const PQRSForm<Real> f = uniform_block_pqrs(fp);
  const auto blocks = fp.blocks();
  MatrixLimits<Real> out;
  out.high_k = detail::block_amplitudes(limit_high_k(f).entries, blocks, out.spread);
  out.low_k = detail::block_amplitudes(limit_low_k(f, LowKMode::Formula).entries, blocks, out.spread);
  return out;
}

/// One closed-form value next to its matrix-limit counterpart.
template <typename Real = double>
struct LimitComparison {
  std::string label;  // e.g. "high S12"
  Real closed_form = 0;
  Real matrix = 0;

  Real difference() const { return std::abs(closed_form - matrix); }
};

template <typename Real>
std::vector<LimitComparison<Real>> compare_limits(const FilterParams<Real>& fp) {
  const auto closed = amplitude_limits(fp);
  const auto mat = matrix_amplitude_limits(fp);
  std::vector<LimitComparison<Real>> rows;
  auto add = [&rows](const char* label, Real c, Real m) {
    if (!std::isnan(m)) rows.push_back({label, c, m});
  };
  add("high S12", closed.high_k.s12, mat.high_k.s12);
  add("high S23", closed.high_k.s23, mat.high_k.s23);
  add("high S31", closed.high_k.s31, mat.high_k.s31);
  add("low S12", closed.low_k.s12, mat.low_k.s12);
  add("low S23", closed.low_k.s23, mat.low_k.s23);
  add("low S31", closed.low_k.s31, mat.low_k.s31);
  return rows;
}

/// Dominance is a ratio of probabilities: x dominates y when x > 0 and
/// x^2 >= threshold * y^2.
template <typename Real>
Branching classify_branching(const AmplitudeLimits<Real>& lim, Real threshold = Real(3)) {
  auto dominates = [threshold](Real x, Real y) { return x > 0 && x * x >= threshold * y * y; };
  const auto& hi = lim.high_k;
  const auto& lo = lim.low_k;
  if (dominates(hi.s31, hi.s23) && dominates(hi.s12, hi.s23) && dominates(lo.s23, lo.s31) && dominates(lo.s23, lo.s12))
    return Branching::DeltaDeltaDeltaPrime;
  if (dominates(hi.s23, hi.s12) && dominates(hi.s23, hi.s31) && dominates(lo.s12, lo.s23) && dominates(lo.s31, lo.s23))
    return Branching::DeltaDeltaPrimeDeltaPrime;
  return Branching::None;
}

template <typename Real>
Branching classify_branching(const FilterParams<Real>& fp, Real threshold = Real(3)) {
  for (Index size : fp.blocks())
    if (size == 0) return Branching::None;
  return classify_branching(amplitude_limits(fp), threshold);
}

template <typename Real>
SweepTable<Real> probability_sweep(const FilterParams<Real>& fp, const std::vector<Real>& grid) {
  const PQRSForm<Real> f = uniform_block_pqrs(fp);
  return sweep<Real>(
      fp.n, [&f](Real k) { return smatrix_pqrs(f, k).entries; }, grid, fp.blocks());
}

}  // namespace qvertex
