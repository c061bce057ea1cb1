#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qvertex/error.hpp"

namespace qvertex {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Edge renumbering. Column i of a permuted matrix is column indices()[i] of
/// the original, i.e. Psi = perm * Psi_permuted.
using Permutation = Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>;

inline constexpr double kDefaultRankTolerance = 1e-10;

template <typename Real>
CMatrix<Real> identity(Index n) {
  return CMatrix<Real>::Identity(n, n);
}

template <typename Real>
CMatrix<Real> zeros(Index rows, Index cols) {
  return CMatrix<Real>::Zero(rows, cols);
}

inline Permutation identity_permutation(Index n) {
  Permutation p(n);
  p.setIdentity();
  return p;
}

/// Max-norm; zero for empty matrices.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
auto singular_values(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVec = Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1>;
  if (m.size() == 0) return RealVec(0);
  Eigen::JacobiSVD<Dense> svd(m.eval());
  return RealVec(svd.singularValues());
}

/// Number of singular values above rel_tol * (largest singular value).
template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m,
           typename Derived::RealScalar rel_tol = kDefaultRankTolerance) {
  if (rel_tol <= 0) throw Error(ErrorKind::InvalidArgument, "rank tolerance must be positive");
  const auto sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0) return 0;
  const auto cutoff = rel_tol * sv(0);
  return static_cast<Index>((sv.array() > cutoff).count());
}

/// Rank with the cutoff taken relative to `reference` instead of the
/// largest singular value of `m` itself. Used when `m` is a block of a larger
/// matrix whose scale decides what counts as noise.
template <typename Derived>
Index rank_relative_to(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar reference,
                       typename Derived::RealScalar rel_tol = kDefaultRankTolerance) {
  if (rel_tol <= 0) throw Error(ErrorKind::InvalidArgument, "rank tolerance must be positive");
  const auto sv = singular_values(m);
  if (sv.size() == 0) return 0;
  const auto cutoff = rel_tol * reference;
  return static_cast<Index>((sv.array() > cutoff).count());
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> inverse(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::RealScalar rel_tol = kDefaultRankTolerance) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  if (m.rows() == 0) return CMatrix<Real>(0, 0);
  if (rank(m, rel_tol) < m.rows()) throw Error(ErrorKind::SingularMatrix, "matrix is rank-deficient");
  return CMatrix<Real>(m).fullPivLu().inverse();
}

/// Solves m * x = rhs for square m; same singularity rule as inverse().
template <typename DerivedM, typename DerivedR>
CMatrix<typename DerivedM::RealScalar> solve(
    const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedR>& rhs,
    typename DerivedM::RealScalar rel_tol = kDefaultRankTolerance) {
  using Real = typename DerivedM::RealScalar;
  if (m.rows() != m.cols() || m.rows() != rhs.rows())
    throw Error(ErrorKind::ShapeMismatch, "solve with incompatible shapes");
  if (m.rows() == 0) return zeros<Real>(0, rhs.cols());
  if (rank(m, rel_tol) < m.rows()) throw Error(ErrorKind::SingularMatrix, "matrix is rank-deficient");
  return CMatrix<Real>(m).fullPivLu().solve(CMatrix<Real>(rhs));
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar abs_tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "Hermitian test of a non-square matrix");
  return max_abs(m - m.adjoint()) <= abs_tol;
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::RealScalar(2);
}

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  return max_abs(m * m.adjoint() - identity<Real>(m.rows()));
}

/// Orthogonal projector onto the column space of a full-column-rank matrix.
template <typename Derived>
CMatrix<typename Derived::RealScalar> range_projector(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  if (m.cols() == 0) return zeros<Real>(m.rows(), m.rows());
  const CMatrix<Real> gram = m.adjoint() * m;
  return hermitian_part(m * solve(gram, m.adjoint()));
}

/// Greedily picks the smallest-index columns of m that are linearly
/// independent, stopping after `count` of them. A column is accepted when the
/// smallest singular value of the candidate set exceeds rel_tol * sigma_max(m).
/// Returns fewer than `count` indices when m does not have that many.
template <typename Derived>
std::vector<int> leading_independent_columns(const Eigen::MatrixBase<Derived>& m, Index count,
                                             typename Derived::RealScalar rel_tol) {
  using Real = typename Derived::RealScalar;
  std::vector<int> chosen;
  if (count == 0 || m.size() == 0) return chosen;
  const auto sv = singular_values(m);
  const Real cutoff = rel_tol * sv(0);
  if (sv(0) == 0) return chosen;
  for (Index j = 0; j < m.cols() && static_cast<Index>(chosen.size()) < count; ++j) {
    CMatrix<Real> candidate(m.rows(), static_cast<Index>(chosen.size()) + 1);
    for (std::size_t c = 0; c < chosen.size(); ++c) candidate.col(static_cast<Index>(c)) = m.col(chosen[c]);
    candidate.col(candidate.cols() - 1) = m.col(j);
    const auto csv = singular_values(candidate);
    if (csv(csv.size() - 1) > cutoff) chosen.push_back(static_cast<int>(j));
  }
  return chosen;
}

/// Permutation listing `first` in order, followed by the remaining indices of
/// {0..n-1} in ascending order.
inline Permutation leading_permutation(Index n, const std::vector<int>& first) {
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::VectorXi idx(n);
  Index pos = 0;
  for (int f : first) {
    idx(pos++) = f;
    used[static_cast<std::size_t>(f)] = true;
  }
  for (Index i = 0; i < n; ++i)
    if (!used[static_cast<std::size_t>(i)]) idx(pos++) = static_cast<int>(i);
  return Permutation(idx);
}

/// Maps a matrix expressed in permuted edge coordinates back to the original
/// numbering: M = perm * M_permuted * perm^T.
template <typename Real>
CMatrix<Real> unpermute(const CMatrix<Real>& permuted, const Permutation& perm) {
  return perm * permuted * perm.transpose();
}

}  // namespace qvertex
