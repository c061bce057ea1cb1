#pragma once

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qvertex/linalg.hpp"

namespace qvertex {

/// Numerical knobs shared by every module. r_A and r_B are decided once, with
/// `rank`, when a coupling is validated.
template <typename Real = double>
struct Tolerances {
  Real rank = Real(1e-10);         // relative, on singular values
  Real hermitian = Real(1e-9);     // absolute, scaled by max(1, |A|_F |B|_F)
  Real unitary = Real(1e-10);      // absolute, on |U U^* - I|_max
  Real eigen_cluster = Real(1e-8); // absolute, on |lambda -/+ 1|
};

template <typename Real = double>
class VertexCoupling;

template <typename Real>
VertexCoupling<Real> validate(const CMatrix<Real>& a, const CMatrix<Real>& b,
                              const Tolerances<Real>& tol = {});

/// A self-adjoint vertex coupling A Psi + B Psi' = 0 of degree n.
///
/// Instances only come out of validate(), so rank(A|B) = n and A B^* is
/// Hermitian for every value of this type.
template <typename Real>
class VertexCoupling {
 public:
  using Matrix = CMatrix<Real>;

  Index n() const { return a_.rows(); }
  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  Index rank_A() const { return rank_a_; }
  Index rank_B() const { return rank_b_; }
  const Tolerances<Real>& tolerances() const { return tol_; }

  template <typename R>
  friend VertexCoupling<R> validate(const CMatrix<R>& a, const CMatrix<R>& b, const Tolerances<R>& tol);

 private:
  VertexCoupling(Matrix a, Matrix b, Index ra, Index rb, Tolerances<Real> tol)
      : a_(std::move(a)), b_(std::move(b)), rank_a_(ra), rank_b_(rb), tol_(tol) {}

  Matrix a_;
  Matrix b_;
  Index rank_a_;
  Index rank_b_;
  Tolerances<Real> tol_;
};

template <typename Real>
VertexCoupling<Real> validate(const CMatrix<Real>& a, const CMatrix<Real>& b,
                              const Tolerances<Real>& tol) {
  const Index n = a.rows();
  if (n < 1 || a.cols() != n || b.rows() != n || b.cols() != n)
    throw Error(ErrorKind::ShapeMismatch, "A and B must be square of equal size n >= 1");

  CMatrix<Real> ab(n, 2 * n);
  ab << a, b;
  const auto sv = singular_values(ab);
  if (rank(ab, tol.rank) < n) throw Error(ErrorKind::RankDeficient, "rank(A|B) < n");

  const Real scale = std::max(Real(1), a.norm() * b.norm());
  if (!is_hermitian(CMatrix<Real>(a * b.adjoint()), tol.hermitian * scale))
    throw Error(ErrorKind::NotSelfAdjoint, "A B^* is not Hermitian");

  const Index ra = rank_relative_to(a, sv(0), tol.rank);
  const Index rb = rank_relative_to(b, sv(0), tol.rank);
  if (ra + rb < n) throw Error(ErrorKind::RankDeficient, "rank(A) + rank(B) < n");
  return VertexCoupling<Real>(a, b, ra, rb, tol);
}

/// Unitary description (U - I) Psi + i (U + I) Psi' = 0.
template <typename Real = double>
struct UnitaryForm {
  CMatrix<Real> U;
};

/// U is the scattering matrix at k = 1.
template <typename Real>
UnitaryForm<Real> to_unitary(const VertexCoupling<Real>& c) {
  const Complex<Real> i(0, 1);
  const CMatrix<Real> plus = c.A() + i * c.B();
  const CMatrix<Real> minus = c.A() - i * c.B();
  return {-solve(plus, minus, c.tolerances().rank)};
}

template <typename Real>
VertexCoupling<Real> from_unitary(const UnitaryForm<Real>& u, const Tolerances<Real>& tol = {}) {
  const Index n = u.U.rows();
  if (u.U.cols() != n) throw Error(ErrorKind::ShapeMismatch, "U must be square");
  if (unitarity_defect(u.U) > tol.unitary) throw Error(ErrorKind::NotUnitary, "U U^* differs from I");
  const Complex<Real> i(0, 1);
  const CMatrix<Real> id = identity<Real>(n);
  return validate<Real>(u.U - id, i * (u.U + id), tol);
}

/// Orthogonal projectors onto the eigenspaces of U for eigenvalues -1 and +1.
template <typename Real = double>
struct EigenProjectors {
  CMatrix<Real> minus_one;
  CMatrix<Real> plus_one;
};

/// U is normal, so its complex Schur vectors are an orthonormal eigenbasis.
template <typename Real>
EigenProjectors<Real> unitary_eigenprojectors(const UnitaryForm<Real>& u, Real cluster_tol = Real(1e-8)) {
  const Index n = u.U.rows();
  Eigen::ComplexSchur<CMatrix<Real>> schur(u.U);
  const CMatrix<Real>& basis = schur.matrixU();
  const CMatrix<Real>& tri = schur.matrixT();
  CMatrix<Real> minus = zeros<Real>(n, n);
  CMatrix<Real> plus = zeros<Real>(n, n);
  for (Index j = 0; j < n; ++j) {
    const Complex<Real> lambda = tri(j, j);
    const CMatrix<Real> outer = basis.col(j) * basis.col(j).adjoint();
    if (std::abs(lambda + Real(1)) <= cluster_tol) minus += outer;
    if (std::abs(lambda - Real(1)) <= cluster_tol) plus += outer;
  }
  return {minus, plus};
}

}  // namespace qvertex
