#pragma once

#include <string>
#include <vector>

#include "qvertex/coupling.hpp"
#include "qvertex/linalg.hpp"

namespace qvertex {

/// ST-form, organized by r_B = rank(B):
///
///   ( I  T ) Psi'  = (  S   0 ) Psi
///   ( 0  0 )         ( -T^* I )
///
/// in the edge numbering given by `perm`. S is r_B x r_B Hermitian and T is
/// r_B x (n - r_B).
template <typename Real = double>
struct STForm {
  Index n = 0;
  Index rank_B = 0;
  Permutation perm;
  CMatrix<Real> S;
  CMatrix<Real> T;
};

/// Reverse ST-form, the same shape with the roles of Psi and Psi' exchanged
/// and organized by r_A = rank(A).
template <typename Real = double>
struct ReverseSTForm {
  Index n = 0;
  Index rank_A = 0;
  Permutation perm;
  CMatrix<Real> S;
  CMatrix<Real> T;
};

/// PQRS-form. With m = r_A + r_B - n, a = n - r_A, b = n - r_B and edges
/// renumbered by `perm`:
///
///   ( I_m  0   P )          ( S     -S R^*     0  )
///   ( R    I_a Q ) Psi'  =  ( 0      0         0  ) Psi
///   ( 0    0   0 )          ( -P^*  (RP-Q)^*   I_b)
///
/// P is m x b, Q is a x b, R is a x m and S is m x m Hermitian. S is regular
/// whenever the form comes out of to_pqrs_form(); hand-built forms may carry a
/// singular S (the coupling is still admissible, only R loses uniqueness).
template <typename Real = double>
struct PQRSForm {
  Index n = 0;
  Index rank_A = 0;
  Index rank_B = 0;
  Permutation perm;
  CMatrix<Real> P;
  CMatrix<Real> Q;
  CMatrix<Real> R;
  CMatrix<Real> S;

  Index overlap() const { return rank_A + rank_B - n; }  // size of the S block
  Index a_size() const { return n - rank_A; }
  Index b_size() const { return n - rank_B; }
};

/// P Psi = 0, Q Psi' = 0, C Psi' = Lambda C Psi with C = I - P - Q.
template <typename Real = double>
struct ProjectorForm {
  Index n = 0;
  CMatrix<Real> P;
  CMatrix<Real> Q;
  CMatrix<Real> C;
  CMatrix<Real> Lambda;
};

namespace detail {

template <typename Real>
struct STReduction {
  Permutation perm;
  CMatrix<Real> S;
  CMatrix<Real> T;
};

// Brings `lhs X + rhs Y = 0` (rhs of rank r) to
//   (I T; 0 0) Y = (S 0; -T^* I) X
// by choosing the earliest independent columns of rhs as pivots.
template <typename Real>
STReduction<Real> reduce_to_st(const CMatrix<Real>& lhs, const CMatrix<Real>& rhs, Index r, Real rel_tol) {
  const Index n = rhs.rows();
  const std::vector<int> pivots = leading_independent_columns(rhs, r, rel_tol);
  if (static_cast<Index>(pivots.size()) != r)
    throw Error(ErrorKind::InconsistentForm, "could not find rank-many independent columns");
  Permutation perm = leading_permutation(n, pivots);

  const CMatrix<Real> rhs_p = rhs * perm;
  const CMatrix<Real> lhs_p = lhs * perm;

  // G = ( Rtri^{-1} Q1^* ; Q2^* ) sends the pivot columns to (I; 0).
  Eigen::HouseholderQR<CMatrix<Real>> qr(rhs_p.leftCols(r));
  const CMatrix<Real> q = qr.householderQ() * identity<Real>(n);
  const CMatrix<Real> upper = qr.matrixQR().topLeftCorner(r, r).template triangularView<Eigen::Upper>();
  CMatrix<Real> g(n, n);
  g.topRows(r) = solve(upper, CMatrix<Real>(q.leftCols(r).adjoint()), rel_tol);
  g.bottomRows(n - r) = q.rightCols(n - r).adjoint();

  const CMatrix<Real> t = g.topRows(r) * rhs_p.rightCols(n - r);
  const CMatrix<Real> gl = g * lhs_p;
  const CMatrix<Real> coupling_rows = solve(CMatrix<Real>(gl.bottomRightCorner(n - r, n - r)),
                                            CMatrix<Real>(gl.bottomLeftCorner(n - r, r)), rel_tol);
  const CMatrix<Real> top = gl.topLeftCorner(r, r) - gl.topRightCorner(r, n - r) * coupling_rows;
  return {perm, hermitian_part(CMatrix<Real>(-top)), t};
}

template <typename Real>
Permutation compose_leading(const Permutation& outer, const Permutation& inner_prefix) {
  Eigen::VectorXi idx = outer.indices();
  for (Index i = 0; i < inner_prefix.size(); ++i) idx(i) = outer.indices()(inner_prefix.indices()(i));
  return Permutation(idx);
}

template <typename Real>
void require_shape(const CMatrix<Real>& m, Index rows, Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols)
    throw Error(ErrorKind::InvalidShape, std::string("block ") + name + " has shape " + std::to_string(m.rows()) +
                                             "x" + std::to_string(m.cols()) + ", expected " + std::to_string(rows) +
                                             "x" + std::to_string(cols));
}

inline void require_perm(const Permutation& perm, Index n) {
  if (perm.size() != n) throw Error(ErrorKind::InvalidShape, "permutation size differs from n");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    const int v = perm.indices()(i);
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw Error(ErrorKind::InvalidShape, "permutation is not a bijection of {0..n-1}");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace detail

template <typename Real>
STForm<Real> to_st_form(const VertexCoupling<Real>& c) {
  auto red = detail::reduce_to_st<Real>(c.A(), c.B(), c.rank_B(), c.tolerances().rank);
  return {c.n(), c.rank_B(), std::move(red.perm), std::move(red.S), std::move(red.T)};
}

template <typename Real>
ReverseSTForm<Real> to_reverse_st_form(const VertexCoupling<Real>& c) {
  auto red = detail::reduce_to_st<Real>(c.B(), c.A(), c.rank_A(), c.tolerances().rank);
  return {c.n(), c.rank_A(), std::move(red.perm), std::move(red.S), std::move(red.T)};
}

template <typename Real>
VertexCoupling<Real> st_to_matrices(const STForm<Real>& f, const Tolerances<Real>& tol = {}) {
  const Index n = f.n, r = f.rank_B;
  if (r < 0 || r > n) throw Error(ErrorKind::InvalidShape, "rank_B outside [0, n]");
  detail::require_perm(f.perm, n);
  detail::require_shape(f.S, r, r, "S");
  detail::require_shape(f.T, r, n - r, "T");
  CMatrix<Real> a = zeros<Real>(n, n), b = zeros<Real>(n, n);
  b.topLeftCorner(r, r) = identity<Real>(r);
  b.topRightCorner(r, n - r) = f.T;
  a.topLeftCorner(r, r) = -f.S;
  a.bottomLeftCorner(n - r, r) = f.T.adjoint();
  a.bottomRightCorner(n - r, n - r) = -identity<Real>(n - r);
  return validate<Real>(a * f.perm.transpose(), b * f.perm.transpose(), tol);
}

template <typename Real>
VertexCoupling<Real> reverse_st_to_matrices(const ReverseSTForm<Real>& f, const Tolerances<Real>& tol = {}) {
  const Index n = f.n, r = f.rank_A;
  if (r < 0 || r > n) throw Error(ErrorKind::InvalidShape, "rank_A outside [0, n]");
  detail::require_perm(f.perm, n);
  detail::require_shape(f.S, r, r, "S");
  detail::require_shape(f.T, r, n - r, "T");
  CMatrix<Real> a = zeros<Real>(n, n), b = zeros<Real>(n, n);
  a.topLeftCorner(r, r) = identity<Real>(r);
  a.topRightCorner(r, n - r) = f.T;
  b.topLeftCorner(r, r) = -f.S;
  b.bottomLeftCorner(n - r, r) = f.T.adjoint();
  b.bottomRightCorner(n - r, n - r) = -identity<Real>(n - r);
  return validate<Real>(a * f.perm.transpose(), b * f.perm.transpose(), tol);
}

/// Canonical PQRS-form. The ST pivots fix the first r_B positions of the
/// permutation; inside them, the smallest-index rows of S_ST that are linearly
/// independent come first, which determines R uniquely.
template <typename Real>
PQRSForm<Real> to_pqrs_form(const VertexCoupling<Real>& c) {
  const Index n = c.n(), ra = c.rank_A(), rb = c.rank_B();
  const Index m = ra + rb - n;
  const Real tol = c.tolerances().rank;
  const STForm<Real> st = to_st_form(c);

  std::vector<int> rows;
  if (m > 0) {
    rows = leading_independent_columns(CMatrix<Real>(st.S.adjoint()), m, tol);
    if (static_cast<Index>(rows.size()) != m)
      throw Error(ErrorKind::SingularSBlock, "S_ST has fewer than r_A + r_B - n independent rows");
  }
  const Permutation inner = leading_permutation(rb, rows);
  const CMatrix<Real> s_st = inner.transpose() * st.S * inner;
  const CMatrix<Real> t_st = inner.transpose() * st.T;

  const CMatrix<Real> s11 = s_st.topLeftCorner(m, m);
  const CMatrix<Real> s21 = s_st.bottomLeftCorner(rb - m, m);
  CMatrix<Real> r_block;
  try {
    // (S21 S22) = -R (S11 S21^*)  =>  R = -S21 S11^{-1}
    r_block = -solve(CMatrix<Real>(s11.adjoint()), CMatrix<Real>(s21.adjoint()), tol).adjoint();
  } catch (const Error&) {
    throw Error(ErrorKind::SingularSBlock, "extracted S block is numerically singular");
  }
  const CMatrix<Real> t1 = t_st.topRows(m);
  const CMatrix<Real> t2 = t_st.bottomRows(rb - m);

  PQRSForm<Real> f;
  f.n = n;
  f.rank_A = ra;
  f.rank_B = rb;
  f.perm = detail::compose_leading<Real>(st.perm, inner);
  f.P = t1;
  f.Q = t2 + r_block * t1;
  f.R = r_block;
  f.S = hermitian_part(s11);
  return f;
}

template <typename Real>
void check_pqrs_shapes(const PQRSForm<Real>& f) {
  const Index n = f.n, ra = f.rank_A, rb = f.rank_B;
  if (n < 1 || ra < 0 || rb < 0 || ra > n || rb > n || ra + rb < n)
    throw Error(ErrorKind::InvalidShape, "rank pair outside the admissible range");
  detail::require_perm(f.perm, n);
  const Index m = f.overlap(), a = f.a_size(), b = f.b_size();
  detail::require_shape(f.P, m, b, "P");
  detail::require_shape(f.Q, a, b, "Q");
  detail::require_shape(f.R, a, m, "R");
  detail::require_shape(f.S, m, m, "S");
}

/// Assembles (A, B) in the original edge numbering. A is the negated
/// right-hand side of the PQRS equation and B its left-hand side.
template <typename Real>
VertexCoupling<Real> pqrs_to_matrices(const PQRSForm<Real>& f, const Tolerances<Real>& tol = {}) {
  check_pqrs_shapes(f);
  if (!is_hermitian(f.S, tol.hermitian * std::max(Real(1), max_abs(f.S))))
    throw Error(ErrorKind::NotSelfAdjoint, "S block is not Hermitian");
  const Index n = f.n, m = f.overlap(), a = f.a_size(), b = f.b_size();

  CMatrix<Real> lhs = zeros<Real>(n, n);
  lhs.block(0, 0, m, m) = identity<Real>(m);
  lhs.block(0, m + a, m, b) = f.P;
  lhs.block(m, 0, a, m) = f.R;
  lhs.block(m, m, a, a) = identity<Real>(a);
  lhs.block(m, m + a, a, b) = f.Q;

  CMatrix<Real> rhs = zeros<Real>(n, n);
  rhs.block(0, 0, m, m) = f.S;
  rhs.block(0, m, m, a) = -f.S * f.R.adjoint();
  rhs.block(m + a, 0, b, m) = -f.P.adjoint();
  rhs.block(m + a, m, b, a) = (f.R * f.P - f.Q).adjoint();
  rhs.block(m + a, m + a, b, b) = identity<Real>(b);

  auto c = validate<Real>(CMatrix<Real>(-rhs * f.perm.transpose()), CMatrix<Real>(lhs * f.perm.transpose()), tol);
  if (m == 0 || rank(f.S, tol.rank) == m) {
    if (c.rank_A() != f.rank_A || c.rank_B() != f.rank_B)
      throw Error(ErrorKind::InconsistentForm, "assembled ranks differ from the declared rank pair");
  }
  return c;
}

/// Columns span the range of the projector C. Size n x (r_A + r_B - n), in
/// the form's permuted numbering.
template <typename Real>
CMatrix<Real> build_X(const PQRSForm<Real>& f) {
  check_pqrs_shapes(f);
  const Index n = f.n, m = f.overlap(), a = f.a_size(), b = f.b_size();
  CMatrix<Real> lead = zeros<Real>(n, m);
  lead.topRows(m) = identity<Real>(m);
  lead.bottomRows(b) = f.P.adjoint();

  CMatrix<Real> w(n, a);
  w.topRows(m) = f.R.adjoint();
  w.middleRows(m, a) = identity<Real>(a);
  w.bottomRows(b) = f.Q.adjoint();

  const CMatrix<Real> gram = identity<Real>(a) + f.R * f.R.adjoint() + f.Q * f.Q.adjoint();
  return lead - w * solve(gram, CMatrix<Real>(f.R + f.Q * f.P.adjoint()));
}

namespace detail {

// The stacked matrices whose column spaces are the ranges of the projectors
// P (Dirichlet-like part) and Q (Neumann-like part), permuted numbering.
template <typename Real>
CMatrix<Real> dirichlet_columns(const PQRSForm<Real>& f) {
  const Index n = f.n, m = f.overlap(), a = f.a_size(), b = f.b_size();
  CMatrix<Real> v(n, b);
  v.topRows(m) = -f.P;
  v.middleRows(m, a) = f.R * f.P - f.Q;
  v.bottomRows(b) = identity<Real>(b);
  return v;
}

template <typename Real>
CMatrix<Real> neumann_columns(const PQRSForm<Real>& f) {
  const Index n = f.n, m = f.overlap(), a = f.a_size(), b = f.b_size();
  CMatrix<Real> w(n, a);
  w.topRows(m) = f.R.adjoint();
  w.middleRows(m, a) = identity<Real>(a);
  w.bottomRows(b) = f.Q.adjoint();
  return w;
}

}  // namespace detail

template <typename Real>
ProjectorForm<Real> to_projector_form(const VertexCoupling<Real>& c) {
  const PQRSForm<Real> f = to_pqrs_form(c);
  const Index n = f.n;
  const CMatrix<Real> p = range_projector(detail::dirichlet_columns(f));
  const CMatrix<Real> q = range_projector(detail::neumann_columns(f));
  const CMatrix<Real> x = build_X(f);
  const CMatrix<Real> gram = x.adjoint() * x;
  // Lambda = X (X^*X)^{-1} S (X^*X)^{-1} X^*
  const CMatrix<Real> left = solve(gram, CMatrix<Real>(x.adjoint())).adjoint();
  const CMatrix<Real> lambda = left * f.S * left.adjoint();

  ProjectorForm<Real> out;
  out.n = n;
  out.P = unpermute(p, f.perm);
  out.Q = unpermute(q, f.perm);
  out.C = hermitian_part(CMatrix<Real>(identity<Real>(n) - out.P - out.Q));
  out.Lambda = hermitian_part(unpermute(lambda, f.perm));
  return out;
}

/// A = P - Lambda, B = I - P.
template <typename Real>
VertexCoupling<Real> projector_to_matrices(const ProjectorForm<Real>& f, const Tolerances<Real>& tol = {}) {
  const Index n = f.n;
  detail::require_shape(f.P, n, n, "P");
  detail::require_shape(f.Q, n, n, "Q");
  detail::require_shape(f.C, n, n, "C");
  detail::require_shape(f.Lambda, n, n, "Lambda");
  return validate<Real>(CMatrix<Real>(f.P - f.Lambda), CMatrix<Real>(identity<Real>(n) - f.P), tol);
}

}  // namespace qvertex
