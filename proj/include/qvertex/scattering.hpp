#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qvertex/coupling.hpp"
#include "qvertex/forms.hpp"

namespace qvertex {

/// On-shell scattering matrix. Limit matrices carry k = 0 or k = +inf.
template <typename Real = double>
struct SMatrix {
  Index n = 0;
  Real k = 0;
  CMatrix<Real> entries;
};

enum class ExpansionKind { HighK, LowK };

/// Truncated series of S(k): sum_j C_j z^j with z = 1/(ik) (high-k) or
/// z = ik (low-k). The geometric series behind it converges for
/// k > spectral_radius (high-k) or k < 1/spectral_radius (low-k).
template <typename Real = double>
struct SeriesExpansion {
  Index n = 0;
  ExpansionKind kind = ExpansionKind::HighK;
  std::vector<CMatrix<Real>> coefficients;
  Real spectral_radius = 0;

  Index order() const { return static_cast<Index>(coefficients.size()) - 1; }

  bool converges_at(Real k) const {
    if (kind == ExpansionKind::HighK) return spectral_radius < k;
    return k * spectral_radius < Real(1);
  }

  /// Partial sum; evaluation outside converges_at() is at the caller's risk.
  CMatrix<Real> evaluate(Real k) const {
    const Complex<Real> ik(0, k);
    const Complex<Real> z = kind == ExpansionKind::HighK ? Complex<Real>(1) / ik : ik;
    CMatrix<Real> sum = zeros<Real>(n, n);
    Complex<Real> power(1);
    for (const auto& c : coefficients) {
      sum += power * c;
      power *= z;
    }
    return sum;
  }
};

/// Plane wave entering along edge `edge` with unit amplitude:
/// Psi = (I + S) e_j, Psi' = ik (S - I) e_j.
template <typename Real = double>
struct ScatteringSolution {
  Index edge = 0;
  Real k = 0;
  CVector<Real> psi;
  CVector<Real> dpsi;
};

namespace detail {

template <typename Real>
void require_momentum(Real k) {
  if (!(k > 0) || !std::isfinite(k)) throw Error(ErrorKind::InvalidArgument, "momentum k must be positive and finite");
}

// -I + 2 W (W^* W)^{-1} W^*, the k-independent part shared by the PQRS
// scattering formula and its low-k limit.
template <typename Real>
CMatrix<Real> neumann_part(const PQRSForm<Real>& f) {
  const CMatrix<Real> w = neumann_columns(f);
  return -identity<Real>(f.n) + Real(2) * w * solve(CMatrix<Real>(w.adjoint() * w), CMatrix<Real>(w.adjoint()));
}

template <typename Real>
Real spectral_radius(const CMatrix<Real>& m) {
  if (m.size() == 0) return 0;
  Eigen::ComplexEigenSolver<CMatrix<Real>> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

template <typename Real>
bool s_block_regular(const PQRSForm<Real>& f, Real rel_tol) {
  return f.overlap() == 0 || rank(f.S, rel_tol) == f.overlap();
}

}  // namespace detail

/// S(k) = -(A + ikB)^{-1} (A - ikB). Reference path for every other formula.
template <typename Real>
SMatrix<Real> smatrix_direct(const VertexCoupling<Real>& c, Real k) {
  detail::require_momentum(k);
  const Complex<Real> ik(0, k);
  const CMatrix<Real> plus = c.A() + ik * c.B();
  const CMatrix<Real> minus = c.A() - ik * c.B();
  return {c.n(), k, -solve(plus, minus, c.tolerances().rank)};
}

/// Inverts only an r_B x r_B matrix.
template <typename Real>
SMatrix<Real> smatrix_st(const STForm<Real>& f, Real k) {
  detail::require_momentum(k);
  const Index n = f.n, r = f.rank_B;
  const Complex<Real> ik(0, k);
  CMatrix<Real> y(n, r);
  y.topRows(r) = identity<Real>(r);
  y.bottomRows(n - r) = f.T.adjoint();
  const CMatrix<Real> core = identity<Real>(r) + f.T * f.T.adjoint() - f.S / ik;
  const CMatrix<Real> s = -identity<Real>(n) + Real(2) * y * solve(core, CMatrix<Real>(y.adjoint()));
  return {n, k, unpermute(s, f.perm)};
}

/// Inverts only an r_A x r_A matrix.
template <typename Real>
SMatrix<Real> smatrix_reverse_st(const ReverseSTForm<Real>& f, Real k) {
  detail::require_momentum(k);
  const Index n = f.n, r = f.rank_A;
  const Complex<Real> ik(0, k);
  CMatrix<Real> y(n, r);
  y.topRows(r) = identity<Real>(r);
  y.bottomRows(n - r) = f.T.adjoint();
  const CMatrix<Real> core = identity<Real>(r) + f.T * f.T.adjoint() - ik * f.S;
  const CMatrix<Real> s = identity<Real>(n) - Real(2) * y * solve(core, CMatrix<Real>(y.adjoint()));
  return {n, k, unpermute(s, f.perm)};
}

/// -I + 2 W (I + RR^* + QQ^*)^{-1} W^* + 2 X (X^*X - S/(ik))^{-1} X^*.
/// X^*X - S/(ik) stays invertible for singular Hermitian S, so hand-built
/// forms with a singular S block are fine here.
template <typename Real>
SMatrix<Real> smatrix_pqrs(const PQRSForm<Real>& f, Real k) {
  detail::require_momentum(k);
  CMatrix<Real> s = detail::neumann_part(f);
  if (f.overlap() > 0) {
    const Complex<Real> ik(0, k);
    const CMatrix<Real> x = build_X(f);
    const CMatrix<Real> core = x.adjoint() * x - f.S / ik;
    s += Real(2) * x * solve(core, CMatrix<Real>(x.adjoint()));
  }
  return {f.n, k, unpermute(s, f.perm)};
}

/// -P + Q - (Lambda - ik)^{-1} (Lambda + ik) C, with the inverse taken on
/// range(C) only.
template <typename Real>
SMatrix<Real> smatrix_projector(const ProjectorForm<Real>& p, Real k) {
  detail::require_momentum(k);
  const Index n = p.n;
  const Complex<Real> ik(0, k);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(p.C);
  std::vector<Index> cols;
  for (Index j = 0; j < n; ++j)
    if (es.eigenvalues()(j) > Real(0.5)) cols.push_back(j);
  CMatrix<Real> basis(n, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(static_cast<Index>(j)) = es.eigenvectors().col(cols[j]);

  const Index m = basis.cols();
  const CMatrix<Real> lam = basis.adjoint() * p.Lambda * basis;
  const CMatrix<Real> cayley =
      solve(CMatrix<Real>(lam - ik * identity<Real>(m)), CMatrix<Real>(lam + ik * identity<Real>(m)));
  return {n, k, CMatrix<Real>(-p.P + p.Q - basis * cayley * basis.adjoint())};
}

/// k -> infinity: I - 2 V [I + P^*P + (RP-Q)^*(RP-Q)]^{-1} V^* with
/// V = (-P; RP-Q; I). Depends on P, Q, R only.
template <typename Real>
SMatrix<Real> limit_high_k(const PQRSForm<Real>& f) {
  check_pqrs_shapes(f);
  const CMatrix<Real> v = detail::dirichlet_columns(f);
  const CMatrix<Real> s =
      identity<Real>(f.n) - Real(2) * v * solve(CMatrix<Real>(v.adjoint() * v), CMatrix<Real>(v.adjoint()));
  return {f.n, std::numeric_limits<Real>::infinity(), unpermute(s, f.perm)};
}

/// High-k limit read off the ST-form: the S_ST = 0 (scale-invariant) matrix.
template <typename Real>
SMatrix<Real> limit_high_k(const STForm<Real>& f) {
  STForm<Real> free = f;
  free.S.setZero();
  auto s = smatrix_st(free, Real(1));
  s.k = std::numeric_limits<Real>::infinity();
  return s;
}

enum class LowKMode {
  RequireRegularS,  // the true k -> 0 limit; S must be regular
  Formula,          // evaluate the low-k expression whatever S is
};

/// k -> 0: -I + 2 W (I + RR^* + QQ^*)^{-1} W^* with W = (R^*; I; Q^*).
template <typename Real>
SMatrix<Real> limit_low_k(const PQRSForm<Real>& f, LowKMode mode = LowKMode::RequireRegularS,
                          Real rel_tol = Real(kDefaultRankTolerance)) {
  check_pqrs_shapes(f);
  if (mode == LowKMode::RequireRegularS && !detail::s_block_regular(f, rel_tol))
    throw Error(ErrorKind::SingularSBlock, "low-k limit needs a regular S block");
  return {f.n, Real(0), unpermute(detail::neumann_part(f), f.perm)};
}

/// Low-k limit read off the reverse ST-form: the S~ = 0 matrix.
template <typename Real>
SMatrix<Real> limit_low_k(const ReverseSTForm<Real>& f) {
  ReverseSTForm<Real> free = f;
  free.S.setZero();
  auto s = smatrix_reverse_st(free, Real(1));
  s.k = Real(0);
  return s;
}

template <typename Real>
SeriesExpansion<Real> expand(const PQRSForm<Real>& f, ExpansionKind kind, Index order,
                             Real rel_tol = Real(kDefaultRankTolerance)) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "expansion order must be non-negative");
  SeriesExpansion<Real> out;
  out.n = f.n;
  out.kind = kind;
  const Index m = f.overlap();

  if (kind == ExpansionKind::HighK) {
    out.coefficients.push_back(limit_high_k(f).entries);
    if (m == 0) {
      for (Index j = 1; j <= order; ++j) out.coefficients.push_back(zeros<Real>(f.n, f.n));
      return out;
    }
    // C_j = 2 X [(X^*X)^{-1} S]^j (X^*X)^{-1} X^*
    const CMatrix<Real> x = build_X(f);
    const CMatrix<Real> gram = x.adjoint() * x;
    const CMatrix<Real> step = solve(gram, f.S);
    const CMatrix<Real> tail = solve(gram, CMatrix<Real>(x.adjoint()));
    out.spectral_radius = detail::spectral_radius(step);
    CMatrix<Real> power = identity<Real>(m);
    for (Index j = 1; j <= order; ++j) {
      power = power * step;
      out.coefficients.push_back(unpermute(CMatrix<Real>(Real(2) * x * power * tail), f.perm));
    }
    return out;
  }

  out.coefficients.push_back(limit_low_k(f, LowKMode::RequireRegularS, rel_tol).entries);
  if (m == 0) {
    for (Index j = 1; j <= order; ++j) out.coefficients.push_back(zeros<Real>(f.n, f.n));
    return out;
  }
  // C_j = -2 X (S^{-1} X^*X)^{j-1} S^{-1} X^*, j >= 1
  const CMatrix<Real> x = build_X(f);
  const CMatrix<Real> gram = x.adjoint() * x;
  const CMatrix<Real> step = solve(f.S, gram, rel_tol);
  const CMatrix<Real> tail = solve(f.S, CMatrix<Real>(x.adjoint()), rel_tol);
  out.spectral_radius = detail::spectral_radius(step);
  CMatrix<Real> power = identity<Real>(m);
  for (Index j = 1; j <= order; ++j) {
    out.coefficients.push_back(unpermute(CMatrix<Real>(Real(-2) * x * power * tail), f.perm));
    power = power * step;
  }
  return out;
}

/// ST-form expansions. High-k works for any S_ST; low-k needs S_ST regular
/// (then r_A = n and the limit is -I).
template <typename Real>
SeriesExpansion<Real> expand(const STForm<Real>& f, ExpansionKind kind, Index order,
                             Real rel_tol = Real(kDefaultRankTolerance)) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "expansion order must be non-negative");
  const Index n = f.n, r = f.rank_B;
  SeriesExpansion<Real> out;
  out.n = n;
  out.kind = kind;
  CMatrix<Real> y(n, r);
  y.topRows(r) = identity<Real>(r);
  y.bottomRows(n - r) = f.T.adjoint();
  const CMatrix<Real> gram = identity<Real>(r) + f.T * f.T.adjoint();

  if (kind == ExpansionKind::HighK) {
    out.coefficients.push_back(limit_high_k(f).entries);
    // C_j = 2 Y [(I + TT^*)^{-1} S]^j (I + TT^*)^{-1} Y^*
    const CMatrix<Real> step = solve(gram, f.S);
    const CMatrix<Real> tail = solve(gram, CMatrix<Real>(y.adjoint()));
    out.spectral_radius = detail::spectral_radius(step);
    CMatrix<Real> power = identity<Real>(r);
    for (Index j = 1; j <= order; ++j) {
      power = power * step;
      out.coefficients.push_back(unpermute(CMatrix<Real>(Real(2) * y * power * tail), f.perm));
    }
    return out;
  }

  if (r > 0 && rank(f.S, rel_tol) < r)
    throw Error(ErrorKind::SingularSBlock, "low-k ST expansion needs a regular S_ST");
  out.coefficients.push_back(-identity<Real>(n));
  if (r == 0) {
    for (Index j = 1; j <= order; ++j) out.coefficients.push_back(zeros<Real>(n, n));
    return out;
  }
  // (I + TT^* - S/(ik))^{-1} = -ik sum_j (ik)^j (S^{-1}(I + TT^*))^j S^{-1}
  const CMatrix<Real> step = solve(f.S, gram, rel_tol);
  const CMatrix<Real> tail = solve(f.S, CMatrix<Real>(y.adjoint()), rel_tol);
  out.spectral_radius = detail::spectral_radius(step);
  CMatrix<Real> power = identity<Real>(r);
  for (Index j = 1; j <= order; ++j) {
    out.coefficients.push_back(unpermute(CMatrix<Real>(Real(-2) * y * power * tail), f.perm));
    power = power * step;
  }
  return out;
}

template <typename Real>
ScatteringSolution<Real> scattering_solution(const SMatrix<Real>& s, Index edge) {
  if (edge < 0 || edge >= s.n) throw Error(ErrorKind::InvalidArgument, "edge index out of range");
  const Complex<Real> ik(0, s.k);
  const CVector<Real> e = CVector<Real>::Unit(s.n, edge);
  ScatteringSolution<Real> sol;
  sol.edge = edge;
  sol.k = s.k;
  sol.psi = e + s.entries * e;
  sol.dpsi = ik * (s.entries * e - e);
  return sol;
}

/// |A Psi + B Psi'|_max for one incoming edge.
template <typename Real>
Real residual(const VertexCoupling<Real>& c, const ScatteringSolution<Real>& sol) {
  return max_abs(c.A() * sol.psi + c.B() * sol.dpsi);
}

/// |A (I + S) + ik B (S - I)|_max; vanishes when S solves the boundary
/// condition for every incoming edge.
template <typename Real>
Real bc_residual(const VertexCoupling<Real>& c, const SMatrix<Real>& s) {
  const Complex<Real> ik(0, s.k);
  const CMatrix<Real> id = identity<Real>(c.n());
  return max_abs(c.A() * (id + s.entries) + ik * c.B() * (s.entries - id));
}

}  // namespace qvertex
