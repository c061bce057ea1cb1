#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qvertex/linalg.hpp"

namespace qvertex {

/// Probabilities |S_ij(k)|^2 on a momentum grid. When `blocks` is non-empty
/// it partitions the edges into consecutive groups, and block_average()
/// reports the mean probability between two groups.
template <typename Real = double>
struct SweepTable {
  Index n = 0;
  std::vector<Real> k;
  std::vector<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> probability;
  std::vector<Index> blocks;

  Index rows() const { return static_cast<Index>(k.size()); }

  Index block_offset(Index mu) const {
    Index off = 0;
    for (Index i = 0; i < mu; ++i) off += blocks[static_cast<std::size_t>(i)];
    return off;
  }

  /// Mean of |S_ij|^2 over i in block mu, j in block nu (0-based). NaN for an
  /// empty block.
  Real block_average(Index row, Index mu, Index nu) const {
    const Index hm = blocks[static_cast<std::size_t>(mu)], hn = blocks[static_cast<std::size_t>(nu)];
    if (hm == 0 || hn == 0) return std::nan("");
    return probability[static_cast<std::size_t>(row)].block(block_offset(mu), block_offset(nu), hm, hn).mean();
  }

  /// Largest deviation of a row or column sum of |S_ij|^2 from one.
  Real stochastic_defect(Index row) const {
    const auto& p = probability[static_cast<std::size_t>(row)];
    const Real r = (p.rowwise().sum().array() - Real(1)).abs().maxCoeff();
    const Real c = (p.colwise().sum().array() - Real(1)).abs().maxCoeff();
    return std::max(r, c);
  }
};

template <typename Real>
std::vector<Real> log_grid(Real k_min, Real k_max, Index points) {
  std::vector<Real> grid(static_cast<std::size_t>(points));
  const Real ratio = std::log(k_max / k_min);
  for (Index i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = k_min * std::exp(ratio * Real(i) / Real(points - 1));
  grid.front() = k_min;
  grid.back() = k_max;
  return grid;
}

template <typename Real>
std::vector<Real> linear_grid(Real k_min, Real k_max, Index points) {
  std::vector<Real> grid(static_cast<std::size_t>(points));
  for (Index i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = k_min + (k_max - k_min) * Real(i) / Real(points - 1);
  grid.front() = k_min;
  grid.back() = k_max;
  return grid;
}

template <typename Real>
void require_grid(const std::vector<Real>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty momentum grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || !std::isfinite(grid[i])) throw Error(ErrorKind::InvalidArgument, "grid momenta must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorKind::InvalidArgument, "grid must be strictly ascending");
  }
}

/// Evaluates `smatrix` at each grid point.
template <typename Real>
SweepTable<Real> sweep(Index n, const std::function<CMatrix<Real>(Real)>& smatrix, const std::vector<Real>& grid,
                       std::vector<Index> blocks = {}) {
  require_grid(grid);
  SweepTable<Real> table;
  table.n = n;
  table.k = grid;
  table.blocks = std::move(blocks);
  table.probability.reserve(grid.size());
  for (Real k : grid) table.probability.push_back(smatrix(k).cwiseAbs2());
  return table;
}

}  // namespace qvertex
