#pragma once

#include <cstdint>
#include <string>

#include "qvertex/error.hpp"

namespace qvertex {

namespace detail {

inline void require_rank_pair(std::int64_t n, std::int64_t ra, std::int64_t rb) {
  if (n < 1 || ra < 0 || rb < 0 || ra > n || rb > n)
    throw Error(ErrorKind::InvalidRankPair, "ranks must lie in [0, n] with n >= 1");
  if (ra + rb < n)
    throw Error(ErrorKind::InvalidRankPair,
                "r_A + r_B < n (" + std::to_string(ra) + " + " + std::to_string(rb) + " < " + std::to_string(n) + ")");
}

}  // namespace detail

/// Real parameters of the couplings with rank(A) = ra, rank(B) = rb:
/// n^2 - (n - ra)^2 - (n - rb)^2.
inline std::int64_t parameter_count(std::int64_t n, std::int64_t ra, std::int64_t rb) {
  detail::require_rank_pair(n, ra, rb);
  return n * n - (n - ra) * (n - ra) - (n - rb) * (n - rb);
}

/// Extra parameters fixing the ranges of the projectors P and Q on top of
/// Lambda: 2 [ra rb - (ra + rb - n)^2]. Counting the same subspaces one at a
/// time gives 2 ra (n - ra) + 2 (n - rb)(ra + rb - n); both are checked.
inline std::int64_t delta_parameters(std::int64_t n, std::int64_t ra, std::int64_t rb) {
  detail::require_rank_pair(n, ra, rb);
  const std::int64_t m = ra + rb - n;
  const std::int64_t closed = 2 * (ra * rb - m * m);
  const std::int64_t by_subspaces = 2 * ra * (n - ra) + 2 * (n - rb) * m;
  if (closed != by_subspaces) throw Error(ErrorKind::InconsistentForm, "parameter identity failed");
  return closed;
}

/// Number of admissible (rank(A), rank(B)) pairs at degree n.
inline std::int64_t subfamily_count(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  return (n + 1) * (n + 2) / 2;
}

}  // namespace qvertex
