#pragma once

// Reference computations for the tests. Plain std::vector arithmetic, no
// Eigen and no framekit code paths, so they stay independent of what they
// check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
/// Column-major list of vectors: cols[j] is x_j.
using Cols = std::vector<Vec>;

inline double lp(const Vec& v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

/// max over all segments [m, n] of || sum_{i=m}^{n} a_i x_i ||_p, every
/// segment summed from scratch.
inline double segment_max(const Cols& x, const Vec& a, double p) {
  const std::size_t n = x.size();
  const std::size_t d = n ? x[0].size() : 0;
  double best = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t e = m; e < n; ++e) {
      Vec s(d, 0.0);
      for (std::size_t i = m; i <= e; ++i) {
        for (std::size_t r = 0; r < d; ++r) s[r] += a[i] * x[i][r];
      }
      best = std::max(best, lp(s, p));
    }
  }
  return best;
}

/// max over all 2^K sign vectors of segment_max(x, sum_k s_k u_k).
inline double sign_pattern_max(const Cols& x, const Cols& blocks, double p) {
  const std::size_t K = blocks.size();
  const std::size_t n = x.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << K); ++mask) {
    Vec a(n, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      const double s = (mask >> k) & 1U ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) a[i] += s * blocks[k][i];
    }
    best = std::max(best, segment_max(x, a, p));
  }
  return best;
}

/// Rank by Gaussian elimination with full pivoting; entries below `tol`
/// relative to the largest entry count as zero.
inline std::size_t gauss_rank(std::vector<Vec> rows, double tol = 1e-9) {
  if (rows.empty()) return 0;
  const std::size_t r = rows.size(), c = rows[0].size();
  double scale = 0.0;
  for (auto& row : rows)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  std::size_t rank = 0;
  std::vector<bool> used_col(c, false);
  for (std::size_t step = 0; step < std::min(r, c); ++step) {
    double piv = 0.0;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = rank; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (!used_col[j] && std::abs(rows[i][j]) > piv) {
          piv = std::abs(rows[i][j]);
          pr = i;
          pc = j;
        }
    if (piv <= tol * scale) break;
    std::swap(rows[rank], rows[pr]);
    used_col[pc] = true;
    for (std::size_t i = rank + 1; i < r; ++i) {
      const double f = rows[i][pc] / rows[rank][pc];
      for (std::size_t j = 0; j < c; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Rows of the d x N matrix whose columns are x_j.
inline std::vector<Vec> as_rows(const Cols& x) {
  const std::size_t d = x.empty() ? 0 : x[0].size();
  std::vector<Vec> rows(d, Vec(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) rows[i][j] = x[j][i];
  return rows;
}

}  // namespace oracle
