#pragma once

// The minimal-associated sequence-space norm
//
//   || sum a_i e_i ||_min = max_{m <= n} || sum_{i=m}^{n} a_i x_i ||_X
//
// together with the interval restriction, the tail profile and a sampled
// check of the domination inequality against another associated norm.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "framekit/frame.hpp"

namespace framekit {

inline void require_length(const FiniteFrame& fr, const CoeffVec& a) {
  if (a.size() != fr.size()) {
    throw StructuralError("coefficient vector has length " + std::to_string(a.size()) +
                          ", frame has N = " + std::to_string(fr.size()));
  }
  if (!a.allFinite()) throw StructuralError("coefficient vector has non-finite entries");
}

/// Prefix sums P_0 = 0, P_n = sum_{i<n} a_i x_i; segment [m, n] (0-based,
/// inclusive) has sum P_{n+1} - P_m.
class SegmentTable {
 public:
  SegmentTable(const FiniteFrame& fr, const CoeffVec& a) : norm_(fr.norm_spec()) {
    require_length(fr, a);
    prefix_.setZero(fr.dim(), fr.size() + 1);
    for (Eigen::Index i = 0; i < fr.size(); ++i) {
      prefix_.col(i + 1) = prefix_.col(i) + a[i] * fr.vector(i);
    }
  }

  Eigen::Index size() const { return prefix_.cols() - 1; }
  const Eigen::MatrixXd& prefix() const { return prefix_; }

  Point segment(Eigen::Index m, Eigen::Index n) const { return prefix_.col(n + 1) - prefix_.col(m); }
  double seg_norm(Eigen::Index m, Eigen::Index n) const {
    return norm(prefix_.col(n + 1) - prefix_.col(m), norm_);
  }

 private:
  Eigen::MatrixXd prefix_;
  NormSpec norm_;
};

struct SegmentMax {
  double value = 0.0;
  /// 0-based inclusive argmax segment (first in (m, n) lexicographic order).
  Eigen::Index m = 0;
  Eigen::Index n = 0;
};

inline SegmentMax max_segment(const FiniteFrame& fr, const CoeffVec& a) {
  const SegmentTable table(fr, a);
  SegmentMax best;
  const Eigen::Index count = table.size();
  for (Eigen::Index m = 0; m < count; ++m) {
    for (Eigen::Index n = m; n < count; ++n) {
      const double v = table.seg_norm(m, n);
      if (v > best.value) best = {v, m, n};
    }
  }
  return best;
}

inline double min_norm(const FiniteFrame& fr, const CoeffVec& a) { return max_segment(fr, a).value; }

/// Reference evaluation: fresh accumulation for every segment.
inline double min_norm_naive(const FiniteFrame& fr, const CoeffVec& a) {
  require_length(fr, a);
  double best = 0.0;
  for (Eigen::Index m = 0; m < fr.size(); ++m) {
    for (Eigen::Index n = m; n < fr.size(); ++n) {
      Point s = Point::Zero(fr.dim());
      for (Eigen::Index i = m; i <= n; ++i) s += a[i] * fr.vector(i);
      best = std::max(best, norm(s, fr.norm_spec()));
    }
  }
  return best;
}

/// min_norm of `a` with every entry outside [m, n] (0-based) set to zero.
inline double restricted_min_norm(const FiniteFrame& fr, const CoeffVec& a, Eigen::Index m,
                                  Eigen::Index n) {
  require_length(fr, a);
  if (m < 0 || m > n || n >= fr.size()) {
    throw StructuralError("interval [" + std::to_string(m) + ", " + std::to_string(n) +
                          "] is not inside [0, " + std::to_string(fr.size() - 1) + "]");
  }
  CoeffVec r = CoeffVec::Zero(a.size());
  r.segment(m, n - m + 1) = a.segment(m, n - m + 1);
  return min_norm(fr, r);
}

/// r[m] = max_{m <= p <= q < N} || sum_{i=p}^{q} a_i x_i ||.
inline std::vector<double> tail_profile(const FiniteFrame& fr, const CoeffVec& a) {
  const SegmentTable table(fr, a);
  const Eigen::Index count = table.size();
  std::vector<double> r(static_cast<std::size_t>(count), 0.0);
  double running = 0.0;
  for (Eigen::Index m = count - 1; m >= 0; --m) {
    for (Eigen::Index q = m; q < count; ++q) running = std::max(running, table.seg_norm(m, q));
    r[static_cast<std::size_t>(m)] = running;
  }
  return r;
}

/// True when some x_j vanishes, the only way min_norm can fail to be
/// definite on a truncation.
inline bool is_degenerate_truncation(const FiniteFrame& fr) {
  for (Eigen::Index j = 0; j < fr.size(); ++j) {
    if (fr.vector(j).isZero(0.0)) return true;
  }
  return false;
}

using CoeffNorm = std::function<double(const CoeffVec&)>;

inline CoeffNorm l2_coeff_norm() {
  return [](const CoeffVec& a) { return a.norm(); };
}

/// Worst observed ratio min_norm(a) / (K * S_norm * assoc_norm(a)).
///
/// The sample is every unit vector e_i, then `trials` random vectors drawn
/// alternately dense and supported on a random interval. A value <= 1
/// certifies the domination inequality on the sample only.
inline double check_minimality(const FiniteFrame& fr, const CoeffNorm& assoc_norm, double K,
                               double S_norm, int trials, std::uint64_t seed) {
  if (!(K > 0.0) || !(S_norm > 0.0)) {
    throw InvalidParameter("K and S_norm must be positive");
  }
  const Eigen::Index n = fr.size();
  double worst = 0.0;
  auto consider = [&](const CoeffVec& a) {
    const double denom = K * S_norm * assoc_norm(a);
    if (denom <= 0.0) return;
    worst = std::max(worst, min_norm(fr, a) / denom);
  };
  for (Eigen::Index i = 0; i < n; ++i) consider(CoeffVec::Unit(n, i));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  for (int t = 0; t < trials; ++t) {
    CoeffVec a = CoeffVec::Zero(n);
    Eigen::Index lo = 0;
    Eigen::Index hi = n - 1;
    if (t % 2 == 1) {
      lo = pick(rng);
      hi = pick(rng);
      if (lo > hi) std::swap(lo, hi);
    }
    for (Eigen::Index i = lo; i <= hi; ++i) a[i] = unif(rng);
    if (a.isZero(0.0)) continue;
    consider(a);
  }
  return worst;
}

}  // namespace framekit
