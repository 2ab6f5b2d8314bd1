#pragma once

// c_0-distortion of block sequences in the minimal-associated sequence
// space: constants A, B with
//
//   A max|a_k| <= || sum a_k u_k ||_min <= B max|a_k|,
//
// and a finite extraction of tail-supported kernel blocks.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "framekit/operators.hpp"

namespace framekit {

/// Relative magnitude below which a coefficient counts as outside the support.
inline constexpr double kSupportTol = 1e-12;

struct Interval {
  Eigen::Index first = 0;
  Eigen::Index last = 0;
};

/// Numerical support hull of `a`; empty optional when `a` is zero.
inline std::optional<Interval> support_interval(const CoeffVec& a, double rel_tol = kSupportTol) {
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return std::nullopt;
  Interval iv{-1, -1};
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > rel_tol * scale) {
      if (iv.first < 0) iv.first = i;
      iv.last = i;
    }
  }
  return iv;
}

/// Nonzero coefficient blocks with disjoint, strictly increasing supports.
class BlockSeq {
 public:
  explicit BlockSeq(std::vector<CoeffVec> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw StructuralError("block sequence needs at least one block");
    const Eigen::Index n = blocks_.front().size();
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (blocks_[k].size() != n) throw StructuralError("blocks have different lengths");
      if (!blocks_[k].allFinite()) throw StructuralError("block has non-finite entries");
      auto iv = support_interval(blocks_[k]);
      if (!iv) throw StructuralError("block " + std::to_string(k) + " is zero");
      if (!supports_.empty() && iv->first <= supports_.back().last) {
        throw StructuralError("block " + std::to_string(k) + " overlaps or precedes block " +
                              std::to_string(k - 1));
      }
      supports_.push_back(*iv);
    }
    matrix_.resize(n, static_cast<Eigen::Index>(blocks_.size()));
    for (std::size_t k = 0; k < blocks_.size(); ++k) matrix_.col(static_cast<Eigen::Index>(k)) = blocks_[k];
  }

  std::size_t count() const { return blocks_.size(); }
  Eigen::Index length() const { return matrix_.rows(); }
  const CoeffVec& block(std::size_t k) const { return blocks_[k]; }
  const std::vector<CoeffVec>& blocks() const { return blocks_; }
  const std::vector<Interval>& supports() const { return supports_; }
  /// N x K, column k = u_k.
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// sum_k a_k u_k
  CoeffVec combine(const Eigen::VectorXd& a) const {
    if (a.size() != matrix_.cols()) throw StructuralError("need one scalar per block");
    return matrix_ * a;
  }

  /// The first `k` blocks.
  BlockSeq prefix(std::size_t k) const {
    return BlockSeq(std::vector<CoeffVec>(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

 private:
  std::vector<CoeffVec> blocks_;
  std::vector<Interval> supports_;
  Eigen::MatrixXd matrix_;
};

inline constexpr std::size_t kSignEnumerationCap = 20;
inline constexpr std::size_t kFaceSampleBudget = 20000;

struct C0Constants {
  /// Smallest value found on the boundary of the unit cube; an upper bound
  /// on the true lower constant.
  double A = 0.0;
  /// Exact: max over the cube's vertices.
  double B = 0.0;
  double distortion = 1.0;  // sqrt(B / A)
  std::string A_mode = "vertex-and-face-sampled";
  int resolution = 0;
  std::size_t samples = 0;
  Eigen::VectorXd A_witness;
  Eigen::VectorXd B_witness;
};

namespace detail {

class BlockObjective {
 public:
  BlockObjective(const FiniteFrame& fr, const BlockSeq& bs) : fr_(fr), bs_(bs) {}
  double operator()(const Eigen::VectorXd& a) const { return min_norm(fr_, bs_.combine(a)); }

 private:
  const FiniteFrame& fr_;
  const BlockSeq& bs_;
};

// Golden-section minimization of a convex function of one coordinate on [-1, 1].
inline double line_minimize(const BlockObjective& f, Eigen::VectorXd& a, Eigen::Index coord,
                            double current) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -1.0, hi = 1.0;
  Eigen::VectorXd probe = a;
  auto eval = [&](double t) {
    probe[coord] = t;
    return f(probe);
  };
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = eval(x2);
    }
  }
  const double t = f1 <= f2 ? x1 : x2;
  const double ft = std::min(f1, f2);
  if (ft < current) {
    a[coord] = t;
    return ft;
  }
  return current;
}

inline double coordinate_descent(const BlockObjective& f, Eigen::VectorXd& a, Eigen::Index fixed,
                                 double value) {
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double before = value;
    for (Eigen::Index c = 0; c < a.size(); ++c) {
      if (c != fixed) value = line_minimize(f, a, c, value);
    }
    if (before - value <= 1e-15) break;
  }
  return value;
}

}  // namespace detail

/// B exactly from the 2^(K-1) sign patterns (min_norm is convex and even,
/// so its max over the cube sits at a vertex). A from the faces a_k = 1
/// (a_k = -1 is the mirror image): each face is scanned on a grid with
/// `resolution` levels per free coordinate, or a seeded random subset of it
/// when the grid exceeds the sample budget, then refined by coordinate descent.
inline C0Constants c0_constants(const FiniteFrame& fr, const BlockSeq& bs, int resolution = 5,
                                std::uint64_t seed = 0) {
  if (bs.length() != fr.size()) throw StructuralError("blocks do not match the frame length");
  if (resolution < 1) throw InvalidParameter("resolution must be >= 1");
  const std::size_t K = bs.count();
  if (K > kSignEnumerationCap) {
    throw EnumerationCap("K = " + std::to_string(K) + " blocks, cap is " +
                         std::to_string(kSignEnumerationCap));
  }
  const detail::BlockObjective f(fr, bs);
  const auto Ki = static_cast<Eigen::Index>(K);
  C0Constants out;
  out.resolution = resolution;

  // Vertices.
  Eigen::VectorXd a(Ki);
  const std::uint64_t patterns = std::uint64_t{1} << (K - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    a[0] = 1.0;
    for (std::size_t k = 1; k < K; ++k) a[static_cast<Eigen::Index>(k)] = (mask >> (k - 1)) & 1U ? -1.0 : 1.0;
    const double v = f(a);
    if (v > out.B || out.B_witness.size() == 0) {
      out.B = v;
      out.B_witness = a;
    }
  }

  // Faces.
  std::vector<double> levels;
  if (resolution == 1) {
    levels = {0.0};
  } else {
    for (int r = 0; r < resolution; ++r) levels.push_back(-1.0 + 2.0 * r / (resolution - 1));
  }
  const std::size_t free = K - 1;
  double grid_size = std::pow(static_cast<double>(levels.size()), static_cast<double>(free));
  const bool full_grid = grid_size <= static_cast<double>(kFaceSampleBudget);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_level(0, levels.size() - 1);

  out.A = std::numeric_limits<double>::infinity();
  for (Eigen::Index face = 0; face < Ki; ++face) {
    constexpr std::size_t kStarts = 3;
    std::vector<std::pair<double, Eigen::VectorXd>> best;
    auto offer = [&](const Eigen::VectorXd& pt) {
      const double v = f(pt);
      ++out.samples;
      if (best.size() < kStarts) {
        best.emplace_back(v, pt);
      } else {
        auto worst = std::max_element(best.begin(), best.end(),
                                      [](const auto& l, const auto& r) { return l.first < r.first; });
        if (v < worst->first) *worst = {v, pt};
      }
    };

    Eigen::VectorXd center = Eigen::VectorXd::Zero(Ki);
    center[face] = 1.0;
    offer(center);

    auto point_from = [&](const std::vector<std::size_t>& digits) {
      Eigen::VectorXd pt(Ki);
      std::size_t d = 0;
      for (Eigen::Index c = 0; c < Ki; ++c) pt[c] = c == face ? 1.0 : levels[digits[d++]];
      return pt;
    };
    std::vector<std::size_t> digits(free, 0);
    if (full_grid) {
      const auto total = static_cast<std::size_t>(grid_size);
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t c = 0; c < free; ++c) {
          digits[c] = rem % levels.size();
          rem /= levels.size();
        }
        offer(point_from(digits));
      }
    } else {
      for (std::size_t s = 0; s < kFaceSampleBudget; ++s) {
        for (auto& dg : digits) dg = pick_level(rng);
        offer(point_from(digits));
      }
    }

    for (auto& [value, start] : best) {
      Eigen::VectorXd pt = start;
      const double v = detail::coordinate_descent(f, pt, face, value);
      if (v < out.A) {
        out.A = v;
        out.A_witness = pt;
      }
    }
  }
  out.distortion = out.A > 0.0 ? std::sqrt(out.B / out.A) : std::numeric_limits<double>::infinity();
  return out;
}

/// True when the frame has the doubled shape x_{2k} = x_{2k+1} (0-based).
inline bool is_doubled_shape(const FiniteFrame& fr, double tol = 1e-12) {
  if (fr.size() % 2 != 0) return false;
  for (Eigen::Index k = 0; 2 * k < fr.size(); ++k) {
    if ((fr.vector(2 * k) - fr.vector(2 * k + 1)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

/// u_k = e_{2k+1} - e_{2k} (0-based), one block per duplicated pair.
inline BlockSeq example_blocks(const FiniteFrame& fr) {
  if (!is_doubled_shape(fr)) throw StructuralError("frame is not of doubled shape");
  std::vector<CoeffVec> blocks;
  for (Eigen::Index k = 0; 2 * k < fr.size(); ++k) {
    CoeffVec u = CoeffVec::Zero(fr.size());
    u[2 * k] = -1.0;
    u[2 * k + 1] = 1.0;
    blocks.push_back(std::move(u));
  }
  return BlockSeq(std::move(blocks));
}

struct BlockDiagnostic {
  Eigen::Index start = 0;
  Eigen::Index end = 0;  // inclusive
  double eps = 0.0;
  double delta = 0.0;
  double tail_min_norm = 0.0;    // achieved eps
  double head_image_norm = 0.0;  // achieved delta
  double block_min_norm = 0.0;
  bool semi_normalized = false;  // block_min_norm > 1 - eps
};

struct KernelBlockExtraction {
  std::optional<BlockSeq> blocks;
  std::vector<BlockDiagnostic> diagnostics;
  std::string message;
};

struct Schedules {
  std::vector<double> eps;
  std::vector<double> delta;
};

/// eps_i = 2^(-i-2), delta_i = 2^(-i), i = 1..count.
inline Schedules default_schedules(std::size_t count) {
  Schedules s;
  for (std::size_t i = 1; i <= count; ++i) {
    s.eps.push_back(std::ldexp(1.0, -static_cast<int>(i) - 2));
    s.delta.push_back(std::ldexp(1.0, -static_cast<int>(i)));
  }
  return s;
}

/// Repeatedly takes a unit-min-norm kernel vector supported after the
/// previous block (the one whose support ends earliest), then cuts it at
/// the first index where the discarded tail has min-norm < eps_i and the kept
/// head maps under S to norm < delta_i. Stops when the kernel meets the
/// remaining tail trivially or the schedules run out.
inline KernelBlockExtraction extract_kernel_blocks(const FiniteFrame& fr, const std::vector<double>& eps,
                                                   const std::vector<double>& delta) {
  if (eps.size() != delta.size() || eps.empty()) {
    throw InvalidParameter("eps and delta schedules must be nonempty and of equal length");
  }
  double eps_sum = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !(delta[i] > 0.0)) throw InvalidParameter("eps and delta must be positive");
    eps_sum += eps[i];
  }
  if (!(eps_sum < 0.5)) throw InvalidParameter("sum of eps must be < 1/2");

  const Eigen::Index n = fr.size();
  KernelBlockExtraction out;
  std::vector<CoeffVec> blocks;
  Eigen::Index start = 0;
  for (std::size_t i = 0; i < eps.size() && start < n; ++i) {
    if (rank_kernel(fr.vectors().rightCols(n - start)).nullity() == 0) break;

    CoeffVec w = CoeffVec::Zero(n);
    for (Eigen::Index end = start; end < n; ++end) {
      const RankKernel rk = rank_kernel(fr.vectors().middleCols(start, end - start + 1));
      if (rk.nullity() > 0) {
        w.segment(start, end - start + 1) = rk.kernel.col(0);
        break;
      }
    }
    const auto iv = support_interval(w);
    if (!iv) break;
    if (w[iv->last] < 0.0) w = -w;
    w /= min_norm(fr, w);

    BlockDiagnostic diag;
    diag.start = start;
    diag.eps = eps[i];
    diag.delta = delta[i];
    CoeffVec head;
    for (Eigen::Index cut = start; cut < n; ++cut) {
      head = CoeffVec::Zero(n);
      head.segment(start, cut - start + 1) = w.segment(start, cut - start + 1);
      const CoeffVec tail = w - head;
      const double tail_norm = min_norm(fr, tail);
      const double image = norm(S_apply(fr, head), fr.norm_spec());
      if (tail_norm < eps[i] && image < delta[i]) {
        diag.end = cut;
        diag.tail_min_norm = tail_norm;
        diag.head_image_norm = image;
        break;
      }
      if (cut == n - 1) {
        diag.end = cut;
        diag.tail_min_norm = tail_norm;
        diag.head_image_norm = image;
      }
    }
    diag.block_min_norm = min_norm(fr, head);
    diag.semi_normalized = diag.block_min_norm > 1.0 - eps[i];
    if (!support_interval(head)) break;
    blocks.push_back(head);
    out.diagnostics.push_back(diag);
    start = diag.end + 1;
  }

  if (blocks.empty()) {
    out.message = "kernel trivial: no kernel vector is supported in the remaining tail";
  } else {
    out.blocks.emplace(std::move(blocks));
    out.message = "extracted " + std::to_string(out.blocks->count()) + " block(s)";
  }
  return out;
}

inline KernelBlockExtraction extract_kernel_blocks(const FiniteFrame& fr) {
  const Schedules s = default_schedules(static_cast<std::size_t>(fr.size()));
  return extract_kernel_blocks(fr, s.eps, s.delta);
}

}  // namespace framekit
