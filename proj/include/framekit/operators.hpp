#pragma once

// Reconstruction S: a -> sum a_i x_i, decomposition T: x -> (f_i(x))_i,
// the projector Q = Id - T S onto ker S, and the excess of a frame computed
// two ways: as dim ker S and as the size of a deletion witness.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "framekit/minseq.hpp"

namespace framekit {

class ReconstructionOperator {
 public:
  explicit ReconstructionOperator(const FiniteFrame& fr) : fr_(&fr) {}

  Point apply(const CoeffVec& a) const {
    require_length(*fr_, a);
    return fr_->vectors() * a;
  }
  Point operator()(const CoeffVec& a) const { return apply(a); }

  /// d x N
  const Eigen::MatrixXd& matrix() const { return fr_->vectors(); }

 private:
  const FiniteFrame* fr_;
};

class DecompositionOperator {
 public:
  explicit DecompositionOperator(const FiniteFrame& fr) : fr_(&fr) {}

  CoeffVec apply(const Point& x) const {
    if (x.size() != fr_->dim()) {
      throw StructuralError("point has dimension " + std::to_string(x.size()) + ", frame has d = " +
                            std::to_string(fr_->dim()));
    }
    return fr_->functionals().transpose() * x;
  }
  CoeffVec operator()(const Point& x) const { return apply(x); }

  /// N x d
  Eigen::MatrixXd matrix() const { return fr_->functionals().transpose(); }

 private:
  const FiniteFrame* fr_;
};

inline Point S_apply(const FiniteFrame& fr, const CoeffVec& a) {
  return ReconstructionOperator(fr).apply(a);
}

inline CoeffVec T_apply(const FiniteFrame& fr, const Point& x) {
  return DecompositionOperator(fr).apply(x);
}

struct OperatorNormBounds {
  double S_norm_lower = 0.0;
  double T_norm_lower = 0.0;
};

/// Sampled lower bounds for ||S|| (min-norm domain to ambient) and ||T||
/// (ambient to min-norm codomain). The S sample contains T x for every
/// sampled x, so the product of the two bounds is at least 1.
inline OperatorNormBounds operator_norms(const FiniteFrame& fr, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidParameter("operator_norms needs trials >= 1");
  const NormSpec& spec = fr.norm_spec();
  OperatorNormBounds out;
  auto try_coeffs = [&](const CoeffVec& a) {
    const double mn = min_norm(fr, a);
    if (mn > 0.0) out.S_norm_lower = std::max(out.S_norm_lower, norm(S_apply(fr, a), spec) / mn);
  };
  auto try_point = [&](const Point& x) {
    const double nx = norm(x, spec);
    if (nx <= 0.0) return;
    const CoeffVec tx = T_apply(fr, x);
    out.T_norm_lower = std::max(out.T_norm_lower, min_norm(fr, tx) / nx);
    try_coeffs(tx);
  };

  for (Eigen::Index i = 0; i < fr.size(); ++i) try_coeffs(CoeffVec::Unit(fr.size(), i));
  for (Eigen::Index i = 0; i < fr.dim(); ++i) try_point(Point::Unit(fr.dim(), i));
  for (Eigen::Index j = 0; j < fr.size(); ++j) try_point(fr.vector(j));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    CoeffVec a(fr.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = unif(rng);
    try_coeffs(a);
    Point x(fr.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = unif(rng);
    try_point(x);
  }
  return out;
}

/// Q = Id_N - T S, the projection of coefficient space onto ker S along T(X).
inline LinearMap projector_Q(const FiniteFrame& fr) {
  return Eigen::MatrixXd::Identity(fr.size(), fr.size()) -
         fr.functionals().transpose() * fr.vectors();
}

/// Nonzero singular values of a projector are >= 1, so a fixed cutoff of
/// 1/2 separates range from rounding noise. A relative cutoff would count
/// noise as rank when Q vanishes (N = d).
inline RankKernel projector_rank_kernel(const LinearMap& q) {
  return rank_kernel(q, RankTolerance{.relative = 0.0, .absolute = 0.5});
}

/// Orthonormal basis of range(Q) = ker S.
inline Eigen::MatrixXd projector_range(const LinearMap& q) {
  return orthonormal_range(q, RankTolerance{.relative = 0.0, .absolute = 0.5});
}

enum class KernelConstruction { numerical, biorthogonal };

inline const char* to_string(KernelConstruction c) {
  return c == KernelConstruction::numerical ? "numerical" : "biorthogonal";
}

struct KernelBasis {
  /// N x dim, one kernel vector per column.
  Eigen::MatrixXd vectors;
  KernelConstruction construction = KernelConstruction::numerical;
  /// Deleted set used by the biorthogonal construction; column k of
  /// `vectors` belongs to sigma[k].
  IndexSet sigma;

  Eigen::Index dim() const { return vectors.cols(); }
};

inline KernelBasis kernel_basis_numerical(const FiniteFrame& fr) {
  KernelBasis kb;
  kb.vectors = rank_kernel(fr.vectors()).kernel;
  kb.construction = KernelConstruction::numerical;
  return kb;
}

inline IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

/// For each k in sigma, u_k = e_k - sum_{i not in sigma} x_i^*(x_k) e_i, where
/// x_i^* are the biorthogonal functionals of the surviving basis.
inline KernelBasis kernel_basis_biorthogonal(const FiniteFrame& fr, const IndexSet& sigma_in) {
  const IndexSet sigma = normalized(sigma_in);
  for (auto k : sigma) {
    if (k >= static_cast<std::size_t>(fr.size())) {
      throw InvalidDeletion("index " + std::to_string(k) + " outside the frame");
    }
  }
  if (static_cast<Eigen::Index>(sigma.size()) != fr.size() - fr.dim()) {
    throw InvalidDeletion("|sigma| = " + std::to_string(sigma.size()) + " but N - d = " +
                          std::to_string(fr.size() - fr.dim()));
  }
  const DeletionResult del = delete_columns(fr, sigma);
  if (!del.is_basis) throw InvalidDeletion("surviving vectors are not a basis");

  // coords(:, k) = coordinates of x_{sigma[k]} in the surviving basis.
  const Eigen::MatrixXd coords =
      del.surviving.partialPivLu().solve(select_columns(fr.vectors(), sigma));

  KernelBasis kb;
  kb.construction = KernelConstruction::biorthogonal;
  kb.sigma = sigma;
  kb.vectors = Eigen::MatrixXd::Zero(fr.size(), static_cast<Eigen::Index>(sigma.size()));
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    kb.vectors(static_cast<Eigen::Index>(sigma[k]), col) = 1.0;
    for (std::size_t r = 0; r < del.kept.size(); ++r) {
      kb.vectors(static_cast<Eigen::Index>(del.kept[r]), col) -= coords(static_cast<Eigen::Index>(r), col);
    }
  }
  return kb;
}

enum class WitnessSource { greedy, enumeration };

inline const char* to_string(WitnessSource s) {
  return s == WitnessSource::greedy ? "greedy" : "enumeration";
}

struct DeletionWitness {
  IndexSet sigma;
  WitnessSource source = WitnessSource::greedy;
};

inline constexpr Eigen::Index kDeletionEnumerationCap = 12;

namespace detail {

inline bool spans(const FiniteFrame& fr, const IndexSet& removed) {
  return numerical_rank(select_columns(fr.vectors(), complement(removed, fr.size()))) == fr.dim();
}

// Visits the size-k subsets of {0..n-1} in lexicographic order until `f`
// returns true.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  IndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return false;
  for (;;) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Lexicographically first sigma with |sigma| = N - d whose complement is a
/// basis, by exhaustive enumeration. Empty optional when none exists.
inline std::optional<IndexSet> deletion_search_exhaustive(const FiniteFrame& fr) {
  const Eigen::Index excess = fr.size() - fr.dim();
  if (excess < 0) return std::nullopt;
  if (excess > kDeletionEnumerationCap) {
    throw EnumerationCap("N - d = " + std::to_string(excess) + " exceeds " +
                         std::to_string(kDeletionEnumerationCap));
  }
  std::optional<IndexSet> found;
  detail::for_each_subset(static_cast<std::size_t>(fr.size()), static_cast<std::size_t>(excess),
                          [&](const IndexSet& s) {
                            if (!delete_columns(fr, s).is_basis) return false;
                            found = s;
                            return true;
                          });
  return found;
}

/// Scans indices in ascending order and deletes j whenever the remaining
/// vectors still span. Greedy on the dual matroid, so in exact arithmetic
/// this returns the same lexicographically first witness as the
/// enumeration; the enumeration is only run if the greedy answer fails the
/// basis check.
inline DeletionWitness deletion_search(const FiniteFrame& fr) {
  const Eigen::Index excess = fr.size() - fr.dim();
  if (excess >= 0 && detail::spans(fr, {})) {
    IndexSet sigma;
    for (Eigen::Index j = 0; j < fr.size() && static_cast<Eigen::Index>(sigma.size()) < excess; ++j) {
      IndexSet trial = sigma;
      trial.push_back(static_cast<std::size_t>(j));
      if (detail::spans(fr, trial)) sigma = std::move(trial);
    }
    if (static_cast<Eigen::Index>(sigma.size()) == excess && delete_columns(fr, sigma).is_basis) {
      return {sigma, WitnessSource::greedy};
    }
  }
  if (excess >= 0 && excess <= kDeletionEnumerationCap) {
    if (auto s = deletion_search_exhaustive(fr)) return {*s, WitnessSource::enumeration};
  }
  throw InternalInconsistency(
      "no deletion leaves a basis; the frame vectors do not span the ambient space");
}

struct ExcessReport {
  Eigen::Index kernel_dim = 0;
  Eigen::Index deletion_excess = 0;
  IndexSet witness_sigma;
  WitnessSource witness_source = WitnessSource::greedy;
  bool agree = false;
};

/// dim ker S against the size of a deletion witness. They agree on every
/// valid frame.
inline ExcessReport excess(const FiniteFrame& fr) {
  ExcessReport rep;
  rep.kernel_dim = kernel_basis_numerical(fr).dim();
  const DeletionWitness w = deletion_search(fr);
  rep.witness_sigma = w.sigma;
  rep.witness_source = w.source;
  rep.deletion_excess = static_cast<Eigen::Index>(w.sigma.size());
  rep.agree = rep.kernel_dim == rep.deletion_excess && delete_columns(fr, w.sigma).is_basis;
  return rep;
}

}  // namespace framekit
