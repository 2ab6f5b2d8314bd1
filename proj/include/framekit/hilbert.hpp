#pragma once

// Hilbert frames in R^d with the l_2 norm: frame operator and bounds,
// canonical dual, pre-frame operator, excess and the Besselian constant.

#include <string>
#include <utility>

#include "framekit/operators.hpp"

namespace framekit {

inline constexpr double kFrameBoundTol = 1e-10;
inline constexpr double kParsevalTol = 1e-10;

class HilbertFrame {
 public:
  explicit HilbertFrame(Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {
    if (vectors_.rows() == 0 || vectors_.cols() == 0) throw StructuralError("empty Hilbert frame");
    if (!vectors_.allFinite()) throw StructuralError("Hilbert frame has non-finite entries");
  }

  Eigen::Index dim() const { return vectors_.rows(); }
  Eigen::Index size() const { return vectors_.cols(); }
  /// d x N; also the matrix of the pre-frame operator l_2^N -> R^d.
  const Eigen::MatrixXd& vectors() const { return vectors_; }

 private:
  Eigen::MatrixXd vectors_;
};

/// sum_i x_i x_i^T
inline LinearMap frame_operator(const HilbertFrame& hf) {
  return hf.vectors() * hf.vectors().transpose();
}

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline FrameBounds frame_bounds(const HilbertFrame& hf) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(frame_operator(hf), Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {std::max(0.0, ev.minCoeff()), ev.maxCoeff()};
}

/// Pairs the vectors with f_i = S^{-1} x_i, S the frame operator.
inline FiniteFrame canonical_dual(const HilbertFrame& hf, double tol = kFrameBoundTol) {
  const FrameBounds b = frame_bounds(hf);
  if (!(b.lower > tol)) {
    throw NotAFrame("lower frame bound " + std::to_string(b.lower) + " <= " + std::to_string(tol));
  }
  return FiniteFrame(hf.vectors(), canonical_right_inverse(hf.vectors()), NormSpec::l2());
}

/// Largest singular value of the pre-frame operator, i.e. sqrt(B_fr).
inline double pre_frame_norm(const HilbertFrame& hf) {
  const auto sv = rank_kernel(hf.vectors()).singular_values;
  return sv.size() ? sv[0] : 0.0;
}

struct HilbertReport {
  FrameBounds frame_bounds;
  Eigen::Index excess = 0;
  /// 1 / smallest nonzero singular value of the pre-frame operator: the best
  /// beta with ||a||_2 <= beta ||sum a_i x_i|| for a orthogonal to the kernel.
  double besselian_constant = 0.0;
  bool is_parseval = false;
};

inline HilbertReport near_riesz_report(const HilbertFrame& hf, double tol = kFrameBoundTol) {
  HilbertReport rep;
  rep.frame_bounds = frame_bounds(hf);
  if (!(rep.frame_bounds.lower > tol)) {
    throw NotAFrame("lower frame bound " + std::to_string(rep.frame_bounds.lower) + " <= " +
                    std::to_string(tol));
  }
  const RankKernel rk = rank_kernel(hf.vectors());
  rep.excess = rk.nullity();
  rep.besselian_constant = 1.0 / rk.singular_values[rk.rank - 1];
  const Eigen::MatrixXd diff = frame_operator(hf) - Eigen::MatrixXd::Identity(hf.dim(), hf.dim());
  rep.is_parseval = diff.cwiseAbs().maxCoeff() <= kParsevalTol;
  return rep;
}

}  // namespace framekit
