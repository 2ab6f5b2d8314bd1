#pragma once

// Finite-dimensional normed-space primitives: points, l_p norms, linear maps
// and numerical rank / null space.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "framekit/errors.hpp"

namespace framekit {

using Point = Eigen::VectorXd;
using CoeffVec = Eigen::VectorXd;
using LinearMap = Eigen::MatrixXd;

/// Index sets are 0-based and kept sorted ascending.
using IndexSet = std::vector<std::size_t>;

/// An l_p norm, 1 <= p <= inf.
class NormSpec {
 public:
  NormSpec() = default;

  explicit NormSpec(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) {
      throw InvalidNorm("p must lie in [1, inf], got " + std::to_string(p));
    }
  }

  static NormSpec l1() { return NormSpec(1.0); }
  static NormSpec l2() { return NormSpec(2.0); }
  static NormSpec linf() { return NormSpec(std::numeric_limits<double>::infinity()); }

  double p() const { return p_; }
  bool is_inf() const { return std::isinf(p_); }

  bool operator==(const NormSpec&) const = default;

 private:
  double p_ = 2.0;
};

template <typename Derived>
double norm(const Eigen::MatrixBase<Derived>& v, const NormSpec& spec) {
  if (v.size() == 0) return 0.0;
  const double p = spec.p();
  if (spec.is_inf()) return v.template lpNorm<Eigen::Infinity>();
  if (p == 1.0) return v.template lpNorm<1>();
  if (p == 2.0) return v.norm();
  // Scale by max-abs so large p does not overflow.
  const double scale = v.template lpNorm<Eigen::Infinity>();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
  return m.allFinite();
}

/// Singular value cutoff: tau = sigma_max * max(rows, cols) * relative.
/// A nonnegative `absolute` overrides the relative rule.
struct RankTolerance {
  double relative = std::ldexp(1.0, -40);
  double absolute = -1.0;

  double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
    if (absolute >= 0.0) return absolute;
    return sigma_max * static_cast<double>(std::max(rows, cols)) * relative;
  }
};

struct RankKernel {
  Eigen::Index rank = 0;
  /// Orthonormal (in l_2 coordinates) null-space basis, one column per vector.
  Eigen::MatrixXd kernel;
  Eigen::VectorXd singular_values;
  double threshold = 0.0;

  Eigen::Index nullity() const { return kernel.cols(); }
};

inline RankKernel rank_kernel(const LinearMap& m, const RankTolerance& tol = {}) {
  if (!m.allFinite()) throw StructuralError("rank_kernel: matrix has non-finite entries");
  const Eigen::Index cols = m.cols();
  RankKernel out;
  if (m.rows() == 0 || cols == 0) {
    out.kernel = Eigen::MatrixXd::Identity(cols, cols);
    out.singular_values.resize(0);
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double sigma_max = out.singular_values.size() ? out.singular_values[0] : 0.0;
  out.threshold = tol.threshold(sigma_max, m.rows(), cols);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values[i] > out.threshold) ++rank;
  }
  out.rank = rank;
  out.kernel = svd.matrixV().rightCols(cols - rank);
  return out;
}

inline Eigen::Index numerical_rank(const LinearMap& m, const RankTolerance& tol = {}) {
  return rank_kernel(m, tol).rank;
}

/// Orthonormal basis of the column space of `m`.
inline Eigen::MatrixXd orthonormal_range(const LinearMap& m, const RankTolerance& tol = {}) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double thr = tol.threshold(s.size() ? s[0] : 0.0, m.rows(), m.cols());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > thr) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

/// Largest relative residual ||v - P v|| / ||v|| over the columns v of
/// `from`, where P projects onto span(`onto`).
inline double projection_residual(const Eigen::MatrixXd& from, const Eigen::MatrixXd& onto) {
  if (from.rows() != onto.rows()) throw StructuralError("projection_residual: row mismatch");
  const Eigen::MatrixXd q = orthonormal_range(onto);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < from.cols(); ++j) {
    const Eigen::VectorXd v = from.col(j);
    const double nv = v.norm();
    if (nv == 0.0) continue;
    const Eigen::VectorXd r = v - q * (q.transpose() * v);
    worst = std::max(worst, r.norm() / nv);
  }
  return worst;
}

/// Mutual projection residual of two spanning sets; 0 iff same span.
/// Spans of different dimension never agree, so that case reports 1.
inline double span_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (numerical_rank(a) != numerical_rank(b)) return 1.0;
  return std::max(projection_residual(a, b), projection_residual(b, a));
}

}  // namespace framekit
