#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "framekit/ambient.hpp"

namespace framekit {

/// A truncated Schauder frame: vectors x_j and functionals f_j of R^d,
/// stored column-wise. A functional acts by the l_2 pairing f(x) = <f, x>.
///
/// Construction only checks shapes; the frame identity is checked by
/// validate(), which has to be able to report failure.
class FiniteFrame {
 public:
  FiniteFrame(Eigen::MatrixXd vectors, Eigen::MatrixXd functionals, NormSpec norm = NormSpec::l2())
      : vectors_(std::move(vectors)), functionals_(std::move(functionals)), norm_(norm) {
    if (vectors_.rows() != functionals_.rows() || vectors_.cols() != functionals_.cols()) {
      throw StructuralError("vectors are " + shape(vectors_) + " but functionals are " +
                            shape(functionals_));
    }
    if (vectors_.rows() == 0 || vectors_.cols() == 0) {
      throw StructuralError("frame must have d >= 1 and N >= 1");
    }
    if (!vectors_.allFinite() || !functionals_.allFinite()) {
      throw StructuralError("frame has non-finite entries");
    }
  }

  Eigen::Index dim() const { return vectors_.rows(); }
  Eigen::Index size() const { return vectors_.cols(); }
  const NormSpec& norm_spec() const { return norm_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  const Eigen::MatrixXd& functionals() const { return functionals_; }

  auto vector(Eigen::Index j) const { return vectors_.col(j); }
  auto functional(Eigen::Index j) const { return functionals_.col(j); }

 private:
  static std::string shape(const Eigen::MatrixXd& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  }

  Eigen::MatrixXd vectors_;
  Eigen::MatrixXd functionals_;
  NormSpec norm_;
};

inline constexpr double kDefaultValidationTol = 1e-10;

struct ValidationReport {
  double residual = 0.0;
  bool ok = false;
  /// Columns j where x_j = 0 or f_j = 0.
  IndexSet zero_columns;
};

/// Max-abs residual of sum_j x_j f_j^T - Id, plus the zero-pair check.
inline ValidationReport validate(const FiniteFrame& fr, double tol = kDefaultValidationTol) {
  ValidationReport rep;
  const Eigen::MatrixXd gram = fr.vectors() * fr.functionals().transpose();
  rep.residual = (gram - Eigen::MatrixXd::Identity(fr.dim(), fr.dim())).cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < fr.size(); ++j) {
    if (fr.vector(j).isZero(0.0) || fr.functional(j).isZero(0.0)) {
      rep.zero_columns.push_back(static_cast<std::size_t>(j));
    }
  }
  rep.ok = rep.residual <= tol && rep.zero_columns.empty();
  return rep;
}

/// x_{2k-1} = x_{2k} = z_k and f_{2k-1} = f_{2k} = z_k^* / 2, where z_k are
/// the columns of `basis` and z_k^* the rows of its inverse.
inline FiniteFrame doubled_frame(const Eigen::MatrixXd& basis, NormSpec norm = NormSpec::l2()) {
  if (basis.rows() != basis.cols() || basis.rows() == 0) {
    throw InvalidBasis("basis matrix must be square and nonempty");
  }
  const Eigen::Index d = basis.rows();
  if (!basis.allFinite() || numerical_rank(basis) < d) {
    throw InvalidBasis("basis matrix is singular");
  }
  const Eigen::MatrixXd dual = basis.inverse().transpose();  // column k = z_k^*
  Eigen::MatrixXd vectors(d, 2 * d);
  Eigen::MatrixXd functionals(d, 2 * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    vectors.col(2 * k) = basis.col(k);
    vectors.col(2 * k + 1) = basis.col(k);
    functionals.col(2 * k) = dual.col(k) / 2.0;
    functionals.col(2 * k + 1) = dual.col(k) / 2.0;
  }
  return FiniteFrame(std::move(vectors), std::move(functionals), norm);
}

inline FiniteFrame identity_frame(Eigen::Index d, NormSpec norm = NormSpec::l2()) {
  return FiniteFrame(Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d), norm);
}

/// Functionals (V V^T)^{-1} V for a full-row-rank vector matrix V.
inline Eigen::MatrixXd canonical_right_inverse(const Eigen::MatrixXd& vectors) {
  const Eigen::MatrixXd gram = vectors * vectors.transpose();
  return gram.ldlt().solve(vectors);
}

/// Uniform [-1, 1] vectors, resampled until they have rank d and no zero
/// column, paired with the canonical right inverse. Deterministic per seed.
inline FiniteFrame random_frame(Eigen::Index d, Eigen::Index n, std::uint64_t seed,
                                NormSpec norm = NormSpec::l2()) {
  if (d < 1 || n < d) throw InvalidParameter("random_frame needs 1 <= d <= N");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (;;) {
    Eigen::MatrixXd v(d, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) v(i, j) = unif(rng);
    }
    if (numerical_rank(v) < d) continue;
    Eigen::MatrixXd f = canonical_right_inverse(v);
    bool zero_col = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      zero_col = zero_col || v.col(j).isZero(0.0) || f.col(j).isZero(0.0);
    }
    if (zero_col) continue;
    return FiniteFrame(std::move(v), std::move(f), norm);
  }
}

/// Complement of `sigma` in {0..n-1}, ascending.
inline IndexSet complement(const IndexSet& sigma, Eigen::Index n) {
  IndexSet out;
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  for (auto i : sigma) {
    if (i >= static_cast<std::size_t>(n)) throw StructuralError("index out of range");
    removed[i] = true;
  }
  for (std::size_t j = 0; j < removed.size(); ++j) {
    if (!removed[j]) out.push_back(j);
  }
  return out;
}

inline Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const IndexSet& cols) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(cols[k]));
  }
  return out;
}

struct DeletionResult {
  Eigen::MatrixXd surviving;
  IndexSet kept;
  bool is_basis = false;
};

/// Removes the columns in `sigma` from the frame vectors and reports whether
/// the remaining ones form a basis of the ambient space.
inline DeletionResult delete_columns(const FiniteFrame& fr, const IndexSet& sigma) {
  DeletionResult out;
  out.kept = complement(sigma, fr.size());
  out.surviving = select_columns(fr.vectors(), out.kept);
  out.is_basis = out.surviving.cols() == fr.dim() && numerical_rank(out.surviving) == fr.dim();
  return out;
}

}  // namespace framekit
