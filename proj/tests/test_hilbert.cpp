#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace framekit;
using testing_support::random_vector;

namespace {

HilbertFrame mercedes() {
  Eigen::MatrixXd v(2, 3);
  const double s = std::sqrt(3.0) / 2.0;
  v << 0, -s, s, 1, -0.5, -0.5;
  return HilbertFrame(v);
}

}  // namespace

TEST(FrameOperator, OrthonormalBasis) {
  const HilbertFrame hf(Eigen::Matrix3d::Identity());
  EXPECT_TRUE(frame_operator(hf).isIdentity(0.0));
  const auto b = frame_bounds(hf);
  EXPECT_DOUBLE_EQ(b.lower, 1.0);
  EXPECT_DOUBLE_EQ(b.upper, 1.0);
}

TEST(FrameOperator, Mercedes) {
  EXPECT_TRUE(frame_operator(mercedes()).isApprox(1.5 * Eigen::Matrix2d::Identity(), 1e-15));
  const auto b = frame_bounds(mercedes());
  EXPECT_NEAR(b.lower, 1.5, 1e-12);
  EXPECT_NEAR(b.upper, 1.5, 1e-12);
}

TEST(FrameOperator, CollinearIsNotAFrame) {
  Eigen::MatrixXd v(2, 3);
  v << 1, 2, -1, 1, 2, -1;
  const HilbertFrame hf(v);
  EXPECT_NEAR(frame_bounds(hf).lower, 0.0, 1e-12);
  EXPECT_THROW(canonical_dual(hf), NotAFrame);
  EXPECT_THROW(near_riesz_report(hf), NotAFrame);
}

TEST(CanonicalDual, Examples) {
  const HilbertFrame onb(Eigen::Matrix3d::Identity());
  EXPECT_TRUE(canonical_dual(onb).functionals().isApprox(onb.vectors()));

  const auto dual = canonical_dual(mercedes());
  EXPECT_TRUE(dual.functionals().isApprox(2.0 / 3.0 * mercedes().vectors(), 1e-14));
  EXPECT_LE(validate(dual).residual, 1e-12);

  const auto doubled = doubled_frame(Eigen::Matrix4d::Identity());
  const auto ddual = canonical_dual(HilbertFrame(doubled.vectors()));
  EXPECT_TRUE(ddual.functionals().isApprox(doubled.functionals(), 1e-14));
}

TEST(CanonicalDual, Reconstructs) {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fr = random_frame(1 + seed % 5, 1 + seed % 5 + seed % 4, seed);
    const auto dual = canonical_dual(HilbertFrame(fr.vectors()));
    for (int t = 0; t < 20; ++t) {
      const Point x = random_vector(fr.dim(), rng);
      EXPECT_LE((dual.vectors() * (dual.functionals().transpose() * x) - x).norm(), 1e-9);
    }
  }
}

TEST(NearRiesz, OrthonormalBasis) {
  const auto rep = near_riesz_report(HilbertFrame(Eigen::Matrix3d::Identity()));
  EXPECT_EQ(rep.excess, 0);
  EXPECT_DOUBLE_EQ(rep.besselian_constant, 1.0);
  EXPECT_TRUE(rep.is_parseval);
}

TEST(NearRiesz, Mercedes) {
  const auto rep = near_riesz_report(mercedes());
  EXPECT_EQ(rep.excess, 1);
  EXPECT_NEAR(rep.besselian_constant, std::sqrt(2.0 / 3.0), 1e-14);
  EXPECT_FALSE(rep.is_parseval);
}

TEST(NearRiesz, DoubledOrthonormalAgreesWithGeneralRoute) {
  const auto fr = doubled_frame(Eigen::Matrix4d::Identity());
  const auto rep = near_riesz_report(HilbertFrame(fr.vectors()));
  EXPECT_EQ(rep.excess, 4);
  EXPECT_EQ(rep.excess, excess(fr).deletion_excess);
  EXPECT_EQ(rep.excess, excess(canonical_dual(HilbertFrame(fr.vectors()))).deletion_excess);
}

TEST(NearRiesz, FrameBoundSandwichAndBesselian) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fr = random_frame(2 + seed % 4, 3 + seed % 4 + seed % 3, seed);
    const HilbertFrame hf(fr.vectors());
    const auto rep = near_riesz_report(hf);
    const auto kernel = rank_kernel(hf.vectors()).kernel;
    for (int t = 0; t < 50; ++t) {
      const Point x = random_vector(hf.dim(), rng);
      const double energy = (hf.vectors().transpose() * x).squaredNorm();
      EXPECT_GE(energy, rep.frame_bounds.lower * x.squaredNorm() - 1e-9);
      EXPECT_LE(energy, rep.frame_bounds.upper * x.squaredNorm() + 1e-9);

      CoeffVec a = random_vector(hf.size(), rng);
      a -= kernel * (kernel.transpose() * a);
      EXPECT_LE(a.norm(), rep.besselian_constant * (hf.vectors() * a).norm() + 1e-9);
    }
  }
}

TEST(PreFrameNorm, IsSqrtUpperBound) {
  EXPECT_NEAR(pre_frame_norm(mercedes()), std::sqrt(1.5), 1e-14);
}
